#pragma once

#include <map>
#include <string>
#include <vector>

#include "cavitysim/evolve.hpp"
#include "cavitysim/fitting.hpp"
#include "cavitysim/wigner.hpp"

namespace cavitysim {

/// Sampled observable-vs-parameter curve with the settings that produced it.
struct ExperimentMeta {
    std::map<std::string, double> numbers;
    std::map<std::string, std::string> notes;
};

struct ExperimentResult {
    std::string sweep_name;
    std::string observable_name;
    std::vector<double> sweep;
    std::vector<double> observable;
    ExperimentMeta meta;

    void require_consistent(double lo, double hi) const;
};

/// Parametric sideband rate Omega = 2 xi sqrt(K_q chi) for a driven transmon
/// displacement xi.
double sideband_rate(double xi, const SystemParams& params);

/// Four-wave-mixing cavity reset through the readout resonator:
/// Omega_cr = 2 |xi_cr|^2 sqrt(chi_qr chi), kappa_driven = Omega_cr^2 T1_r.
struct ResetRates {
    double omega_cr = 0.0;
    double kappa_driven = 0.0;
};
ResetRates reset_rate(double xi_cr, const SystemParams& params);

/// Wait time for passive decay from nbar_initial to nbar_final.
double passive_reset_wait(double nbar_initial, double nbar_final,
                          const SystemParams& params);

/// Which decoherence channels act during a simulated protocol segment.
struct ChannelToggles {
    bool cavity_loss = true;
    bool transmon_decay = true;
    bool transmon_dephasing = true;
    bool transmon_heating = true;
    bool readout_flip = false;
    double readout_fidelity = 0.95;

    static ChannelToggles none();
    static ChannelToggles all();
};

std::vector<CollapseChannel> toggled_channels(const SystemParams& params,
                                              const SpacePtr& space,
                                              const ChannelToggles& toggles);

/// Instantaneous transmon rotations about x (phase-shifted) in the g-e or
/// g-f manifold.
Operator transmon_rotation_ge(const SpacePtr& space, double theta, double phase);
Operator transmon_rotation_gf(const SpacePtr& space, double theta, double phase);

// ---------------------------------------------------------------------------
// Sideband encode / decode
// ---------------------------------------------------------------------------

struct SidebandOptions {
    double omega_sideband = two_pi * 476e3; // Rabi rate of the |0,f><->|1,g> swap
    int cavity_dim = 4;
    double ramp = 10e-9; // raised-cosine ramp on the square pulse
    bool with_noise = false;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
};

/// Maps |0>(a|g> + b|f|) to (a|0> + b|1>)|g> with a sideband pulse of area pi
/// (duration pi/Omega plus the ramp).
QuantumState encode_qubit(cxd a, cxd b, const SystemParams& params,
                          const SidebandOptions& opts = {});

/// Second sideband pulse plus the deterministic f-level phase correction;
/// inverse of encode on the qubit subspace.
QuantumState decode_qubit(const QuantumState& state, const SystemParams& params,
                          const SidebandOptions& opts = {});

/// Applies the sideband drive for an arbitrary duration (used for swap
/// sweeps); pulse area is omega_sideband * (duration - ramp).
QuantumState sideband_pulse(const QuantumState& state, const SystemParams& params,
                            const SidebandOptions& opts, double duration);

// ---------------------------------------------------------------------------
// Parity measurement
// ---------------------------------------------------------------------------

enum class ParityMode { ideal, simulated };

struct ParityOptions {
    ParityMode mode = ParityMode::ideal;
    /// Transmon drive detuning from its bare frequency; valid parity maps
    /// need detuning = k chi. Shifts the outcome convention for odd k.
    double drive_detuning = 0.0;
    ChannelToggles toggles = ChannelToggles::none();
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
};

struct ParityOutcome {
    int outcome = +1;       // +1 even, -1 odd
    double probability = 0.0;
    QuantumState post_state; // transmon (when present) reset to |g>
};

struct ParityBranches {
    ParityOutcome even;
    ParityOutcome odd;
};

/// Both measurement branches with Born (or recorded, when readout errors are
/// enabled) probabilities. ideal mode applies the Kraus projectors
/// (I +- P)/2 on the cavity; simulated mode runs pi/2 - free evolution for
/// T = pi/chi - pi/2 - transmon projection with the toggled channels.
ParityBranches parity_branches(const QuantumState& state, const SystemParams& params,
                               const ParityOptions& opts = {});

/// Selects one branch (deterministic protocols pick their branch explicitly).
ParityOutcome parity_measure(const QuantumState& state, const SystemParams& params,
                             const ParityOptions& opts = {}, int select_outcome = +1);

// ---------------------------------------------------------------------------
// Cat states and tomography
// ---------------------------------------------------------------------------

struct CatPrepResult {
    QuantumState state;
    int parity = +1;
    double probability = 0.0;
};

/// Displace vacuum to |alpha> and parity-measure, keeping the requested
/// branch: N(|alpha> + parity |-alpha>) up to protocol deterministic phases.
CatPrepResult prepare_cat(cxd alpha, const SystemParams& params,
                          const ParityOptions& opts = {}, int parity = +1);

/// Squared phase-space separation S = |2 alpha|^2.
double cat_size(cxd alpha);

/// Displaced-parity values along the imaginary axis (parity convention,
/// values in [-1,1]). Fringe rate near the origin is 2 sqrt(S).
ExperimentResult wigner_cut_experiment(const QuantumState& state,
                                       const SystemParams& params,
                                       const std::vector<double>& axis_points,
                                       const ParityOptions& opts = {});

/// One-shot displaced-parity estimate at a point (simulated or ideal).
double displaced_parity(const QuantumState& state, const SystemParams& params,
                        cxd point, const ParityOptions& opts);

} // namespace cavitysim
