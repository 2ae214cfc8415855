#pragma once

#include "cavitysim/protocols.hpp"

namespace cavitysim {

struct MemoryExperimentOptions {
    int cavity_dim = 4;
    bool with_noise = true;
    SidebandOptions sideband;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
};

/// Encode Fock |1>, idle, decode, read the transmon f population. The curve
/// decays exponentially with the single-photon lifetime.
ExperimentResult measure_t1_experiment(const SystemParams& params,
                                       const std::vector<double>& delays,
                                       const MemoryExperimentOptions& opts = {});

/// Encode (|0>+|1>)/sqrt(2), idle, decode and read along a swept g-f axis
/// (fringe at fringe_detuning_hz). The envelope decays with T2 satisfying
/// 1/T2 = 1/(2 T1c) + Gamma_phi.
ExperimentResult measure_t2_experiment(const SystemParams& params,
                                       const std::vector<double>& delays,
                                       double fringe_detuning_hz,
                                       const MemoryExperimentOptions& opts = {});

/// Population of |1,g> vs sideband pulse duration (square pulse); the swap
/// peaks at pi/Omega.
ExperimentResult sideband_swap_sweep(const SystemParams& params,
                                     const std::vector<double>& durations,
                                     const SidebandOptions& opts = {});

struct ParityCalibrationResult {
    ExperimentResult curve; // P(excited) vs transmon drive detuning (rad/s)
    FitResult cosine_fit;
    double optimal_detuning = 0.0; // cosine maximum nearest nbar*chi (rad/s)
};

/// Ramsey revival calibration: displace to |alpha>, pi/2, wait 2 pi / chi,
/// pi/2, read P(e) against transmon drive detuning. The curve is a cosine of
/// period chi/2pi; the working point is the maximum nearest the mean Stark
/// shift nbar*chi.
ParityCalibrationResult calibrate_parity_drive(const SystemParams& params, cxd alpha,
                                               const std::vector<double>& detuning_grid,
                                               const ParityOptions& opts = {});

enum class IdleMethod { integrate, closed_form };

struct CatDecoherenceOptions {
    ParityOptions parity;                       // prep and readout mode
    IdleMethod idle = IdleMethod::integrate;    // how delays are evolved
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
};

struct CatDecoherenceResult {
    ExperimentResult fringe; // interference amplitude at the origin vs delay
    FitResult fit;
    double t_d = 0.0; // fitted decay time of the interference amplitude
};

/// Origin interference amplitude of an even cat under photon loss vs delay.
/// The incoherent two-component background is removed with a reference run
/// of the 50/50 coherent-state mixture, isolating the fringe term whose
/// decay time is 2 T1c / S.
CatDecoherenceResult cat_decoherence_experiment(cxd alpha, const SystemParams& params,
                                                const std::vector<double>& delays,
                                                const CatDecoherenceOptions& opts = {});

/// Default delay grid for the fringe decay: short against both the model
/// decay time and the photon lifetime so the decay is single-exponential.
std::vector<double> cat_decoherence_delays(cxd alpha, const SystemParams& params,
                                           int points = 10);

struct SpamBudgetResult {
    double visibility = 0.0;   // parity correlator of prep and readout
    double prep_even_probability = 0.0;
};

/// Fringe visibility of cat preparation plus parity readout at the origin
/// with the selected channels enabled: the correlator E[s1 s2] of the two
/// parity outcomes, 1 for a noiseless pipeline.
SpamBudgetResult spam_error_budget(cxd alpha, const SystemParams& params,
                                   const ChannelToggles& toggles,
                                   double rel_tol = 1e-8, double abs_tol = 1e-10);

} // namespace cavitysim
