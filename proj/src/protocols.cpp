#include "cavitysim/protocols.hpp"

#include <cmath>

#include "cavitysim/threading.hpp"

namespace cavitysim {

void ExperimentResult::require_consistent(double lo, double hi) const {
    if (sweep.size() != observable.size())
        throw validation_error("ExperimentResult: sweep/observable length mismatch");
    for (double v : observable)
        if (v < lo - 1e-9 || v > hi + 1e-9)
            throw validation_error("ExperimentResult: observable outside [" +
                                   std::to_string(lo) + "," + std::to_string(hi) + "]");
}

double sideband_rate(double xi, const SystemParams& params) {
    if (xi < 0.0) throw validation_error("sideband_rate: xi must be >= 0");
    return 2.0 * xi * std::sqrt(params.kerr_q * params.chi);
}

ResetRates reset_rate(double xi_cr, const SystemParams& params) {
    if (xi_cr < 0.0) throw validation_error("reset_rate: xi_cr must be >= 0");
    ResetRates r;
    r.omega_cr = 2.0 * xi_cr * xi_cr * std::sqrt(params.chi_qr * params.chi);
    r.kappa_driven = r.omega_cr * r.omega_cr * params.t1_r;
    return r;
}

double passive_reset_wait(double nbar_initial, double nbar_final,
                          const SystemParams& params) {
    if (nbar_initial <= 0.0 || nbar_final <= 0.0 || nbar_final >= nbar_initial)
        throw validation_error("passive_reset_wait: need nbar_initial > nbar_final > 0");
    return params.t1_c * std::log(nbar_initial / nbar_final);
}

ChannelToggles ChannelToggles::none() {
    ChannelToggles t;
    t.cavity_loss = t.transmon_decay = t.transmon_dephasing = t.transmon_heating =
        t.readout_flip = false;
    return t;
}

ChannelToggles ChannelToggles::all() { return ChannelToggles{}; }

std::vector<CollapseChannel> toggled_channels(const SystemParams& params,
                                              const SpacePtr& space,
                                              const ChannelToggles& toggles) {
    std::vector<CollapseChannel> channels;
    if (toggles.cavity_loss && space->has(kCavity)) {
        channels.push_back({annihilation(space, kCavity),
                            (1.0 + params.nth_c) / params.t1_c});
        if (params.nth_c > 0.0)
            channels.push_back({creation(space, kCavity), params.nth_c / params.t1_c});
    }
    if (space->has(kTransmon)) {
        if (toggles.transmon_decay)
            channels.push_back({annihilation(space, kTransmon),
                                (1.0 + params.nth_q) / params.t1_q});
        if (toggles.transmon_heating && params.nth_q > 0.0)
            channels.push_back({creation(space, kTransmon), params.nth_q / params.t1_q});
        if (toggles.transmon_dephasing) {
            const double gamma = params.transmon_dephasing_rate();
            if (gamma > 0.0)
                channels.push_back({number_operator(space, kTransmon), gamma});
        }
    }
    return channels;
}

namespace {

Eigen::MatrixXcd two_level_rotation(int dim, int lower, int upper, double theta,
                                    double phase) {
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
    const cxd mi{0.0, -1.0};
    u(lower, lower) = c;
    u(upper, upper) = c;
    u(lower, upper) = mi * std::polar(s, -phase);
    u(upper, lower) = mi * std::polar(s, phase);
    return u;
}

} // namespace

Operator transmon_rotation_ge(const SpacePtr& space, double theta, double phase) {
    const int d = space->dim(space->index_of(kTransmon));
    return embed(space, kTransmon, two_level_rotation(d, 0, 1, theta, phase));
}

Operator transmon_rotation_gf(const SpacePtr& space, double theta, double phase) {
    const int d = space->dim(space->index_of(kTransmon));
    if (d < 3)
        throw validation_error("transmon_rotation_gf: transmon dim must be >= 3");
    return embed(space, kTransmon, two_level_rotation(d, 0, 2, theta, phase));
}

// ---------------------------------------------------------------------------
// Sideband pulses
// ---------------------------------------------------------------------------

QuantumState sideband_pulse(const QuantumState& state, const SystemParams& params,
                            const SidebandOptions& opts, double duration) {
    const SpacePtr& space = state.space();
    if (!space->has(kTransmon) || space->dim(space->index_of(kTransmon)) < 3)
        throw validation_error("sideband_pulse: needs a transmon with the f level");

    Envelope env;
    env.amplitude = opts.omega_sideband;
    env.t_on = 0.0;
    env.t_off = duration;
    env.ramp = std::min(opts.ramp, 0.45 * duration);

    // The drive coefficient rotates at K_q in the standard frame. Shifting
    // the transmon reference by K_q/2 per excitation makes it static: the
    // frame change e^{-i (K_q/2) n_q t} is diagonal and commutes with every
    // dissipator up to a phase on the jump operator, so the Lindblad terms
    // are untouched. The swap manifold {|0,g>, |0,f>, |1,g>} is degenerate
    // in this frame and the integrator only resolves the Rabi rate.
    DriveTerm drive = build_drive(DriveKind::sideband_qq_c, params, space, env);
    drive.frame_offset = 0.0;

    EvolutionSpec spec;
    spec.hamiltonian =
        build_static_hamiltonian(params, space) +
        (cxd{0.5 * params.kerr_q, 0.0} * number_operator(space, kTransmon));
    spec.drives = {drive};
    if (opts.with_noise)
        spec.collapse = sideband_collapse_channels(params, space);
    spec.t0 = 0.0;
    spec.t1 = duration;
    spec.rel_tol = opts.rel_tol;
    spec.abs_tol = opts.abs_tol;
    QuantumState out = evolve(state, spec);

    // Back to the standard frame: amplitudes gain e^{+i (K_q/2) n_q T}.
    const int dq = space->dim(space->index_of(kTransmon));
    Eigen::MatrixXcd back = Eigen::MatrixXcd::Identity(dq, dq);
    for (int l = 0; l < dq; ++l)
        back(l, l) = std::polar(1.0, 0.5 * params.kerr_q * l * duration);
    return apply_unitary(out, embed(space, kTransmon, back));
}

namespace {

double pi_pulse_duration(const SidebandOptions& opts) {
    // Raised-cosine ramps subtract one ramp length of pulse area.
    return std::numbers::pi / opts.omega_sideband + opts.ramp;
}

/// Encode then decode leaves the f amplitude with the deterministic phase
/// pi + K_q T; decoding applies the opposite rotation so the round trip is
/// the identity on the qubit.
Operator f_phase_correction(const SpacePtr& space, const SystemParams& params,
                            double pulse_duration) {
    const int d = space->dim(space->index_of(kTransmon));
    Eigen::MatrixXcd z = Eigen::MatrixXcd::Identity(d, d);
    const double phi = -(std::numbers::pi + params.kerr_q * pulse_duration);
    z(2, 2) = std::polar(1.0, phi);
    return embed(space, kTransmon, z);
}

} // namespace

QuantumState encode_qubit(cxd a, cxd b, const SystemParams& params,
                          const SidebandOptions& opts) {
    if (std::abs(std::norm(a) + std::norm(b) - 1.0) > 1e-9)
        throw validation_error("encode_qubit: |a|^2 + |b|^2 must be 1");
    SpacePtr space = make_cavity_transmon_space(opts.cavity_dim, 3);
    Eigen::VectorXcd amps(3);
    amps << a, cxd{0.0, 0.0}, b;
    QuantumState initial = product_state(space, kTransmon, amps);
    return sideband_pulse(initial, params, opts, pi_pulse_duration(opts));
}

QuantumState decode_qubit(const QuantumState& state, const SystemParams& params,
                          const SidebandOptions& opts) {
    const double duration = pi_pulse_duration(opts);
    QuantumState mapped = sideband_pulse(state, params, opts, duration);
    return apply_unitary(mapped, f_phase_correction(state.space(), params, duration));
}

// ---------------------------------------------------------------------------
// Parity measurement
// ---------------------------------------------------------------------------

namespace {

ParityBranches ideal_parity_branches(const QuantumState& state) {
    const SpacePtr& space = state.space();
    const Operator parity = parity_operator(space, kCavity);
    const Operator id = identity(space);
    const Operator proj_even = cxd{0.5, 0.0} * (id + parity);
    const Operator proj_odd = cxd{0.5, 0.0} * (id - parity);

    auto branch = [&](const Operator& proj, int sign) {
        ParityOutcome out;
        out.outcome = sign;
        if (state.is_pure()) {
            Eigen::VectorXcd psi = proj.mat * state.vector();
            out.probability = psi.squaredNorm();
            if (out.probability > 0.0) psi /= std::sqrt(out.probability);
            out.post_state = QuantumState::pure(space, std::move(psi));
        } else {
            Eigen::MatrixXcd rho = proj.mat * state.density_matrix() * proj.mat;
            out.probability = rho.trace().real();
            if (out.probability > 0.0) rho /= out.probability;
            out.post_state = QuantumState::density(space, std::move(rho));
        }
        return out;
    };

    return ParityBranches{branch(proj_even, +1), branch(proj_odd, -1)};
}

struct RawBranch {
    double probability = 0.0;
    QuantumState post_state; // unnormalized branch not kept; state normalized
};

ParityBranches simulated_parity_branches(const QuantumState& state,
                                         const SystemParams& params,
                                         const ParityOptions& opts) {
    const SpacePtr& space = state.space();
    if (!space->has(kTransmon))
        throw validation_error("parity (simulated): space lacks a transmon");

    const double t_parity = std::numbers::pi / params.chi;
    // Ramsey phase advances by (detuning + chi n) t; detuning must sit on the
    // k chi comb for the map to close, and odd k swaps the branch meaning.
    const int k = static_cast<int>(std::llround(opts.drive_detuning / params.chi));
    if (std::abs(opts.drive_detuning - k * params.chi) > 1e-6 * params.chi)
        throw validation_error("parity (simulated): detuning must be a multiple of chi");

    Operator h = build_static_hamiltonian(params, space);
    if (opts.drive_detuning != 0.0)
        h = h + (cxd{-opts.drive_detuning, 0.0} * number_operator(space, kTransmon));

    const Operator r_half = transmon_rotation_ge(space, 0.5 * std::numbers::pi, 0.0);
    const std::vector<CollapseChannel> channels =
        toggled_channels(params, space, opts.toggles);

    QuantumState s = apply_unitary(state, r_half);
    s = evolve_idle(s, h, channels, t_parity, opts.rel_tol, opts.abs_tol);
    s = apply_unitary(s, r_half);

    // Transmon |g> vs excited; with detuning on an odd comb index the
    // excited outcome flags odd instead of even parity.
    auto ground = project_subsystem(s, kTransmon, 0);
    const double p_g = ground.probability;
    const double p_exc = std::max(0.0, 1.0 - p_g);

    QuantumState post_g = reset_subsystem(ground.post_state, kTransmon, 0);
    // Excited branch: complement projector (levels e and above read out as
    // excited), then ideal transmon reset.
    QuantumState post_exc = post_g; // placeholder when the branch has no weight
    const int kq = space->index_of(kTransmon);
    if (p_exc > 1e-15) {
        if (s.is_pure()) {
            Eigen::VectorXcd psi = s.vector();
            for (int i = 0; i < space->total_dim(); ++i)
                if (space->level_of(i, kq) == 0) psi(i) = 0.0;
            psi /= psi.norm();
            post_exc = reset_subsystem(QuantumState::pure(space, std::move(psi)),
                                       kTransmon, 0);
        } else {
            Eigen::MatrixXcd rho = s.density_matrix();
            const int n = space->total_dim();
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (space->level_of(i, kq) == 0 || space->level_of(j, kq) == 0)
                        rho(i, j) = 0.0;
            rho /= rho.trace().real();
            post_exc = reset_subsystem(QuantumState::density(space, std::move(rho)),
                                       kTransmon, 0);
        }
    }

    const bool exc_means_even = (k % 2 == 0);
    ParityOutcome even, odd;
    even.outcome = +1;
    odd.outcome = -1;
    if (exc_means_even) {
        even.probability = p_exc;
        even.post_state = post_exc;
        odd.probability = p_g;
        odd.post_state = post_g;
    } else {
        even.probability = p_g;
        even.post_state = post_g;
        odd.probability = p_exc;
        odd.post_state = post_exc;
    }

    if (opts.toggles.readout_flip) {
        // Classical assignment error: recorded outcome flips with 1 - F.
        const double f = opts.toggles.readout_fidelity;
        const double pe = even.probability, po = odd.probability;
        const double pe_rec = f * pe + (1.0 - f) * po;
        const double po_rec = f * po + (1.0 - f) * pe;
        QuantumState even_rec = pe_rec > 0.0
                                    ? mix({{f * pe, even.post_state},
                                           {(1.0 - f) * po, odd.post_state}})
                                    : even.post_state;
        QuantumState odd_rec = po_rec > 0.0
                                   ? mix({{f * po, odd.post_state},
                                          {(1.0 - f) * pe, even.post_state}})
                                   : odd.post_state;
        even.probability = pe_rec;
        even.post_state = std::move(even_rec);
        odd.probability = po_rec;
        odd.post_state = std::move(odd_rec);
    }
    return ParityBranches{std::move(even), std::move(odd)};
}

} // namespace

ParityBranches parity_branches(const QuantumState& state, const SystemParams& params,
                               const ParityOptions& opts) {
    ParityBranches b = opts.mode == ParityMode::ideal
                           ? ideal_parity_branches(state)
                           : simulated_parity_branches(state, params, opts);
    const double total = b.even.probability + b.odd.probability;
    if (std::abs(total - 1.0) > 1e-9)
        throw validation_error("parity_branches: probabilities sum to " +
                               std::to_string(total));
    return b;
}

ParityOutcome parity_measure(const QuantumState& state, const SystemParams& params,
                             const ParityOptions& opts, int select_outcome) {
    ParityBranches b = parity_branches(state, params, opts);
    if (select_outcome == +1) return b.even;
    if (select_outcome == -1) return b.odd;
    throw validation_error("parity_measure: select_outcome must be +-1");
}

// ---------------------------------------------------------------------------
// Cat preparation and Wigner cuts
// ---------------------------------------------------------------------------

double cat_size(cxd alpha) { return 4.0 * std::norm(alpha); }

CatPrepResult prepare_cat(cxd alpha, const SystemParams& params,
                          const ParityOptions& opts, int parity) {
    const double nbar = std::norm(alpha);
    const int cavity_dim = guarded_dim(nbar);
    SpacePtr space = opts.mode == ParityMode::ideal
                         ? make_cavity_space(cavity_dim)
                         : make_cavity_transmon_space(cavity_dim, 3);

    QuantumState state = fock_state(space, std::vector<int>(space->subsystem_count(), 0));
    state = apply_unitary(state, displacement(space, kCavity, alpha));

    ParityOutcome out = parity_measure(state, params, opts, parity);
    CatPrepResult result;
    result.state = std::move(out.post_state);
    result.parity = out.outcome;
    result.probability = out.probability;
    return result;
}

double displaced_parity(const QuantumState& state, const SystemParams& params,
                        cxd point, const ParityOptions& opts) {
    if (opts.mode == ParityMode::ideal)
        return wigner_at(state, kCavity, point, WignerConvention::parity);
    QuantumState moved =
        apply_unitary(state, displacement(state.space(), kCavity, -point));
    ParityBranches b = parity_branches(moved, params, opts);
    return b.even.probability - b.odd.probability;
}

ExperimentResult wigner_cut_experiment(const QuantumState& state,
                                       const SystemParams& params,
                                       const std::vector<double>& axis_points,
                                       const ParityOptions& opts) {
    ExperimentResult result;
    result.sweep_name = "imag_axis_displacement";
    result.observable_name = "displaced_parity";
    result.sweep = axis_points;
    result.observable.assign(axis_points.size(), 0.0);
    parallel_for(static_cast<int>(axis_points.size()), [&](int i) {
        result.observable[i] =
            displaced_parity(state, params, cxd{0.0, axis_points[i]}, opts);
    });
    result.meta.numbers["points"] = static_cast<double>(axis_points.size());
    result.require_consistent(-1.0, 1.0);
    return result;
}

} // namespace cavitysim
