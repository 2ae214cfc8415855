#include "cavitysim/experiments.hpp"

#include <cmath>

#include "cavitysim/threading.hpp"

namespace cavitysim {

namespace {

Operator f_population(const SpacePtr& space) {
    const int d = space->dim(space->index_of(kTransmon));
    Eigen::MatrixXcd proj = Eigen::MatrixXcd::Zero(d, d);
    proj(2, 2) = 1.0;
    return embed(space, kTransmon, proj, true);
}

} // namespace

ExperimentResult measure_t1_experiment(const SystemParams& params,
                                       const std::vector<double>& delays,
                                       const MemoryExperimentOptions& opts) {
    for (double d : delays)
        if (d < 0.0) throw validation_error("measure_t1_experiment: delay < 0");

    SidebandOptions sb = opts.sideband;
    sb.cavity_dim = opts.cavity_dim;
    sb.with_noise = opts.with_noise;

    QuantumState encoded = encode_qubit(0.0, 1.0, params, sb);
    const SpacePtr& space = encoded.space();
    const Operator h_idle = build_static_hamiltonian(params, space);
    const std::vector<CollapseChannel> channels =
        opts.with_noise ? collapse_channels(params, space)
                        : std::vector<CollapseChannel>{};
    const Operator p_f = f_population(space);

    ExperimentResult result;
    result.sweep_name = "delay_s";
    result.observable_name = "p_single_photon";
    result.sweep = delays;
    result.observable.assign(delays.size(), 0.0);
    parallel_for(static_cast<int>(delays.size()), [&](int i) {
        QuantumState idled = evolve_idle(encoded, h_idle, channels, delays[i],
                                         opts.rel_tol, opts.abs_tol);
        QuantumState decoded = decode_qubit(idled, params, sb);
        result.observable[i] = decoded.expectation(p_f).real();
    });
    result.meta.numbers["t1_c_s"] = params.t1_c;
    result.meta.numbers["cavity_dim"] = opts.cavity_dim;
    result.meta.notes["protocol"] = "encode |1>, idle, decode, read f population";
    result.require_consistent(0.0, 1.0);
    return result;
}

ExperimentResult measure_t2_experiment(const SystemParams& params,
                                       const std::vector<double>& delays,
                                       double fringe_detuning_hz,
                                       const MemoryExperimentOptions& opts) {
    for (double d : delays)
        if (d < 0.0) throw validation_error("measure_t2_experiment: delay < 0");

    SidebandOptions sb = opts.sideband;
    sb.cavity_dim = opts.cavity_dim;
    sb.with_noise = opts.with_noise;

    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    QuantumState encoded = encode_qubit(inv_sqrt2, inv_sqrt2, params, sb);
    const SpacePtr& space = encoded.space();
    const Operator h_idle = build_static_hamiltonian(params, space);
    const std::vector<CollapseChannel> channels =
        opts.with_noise ? collapse_channels(params, space)
                        : std::vector<CollapseChannel>{};
    const Operator p_f = f_population(space);

    ExperimentResult result;
    result.sweep_name = "delay_s";
    result.observable_name = "p_plus";
    result.sweep = delays;
    result.observable.assign(delays.size(), 0.0);
    parallel_for(static_cast<int>(delays.size()), [&](int i) {
        QuantumState idled = evolve_idle(encoded, h_idle, channels, delays[i],
                                         opts.rel_tol, opts.abs_tol);
        QuantumState decoded = decode_qubit(idled, params, sb);
        // Readout along a delay-swept g-f axis realizes the fringe.
        const double phase = two_pi * fringe_detuning_hz * delays[i];
        QuantumState rotated = apply_unitary(
            decoded, transmon_rotation_gf(space, 0.5 * std::numbers::pi, phase));
        result.observable[i] = rotated.expectation(p_f).real();
    });
    result.meta.numbers["fringe_detuning_hz"] = fringe_detuning_hz;
    result.meta.notes["protocol"] =
        "encode (|0>+|1>)/sqrt2, idle, decode, swept g-f pi/2, read f";
    result.require_consistent(0.0, 1.0);
    return result;
}

ExperimentResult sideband_swap_sweep(const SystemParams& params,
                                     const std::vector<double>& durations,
                                     const SidebandOptions& opts) {
    SpacePtr space = make_cavity_transmon_space(opts.cavity_dim, 3);
    Eigen::VectorXcd amps(3);
    amps << cxd{0.0, 0.0}, cxd{0.0, 0.0}, cxd{1.0, 0.0};
    const QuantumState initial = product_state(space, kTransmon, amps);
    const QuantumState target = fock_state(space, {1, 0});

    ExperimentResult result;
    result.sweep_name = "pulse_duration_s";
    result.observable_name = "p_1g";
    result.sweep = durations;
    for (double t : durations) {
        if (t <= 0.0) {
            result.observable.push_back(initial.fidelity_to(target));
            continue;
        }
        QuantumState final_state = sideband_pulse(initial, params, opts, t);
        result.observable.push_back(final_state.fidelity_to(target));
    }
    result.meta.numbers["omega_sideband"] = opts.omega_sideband;
    result.require_consistent(0.0, 1.0);
    return result;
}

ParityCalibrationResult calibrate_parity_drive(const SystemParams& params, cxd alpha,
                                               const std::vector<double>& detuning_grid,
                                               const ParityOptions& opts) {
    const double nbar = std::norm(alpha);
    const int cavity_dim = guarded_dim(nbar);
    SpacePtr space = make_cavity_transmon_space(cavity_dim, 3);
    const QuantumState initial = coherent_state(space, kCavity, alpha);

    const double t_revival = two_pi / params.chi; // 2T, full coherence revival
    const Operator r_half = transmon_rotation_ge(space, 0.5 * std::numbers::pi, 0.0);
    const Operator n_q = number_operator(space, kTransmon);
    const Operator h0 = build_static_hamiltonian(params, space);
    const std::vector<CollapseChannel> channels =
        toggled_channels(params, space, opts.toggles);

    Eigen::MatrixXcd excited = Eigen::MatrixXcd::Zero(3, 3);
    excited(1, 1) = 1.0;
    excited(2, 2) = 1.0;
    const Operator p_excited = embed(space, kTransmon, excited, true);

    ParityCalibrationResult out;
    out.curve.sweep_name = "drive_detuning_rad_s";
    out.curve.observable_name = "p_e";
    out.curve.sweep = detuning_grid;
    out.curve.observable.assign(detuning_grid.size(), 0.0);
    parallel_for(static_cast<int>(detuning_grid.size()), [&](int i) {
        Operator h = h0 + (cxd{-detuning_grid[i], 0.0} * n_q);
        QuantumState s = apply_unitary(initial, r_half);
        s = evolve_idle(s, h, channels, t_revival, opts.rel_tol, opts.abs_tol);
        s = apply_unitary(s, r_half);
        out.curve.observable[i] = s.expectation(p_excited).real();
    });
    out.curve.require_consistent(0.0, 1.0);
    out.curve.meta.numbers["nbar"] = nbar;
    out.curve.meta.numbers["revival_time_s"] = t_revival;

    Eigen::Map<const Eigen::VectorXd> x(detuning_grid.data(),
                                        static_cast<long>(detuning_grid.size()));
    Eigen::Map<const Eigen::VectorXd> y(out.curve.observable.data(),
                                        static_cast<long>(out.curve.observable.size()));
    out.cosine_fit = fit_cosine(x, y);

    // Maximum of A cos(x/nu + phi) nearest the mean Stark shift nbar*chi.
    double a = out.cosine_fit.param("amplitude");
    double nu = out.cosine_fit.param("nu");
    double phi = out.cosine_fit.param("phase");
    if (a < 0.0) phi += std::numbers::pi;
    const double target = nbar * params.chi;
    const double k = std::round((target / nu + phi) / two_pi);
    out.optimal_detuning = nu * (two_pi * k - phi);
    return out;
}

std::vector<double> cat_decoherence_delays(cxd alpha, const SystemParams& params,
                                           int points) {
    const double s = cat_size(alpha);
    const double t_d_model = 2.0 * params.t1_c / s;
    const double t_max = std::min(1.2 * t_d_model, 0.06 * params.t1_c);
    std::vector<double> delays(points);
    for (int i = 0; i < points; ++i)
        delays[i] = t_max * static_cast<double>(i) / (points - 1);
    return delays;
}

CatDecoherenceResult cat_decoherence_experiment(cxd alpha, const SystemParams& params,
                                                const std::vector<double>& delays,
                                                const CatDecoherenceOptions& opts) {
    const double nbar = std::norm(alpha);
    CatPrepResult cat = prepare_cat(alpha, params, opts.parity, +1);
    const SpacePtr& space = cat.state.space();

    // Reference: incoherent 50/50 mixture of |alpha> and |-alpha>; its origin
    // parity tracks the populations, so subtracting it isolates the fringe.
    QuantumState mixture = mix({{0.5, coherent_state(space, kCavity, alpha)},
                                {0.5, coherent_state(space, kCavity, -alpha)}});
    const double coherence_weight = 1.0 / (1.0 + std::exp(-2.0 * nbar));

    const Operator h_idle = build_static_hamiltonian(params, space);
    std::vector<CollapseChannel> channels;
    channels.push_back({annihilation(space, kCavity), 1.0 / params.t1_c});

    auto idle = [&](const QuantumState& state, double delay) {
        if (delay == 0.0) return state;
        if (opts.idle == IdleMethod::closed_form)
            return evolve_idle(state, h_idle, channels, delay, opts.rel_tol,
                               opts.abs_tol);
        EvolutionSpec spec;
        spec.hamiltonian = h_idle;
        spec.collapse = channels;
        spec.t0 = 0.0;
        spec.t1 = delay;
        spec.rel_tol = opts.rel_tol;
        spec.abs_tol = opts.abs_tol;
        return evolve(state, spec);
    };

    CatDecoherenceResult out;
    out.fringe.sweep_name = "delay_s";
    out.fringe.observable_name = "origin_fringe_amplitude";
    out.fringe.sweep = delays;
    out.fringe.observable.assign(delays.size(), 0.0);
    parallel_for(static_cast<int>(delays.size()), [&](int i) {
        QuantumState cat_t = idle(cat.state, delays[i]);
        QuantumState mix_t = idle(mixture, delays[i]);
        const double p_cat =
            wigner_at(cat_t, kCavity, cxd{0.0, 0.0}, WignerConvention::parity);
        const double p_mix =
            wigner_at(mix_t, kCavity, cxd{0.0, 0.0}, WignerConvention::parity);
        out.fringe.observable[i] = p_cat - coherence_weight * p_mix;
    });
    out.fringe.require_consistent(-1.0, 1.0);
    out.fringe.meta.numbers["cat_size"] = cat_size(alpha);
    out.fringe.meta.numbers["t1_c_s"] = params.t1_c;

    Eigen::Map<const Eigen::VectorXd> x(out.fringe.sweep.data(),
                                        static_cast<long>(out.fringe.sweep.size()));
    Eigen::Map<const Eigen::VectorXd> y(out.fringe.observable.data(),
                                        static_cast<long>(out.fringe.observable.size()));
    out.fit = fit_exponential_no_baseline(x, y);
    out.t_d = out.fit.param("tau");
    return out;
}

SpamBudgetResult spam_error_budget(cxd alpha, const SystemParams& params,
                                   const ChannelToggles& toggles, double rel_tol,
                                   double abs_tol) {
    const double nbar = std::norm(alpha);
    if (nbar > 16.0 + 1e-9)
        throw validation_error("spam_error_budget: |alpha|^2 must be <= 16");
    const int cavity_dim = guarded_dim(nbar);
    SpacePtr space = make_cavity_transmon_space(cavity_dim, 3);

    ParityOptions parity;
    parity.mode = ParityMode::simulated;
    parity.toggles = toggles;
    parity.rel_tol = rel_tol;
    parity.abs_tol = abs_tol;

    QuantumState displaced = apply_unitary(fock_state(space, {0, 0}),
                                           displacement(space, kCavity, alpha));

    // Correlator of the preparation parity outcome with a second parity
    // readout at the origin; 1 when nothing decoheres in between.
    ParityBranches prep = parity_branches(displaced, params, parity);
    double correlator = 0.0;
    for (const ParityOutcome* branch : {&prep.even, &prep.odd}) {
        if (branch->probability < 1e-12) continue;
        ParityBranches tomo = parity_branches(branch->post_state, params, parity);
        const double readout = tomo.even.probability - tomo.odd.probability;
        correlator += branch->probability * branch->outcome * readout;
    }

    SpamBudgetResult out;
    out.visibility = correlator;
    out.prep_even_probability = prep.even.probability;
    return out;
}

} // namespace cavitysim
