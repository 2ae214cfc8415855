#include <doctest.h>

#include <numbers>

#include "cavitysim/protocols.hpp"
#include "helpers.hpp"

using namespace cavitysim;

namespace {
const SystemParams ref = SystemParams::reference();
}

TEST_CASE("sideband rate formula") {
    CHECK(sideband_rate(0.0, ref) == 0.0);
    // xi = 0.0961 reproduces the 476 kHz working point.
    CHECK(sideband_rate(0.0961, ref) / two_pi ==
          doctest::Approx(476e3).epsilon(1e-3));
    CHECK(sideband_rate(0.2, ref) ==
          doctest::Approx(2.0 * sideband_rate(0.1, ref)).epsilon(1e-12));
}

TEST_CASE("reset rates") {
    CHECK(reset_rate(0.0, ref).omega_cr == 0.0);
    CHECK(reset_rate(0.0, ref).kappa_driven == 0.0);

    // Driven loss tuned make the total decay time 0.6 ms needs
    // Omega_cr/2pi ~ 10.4 kHz.
    const double kappa_needed = 1.0 / 0.6e-3 - 1.0 / ref.t1_c;
    const double omega_needed = std::sqrt(kappa_needed / ref.t1_r);
    CHECK(omega_needed / two_pi == doctest::Approx(10.4e3).epsilon(2e-3));
    // Invert through the formula: xi_cr giving that beam-splitter rate.
    const double xi = std::sqrt(omega_needed /
                                (2.0 * std::sqrt(ref.chi_qr * ref.chi)));
    ResetRates r = reset_rate(xi, ref);
    CHECK(r.omega_cr == doctest::Approx(omega_needed).epsilon(1e-9));
    CHECK(r.kappa_driven == doctest::Approx(kappa_needed).epsilon(1e-9));

    // Passive relaxation from 256 photons to 0.01 takes 0.26 s.
    CHECK(passive_reset_wait(256.0, 0.01, ref) ==
          doctest::Approx(0.26).epsilon(2e-3));
}

TEST_CASE("noiseless encode") {
    // (a,b) = (1,0): the sideband acts trivially on |0,g>.
    QuantumState g = encode_qubit(1.0, 0.0, ref);
    QuantumState vac_g = fock_state(g.space(), {0, 0});
    CHECK(g.fidelity_to(vac_g) == doctest::Approx(1.0).epsilon(1e-9));

    // (a,b) = (0,1): full swap into the single-photon state.
    QuantumState one = encode_qubit(0.0, 1.0, ref);
    QuantumState one_g = fock_state(one.space(), {1, 0});
    CHECK(one.fidelity_to(one_g) > 0.999);

    CHECK_THROWS_AS(encode_qubit(1.0, 1.0, ref), validation_error);
}

TEST_CASE("noisy encode fidelity sits near 98 percent") {
    SidebandOptions opts;
    opts.with_noise = true;
    QuantumState one = encode_qubit(0.0, 1.0, ref, opts);
    QuantumState one_g = fock_state(one.space(), {1, 0});
    const double f = one.fidelity_to(one_g);
    CHECK(f > 0.97);
    CHECK(f < 0.99);
}

TEST_CASE("encode followed by decode is the identity on the qubit") {
    for (auto [a, b] : std::vector<std::pair<cxd, cxd>>{
             {cxd{1.0, 0.0}, cxd{0.0, 0.0}},
             {cxd{0.0, 0.0}, cxd{1.0, 0.0}},
             {cxd{std::sqrt(0.5), 0.0}, cxd{std::sqrt(0.5), 0.0}},
             {cxd{std::sqrt(0.5), 0.0}, cxd{0.0, -std::sqrt(0.5)}}}) {
        QuantumState encoded = encode_qubit(a, b, ref);
        QuantumState decoded = decode_qubit(encoded, ref);
        Eigen::VectorXcd amps(3);
        amps << a, cxd{0.0, 0.0}, b;
        QuantumState target = product_state(decoded.space(), kTransmon, amps);
        CHECK(decoded.fidelity_to(target) > 0.999);
    }
}

TEST_CASE("ideal parity measurement on a coherent state") {
    ParityOptions opts; // ideal
    auto space = make_cavity_space(guarded_dim(4.0));
    QuantumState coh = coherent_state(space, kCavity, cxd{2.0, 0.0});

    ParityBranches b = parity_branches(coh, ref, opts);
    CHECK(b.even.probability ==
          doctest::Approx(0.5 * (1.0 + std::exp(-8.0))).epsilon(1e-9));
    CHECK(b.even.probability + b.odd.probability == doctest::Approx(1.0));

    // Even branch is the even cat.
    QuantumState cat = QuantumState::pure(
        space, oracle::cat_amplitudes(space->total_dim(), cxd{2.0, 0.0}, +1));
    CHECK(b.even.post_state.fidelity_to(cat) > 0.999);

    // Post-states are parity eigenstates.
    Operator parity = parity_operator(space, kCavity);
    CHECK(b.even.post_state.expectation(parity).real() ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(b.odd.post_state.expectation(parity).real() ==
          doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("parity of a Fock state is deterministic") {
    auto space = make_cavity_space(12);
    QuantumState one = fock_state(space, {1});
    ParityBranches b = parity_branches(one, ref, {});
    CHECK(b.odd.probability == doctest::Approx(1.0));
    CHECK(b.even.probability == doctest::Approx(0.0));
}

TEST_CASE("simulated parity agrees with the ideal map") {
    // Noiseless pi/2 - pi/chi - pi/2 sequence reproduces the Kraus map.
    const double nbar = 4.0;
    auto space = make_cavity_transmon_space(guarded_dim(nbar), 3);
    QuantumState coh = coherent_state(space, kCavity, cxd{2.0, 0.0});

    ParityOptions sim;
    sim.mode = ParityMode::simulated;
    ParityBranches simulated = parity_branches(coh, ref, sim);

    ParityBranches ideal = parity_branches(coh, ref, {});
    CHECK(simulated.even.probability ==
          doctest::Approx(ideal.even.probability).epsilon(1e-6));

    // Compare cavity contents against the ideal even cat.
    QuantumState cat_cavity = QuantumState::pure(
        make_cavity_space(space->dim(0)),
        oracle::cat_amplitudes(space->dim(0), cxd{2.0, 0.0}, +1));
    Eigen::VectorXcd cat_full = Eigen::VectorXcd::Zero(space->total_dim());
    for (int n = 0; n < space->dim(0); ++n)
        cat_full(space->basis_index({n, 0})) = cat_cavity.vector()(n);
    QuantumState target = QuantumState::pure(space, cat_full);
    CHECK(simulated.even.post_state.fidelity_to(target) > 0.999);

    // Detunings off the k*chi comb are rejected.
    ParityOptions bad = sim;
    bad.drive_detuning = 0.37 * ref.chi;
    CHECK_THROWS_AS(parity_branches(coh, ref, bad), validation_error);
}

TEST_CASE("cat preparation") {
    ParityOptions opts; // ideal
    CatPrepResult even = prepare_cat(cxd{2.0, 0.0}, ref, opts, +1);
    QuantumState target = QuantumState::pure(
        even.state.space(),
        oracle::cat_amplitudes(even.state.space()->total_dim(), cxd{2.0, 0.0}, +1));
    CHECK(even.state.fidelity_to(target) > 0.999);
    CHECK(even.parity == +1);

    // alpha = 0 prepares vacuum, always even.
    CatPrepResult vac = prepare_cat(cxd{0.0, 0.0}, ref, opts, +1);
    CHECK(vac.probability == doctest::Approx(1.0));
    CHECK(vac.state.fidelity_to(fock_state(vac.state.space(), {0})) ==
          doctest::Approx(1.0));

    // S = |2 alpha|^2.
    CHECK(cat_size(cxd{0.0, 4.0}) == doctest::Approx(64.0));
}

TEST_CASE("wigner cut of cats") {
    ParityOptions opts;
    CatPrepResult even = prepare_cat(cxd{4.0, 0.0}, ref, opts, +1); // S = 64
    std::vector<double> ys;
    for (int i = 0; i <= 160; ++i) ys.push_back(-1.0 + 2.0 * i / 160.0);
    ExperimentResult cut = wigner_cut_experiment(even.state, ref, ys, opts);

    Eigen::Map<const Eigen::VectorXd> x(cut.sweep.data(),
                                        static_cast<long>(cut.sweep.size()));
    Eigen::Map<const Eigen::VectorXd> w(cut.observable.data(),
                                        static_cast<long>(cut.observable.size()));
    CatCutFit fit = fit_cat_cut(x, w);
    // Fringe rate 2 sqrt(S) = 16 per unit displacement.
    CHECK(std::abs(fit.fit.param("fringe_rate")) ==
          doctest::Approx(16.0).epsilon(0.01));
    CHECK(fit.cat_size == doctest::Approx(64.0).epsilon(0.01));

    // Odd cat reads -1 at the origin.
    CatPrepResult odd = prepare_cat(cxd{2.0, 0.0}, ref, opts, -1);
    CHECK(displaced_parity(odd.state, ref, cxd{0.0, 0.0}, opts) ==
          doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("sideband frames agree") {
    // The pulse integrates in the frame where the drive coefficient is
    // static; the public drive term carries the K_q rotation instead. Both
    // must produce the same standard-frame state.
    auto space = make_cavity_transmon_space(4, 3);
    Eigen::VectorXcd amps(3);
    amps << std::sqrt(0.5), 0.0, std::sqrt(0.5);
    QuantumState initial = product_state(space, kTransmon, amps);

    SidebandOptions opts;
    opts.ramp = 0.0;
    const double duration = 0.3 * std::numbers::pi / opts.omega_sideband;
    QuantumState fast = sideband_pulse(initial, ref, opts, duration);

    Envelope env;
    env.amplitude = opts.omega_sideband;
    env.t_on = 0.0;
    env.t_off = duration;
    EvolutionSpec spec;
    spec.hamiltonian = build_static_hamiltonian(ref, space);
    spec.drives = {build_drive(DriveKind::sideband_qq_c, ref, space, env)};
    spec.t0 = 0.0;
    spec.t1 = duration;
    QuantumState slow = evolve(initial, spec);

    CHECK(std::abs(std::abs(slow.vector().dot(fast.vector())) - 1.0) < 1e-5);
}

TEST_CASE("cavity reset through the readout resonator") {
    // Beam-splitter drive into the lossy readout mode: for Omega_cr << kappa_r
    // the cavity acquires an induced decay kappa = Omega_cr^2 T1_r.
    auto space = make_full_space(3, 2, 2);
    const double omega_cr = two_pi * 20e3;
    const double kappa_driven = omega_cr * omega_cr * ref.t1_r;

    Envelope env;
    env.amplitude = omega_cr;
    env.t_on = 0.0;
    env.t_off = 150e-6;

    EvolutionSpec spec;
    spec.hamiltonian = build_static_hamiltonian(ref, space);
    spec.drives = {build_drive(DriveKind::reset_c_r, ref, space, env)};
    spec.collapse = {{annihilation(space, kReadout), 1.0 / ref.t1_r}};
    spec.t0 = 0.0;
    spec.t1 = env.t_off;

    QuantumState one = fock_state(space, {1, 0, 0});
    QuantumState out = evolve(one, spec);
    const double n_c = out.expectation(number_operator(space, kCavity)).real();
    CHECK(n_c == doctest::Approx(std::exp(-kappa_driven * env.t_off)).epsilon(0.04));

    // Zero envelope: nothing happens.
    Envelope off;
    off.amplitude = 0.0;
    off.t_on = 0.0;
    off.t_off = 150e-6;
    spec.drives = {build_drive(DriveKind::reset_c_r, ref, space, off)};
    spec.collapse.clear();
    QuantumState idle = evolve(one, spec);
    CHECK(idle.fidelity_to(one) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("transmon rotations") {
    auto space = make_cavity_transmon_space(2, 3);
    Operator r = transmon_rotation_ge(space, std::numbers::pi, 0.0);
    QuantumState g = fock_state(space, {0, 0});
    QuantumState rotated = apply_unitary(g, r);
    CHECK(rotated.fidelity_to(fock_state(space, {0, 1})) ==
          doctest::Approx(1.0).epsilon(1e-12));

    Operator rgf = transmon_rotation_gf(space, std::numbers::pi, 0.0);
    QuantumState f = apply_unitary(g, rgf);
    CHECK(f.fidelity_to(fock_state(space, {0, 2})) ==
          doctest::Approx(1.0).epsilon(1e-12));
}
