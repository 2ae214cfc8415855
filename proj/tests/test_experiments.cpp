#include <doctest.h>

#include "cavitysim/experiments.hpp"
#include "cavitysim/models.hpp"

using namespace cavitysim;

namespace {

const SystemParams ref = SystemParams::reference();

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
    return x;
}

} // namespace

TEST_CASE("t1 experiment decays with the photon lifetime") {
    std::vector<double> delays = linspace(0.0, 0.08, 17);
    ExperimentResult result = measure_t1_experiment(ref, delays);

    // Zero delay: encode followed by decode, two noisy sideband passes.
    CHECK(result.observable.front() > 0.9);
    CHECK(result.observable.front() < 1.0);

    FitResult fit = fit_exponential(to_vec(result.sweep), to_vec(result.observable));
    CHECK(fit.converged);
    CHECK(fit.param("tau") == doctest::Approx(ref.t1_c).epsilon(0.02));
}

TEST_CASE("t1 experiment with channels off is flat") {
    MemoryExperimentOptions opts;
    opts.with_noise = false;
    std::vector<double> delays = linspace(0.0, 0.05, 5);
    ExperimentResult result = measure_t1_experiment(ref, delays, opts);
    for (double p : result.observable) CHECK(p == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("t2 experiment fringe decays near the predicted coherence time") {
    std::vector<double> delays = linspace(0.0, 0.09, 37);
    ExperimentResult result = measure_t2_experiment(ref, delays, 60.0);
    FitResult fit = fit_exp_cos(to_vec(result.sweep), to_vec(result.observable));
    CHECK(fit.converged);
    CHECK(fit.param("frequency") == doctest::Approx(60.0).epsilon(0.02));

    // Prediction from loss plus thermal jumps: ~32.9 ms.
    const double gamma_phi =
        thermal_dephasing_rate(ref.chi, (1.0 + ref.nth_q) / ref.t1_q, ref.nth_q);
    const double t2_pred = 1.0 / (0.5 / ref.t1_c + gamma_phi);
    CHECK(fit.param("tau") == doctest::Approx(t2_pred).epsilon(0.05));
}

TEST_CASE("t2 without dephasing or heating is lifetime-limited") {
    SystemParams quiet = ref;
    quiet.nth_q = 0.0;
    std::vector<double> delays = linspace(0.0, 0.09, 31);
    ExperimentResult result = measure_t2_experiment(quiet, delays, 60.0);
    FitResult fit = fit_exp_cos(to_vec(result.sweep), to_vec(result.observable));
    CHECK(fit.converged);
    CHECK(fit.param("tau") == doctest::Approx(2.0 * quiet.t1_c).epsilon(0.05));
}

TEST_CASE("sideband swap sweep peaks at pi over Omega") {
    SidebandOptions opts;
    opts.ramp = 0.0; // square pulse: the swap time is exactly pi/Omega
    const double t_pi = std::numbers::pi / opts.omega_sideband;
    std::vector<double> durations = linspace(0.7 * t_pi, 1.3 * t_pi, 25);
    ExperimentResult result = sideband_swap_sweep(ref, durations, opts);

    int imax = 0;
    for (size_t i = 0; i < result.observable.size(); ++i)
        if (result.observable[i] > result.observable[imax])
            imax = static_cast<int>(i);
    CHECK(result.sweep[imax] == doctest::Approx(t_pi).epsilon(0.03));
    CHECK(result.observable[imax] > 0.999);
}

TEST_CASE("parity drive calibration") {
    const double chi = ref.chi;
    ParityOptions opts;
    opts.mode = ParityMode::simulated;

    // nbar = 16: grid around the Stark shift.
    std::vector<double> grid = linspace(16.0 * chi - 3.0 * chi,
                                        16.0 * chi + 3.0 * chi, 121);
    ParityCalibrationResult cal =
        calibrate_parity_drive(ref, cxd{4.0, 0.0}, grid, opts);

    // Fitted period equals chi (nu in these units is chi/2pi).
    CHECK(std::abs(cal.cosine_fit.param("nu")) ==
          doctest::Approx(chi / two_pi).epsilon(0.01));
    // Optimum within chi/4 of nbar chi.
    CHECK(std::abs(cal.optimal_detuning - 16.0 * chi) < 0.25 * chi);

    // alpha = 0: optimum at zero detuning.
    std::vector<double> grid0 = linspace(-3.0 * chi, 3.0 * chi, 121);
    ParityCalibrationResult cal0 =
        calibrate_parity_drive(ref, cxd{0.0, 0.0}, grid0, opts);
    CHECK(std::abs(cal0.optimal_detuning) < 0.25 * chi);
}

TEST_CASE("parity calibration at the largest-cat working point") {
    // nbar = 256: the transmon shift is nbar chi / 2pi ~ 10.75 MHz. The
    // noiseless path stays a pure state with closed-form phases, so the
    // 1038-dimensional space costs nothing.
    const double chi = ref.chi;
    ParityOptions opts;
    opts.mode = ParityMode::simulated;
    std::vector<double> grid = linspace(253.0 * chi, 259.0 * chi, 181);
    ParityCalibrationResult cal =
        calibrate_parity_drive(ref, cxd{16.0, 0.0}, grid, opts);
    CHECK(cal.optimal_detuning / two_pi == doctest::Approx(10.752e6).epsilon(1e-3));
}

TEST_CASE("cat fringe decay time follows 2 T1 / S") {
    const double s = 16.0;
    const cxd alpha{0.5 * std::sqrt(s), 0.0};
    std::vector<double> delays = cat_decoherence_delays(alpha, ref, 9);
    CatDecoherenceResult r = cat_decoherence_experiment(alpha, ref, delays);
    CHECK(r.fit.converged);
    CHECK(1.0 / r.t_d ==
          doctest::Approx(s / (2.0 * ref.t1_c)).epsilon(0.10));
}

TEST_CASE("vacuum parity does not decay under photon loss") {
    // The S -> 0 limit of the fringe experiment: vacuum stays even forever.
    auto space = make_cavity_space(8);
    QuantumState vac = fock_state(space, {0});
    EvolutionSpec spec;
    spec.collapse = {{annihilation(space, kCavity), 1.0 / ref.t1_c}};
    spec.t0 = 0.0;
    spec.t1 = 5.0 * ref.t1_c;
    QuantumState out = evolve(vac, spec);
    CHECK(out.expectation(parity_operator(space, kCavity)).real() ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("spam budget visibility") {
    // All channels off: visibility 1 within 1e-3.
    SpamBudgetResult clean =
        spam_error_budget(cxd{1.0, 0.0}, ref, ChannelToggles::none());
    CHECK(clean.visibility == doctest::Approx(1.0).epsilon(1e-3));

    // Readout flips alone scale the correlator by (2F-1)^2.
    ChannelToggles ro = ChannelToggles::none();
    ro.readout_flip = true;
    ro.readout_fidelity = 0.95;
    SpamBudgetResult flipped = spam_error_budget(cxd{1.0, 0.0}, ref, ro);
    CHECK(flipped.visibility == doctest::Approx(0.81).epsilon(0.01));

    // Transmon decoherence costs visibility.
    ChannelToggles transmon = ChannelToggles::none();
    transmon.transmon_decay = true;
    transmon.transmon_dephasing = true;
    SpamBudgetResult noisy = spam_error_budget(cxd{1.0, 0.0}, ref, transmon);
    CHECK(noisy.visibility < 0.9);
    CHECK(noisy.visibility > 0.2);

    CHECK_THROWS_AS(spam_error_budget(cxd{5.0, 0.0}, ref, ChannelToggles::none()),
                    validation_error);
}
