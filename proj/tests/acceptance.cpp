// Acceptance suite: one pass/fail line per criterion, each evaluated at its
// stated tolerance against the reference-device values. Exits nonzero if any
// criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "cavitysim/experiments.hpp"
#include "cavitysim/loss_budget.hpp"
#include "cavitysim/models.hpp"
#include "cavitysim/reports.hpp"

using namespace cavitysim;

namespace {

const SystemParams ref = SystemParams::reference();

struct Criterion {
    int id;
    std::string name;
    std::function<bool(std::ostringstream&)> run;
    double runtime_limit_s = 0.0; // 0: no stated limit
};

bool within(double value, double target, double rel_tol) {
    return std::abs(value - target) <= rel_tol * std::abs(target);
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

std::vector<double> linspace(double a, double b, int n) {
    std::vector<double> x(n);
    for (int i = 0; i < n; ++i) x[i] = a + (b - a) * i / (n - 1);
    return x;
}

// ---------------------------------------------------------------------------

bool criterion_loss_budget(std::ostringstream& out) {
    LossBudget b =
        assemble_budget(CavityGeometry::reference(), MaterialParams::reference());
    auto channel = [&](const std::string& name) -> const LossChannel& {
        for (const LossChannel& ch : b.channels)
            if (ch.name == name) return ch;
        throw validation_error("missing channel " + name);
    };

    bool ok = true;
    const struct {
        const char* name;
        double table_hz;
    } ten_percent[] = {{"surface_oxides", 0.60},
                       {"inverse_purcell", 0.57},
                       {"substrate_bulk", 2.7e-2},
                       {"chip_surfaces", 2.9e-2},
                       {"magnetic_vortices", 2.0e-4}};
    for (const auto& row : ten_percent) {
        const double got = channel(row.name).kappa_over_2pi_hz();
        const bool pass = within(got, row.table_hz, 0.10);
        ok &= pass;
        out << row.name << "=" << got << "Hz(ref " << row.table_hz << ") ";
    }

    const double seam = channel("seam").kappa_over_2pi_hz();
    const bool seam_ok = seam / 7.5e-4 <= 2.0 && 7.5e-4 / seam <= 2.0;
    ok &= seam_ok;
    out << "seam=" << seam << "Hz(ref 7.5e-4, factor "
        << (seam > 7.5e-4 ? seam / 7.5e-4 : 7.5e-4 / seam) << ") ";

    const double lifetime = b.total_lifetime_s();
    ok &= within(lifetime, 0.120, 0.10);
    out << "total_lifetime=" << lifetime << "s(ref 0.120)";
    return ok;
}

bool criterion_ringdown(std::ostringstream& out) {
    RingdownReport r = ringdown_conversions(ref.omega_c, 0.110, 1.3e10);
    const bool q_ok = within(r.q_loaded, 3.0e9, 0.02);
    const bool tau_ok = within(r.tau_intrinsic, 0.14, 0.05);
    out << "Q=" << r.q_loaded << "(ref 3.0e9, 2%) tau_int=" << r.tau_intrinsic
        << "s(ref 0.14, 5%)";
    return q_ok && tau_ok;
}

bool criterion_t1_t2(std::ostringstream& out) {
    MemoryExperimentOptions opts; // cavity dim 4, transmon dim 3, noisy

    ExperimentResult t1 = measure_t1_experiment(ref, linspace(0.0, 0.1, 26), opts);
    FitResult t1_fit = fit_exponential(to_vec(t1.sweep), to_vec(t1.observable));
    const double t1_rec = t1_fit.param("tau");
    const bool t1_ok = t1_fit.converged && within(t1_rec, 25.6e-3, 0.02);

    ExperimentResult t2 =
        measure_t2_experiment(ref, linspace(0.0, 0.1, 41), 60.0, opts);
    FitResult t2_fit = fit_exp_cos(to_vec(t2.sweep), to_vec(t2.observable));
    const double t2_rec = t2_fit.param("tau");
    const bool t2_ok = t2_fit.converged && t2_rec >= 31e-3 && t2_rec <= 35e-3;

    out << "T1=" << t1_rec * 1e3 << "ms(ref 25.6, 2%) T2=" << t2_rec * 1e3
        << "ms(window [31,35])";
    return t1_ok && t2_ok;
}

bool criterion_cooldown_t2(std::ostringstream& out) {
    const double targets[] = {1.2e-3, 1.2e-3, 34e-3};
    auto rows = reference_cooldowns();
    bool ok = true;
    for (size_t i = 0; i < rows.size(); ++i) {
        const double predicted = predicted_t2_from_thermal(rows[i]);
        const bool pass = within(predicted, targets[i], 0.15);
        ok &= pass;
        out << rows[i].name << "=" << predicted * 1e3 << "ms(ref "
            << targets[i] * 1e3 << ", 15%" << (pass ? "" : " MISS") << ") ";
    }
    return ok;
}

bool criterion_cat_decoherence(std::ostringstream& out) {
    bool ok = true;
    double num = 0.0, den = 0.0;
    for (double s : {4.0, 16.0, 36.0, 64.0}) {
        const cxd alpha{0.5 * std::sqrt(s), 0.0};
        CatDecoherenceOptions opts; // full integrator idle
        std::vector<double> delays = cat_decoherence_delays(alpha, ref, 10);
        CatDecoherenceResult r = cat_decoherence_experiment(alpha, ref, delays, opts);
        const double rate = 1.0 / r.t_d;
        const double model = s / (2.0 * ref.t1_c);
        const bool pass = r.fit.converged && within(rate, model, 0.10);
        ok &= pass;
        out << "S=" << s << ":" << rate << "/s(model " << model << ")"
            << (pass ? " " : " MISS ");
        num += s * rate;
        den += s * s;
    }
    const double slope = num / den;
    const double extrapolated = 1.0 / (slope * 1024.0);
    const bool extrap_ok = within(extrapolated, 50e-6, 0.10);
    ok &= extrap_ok;
    out << "extrapolated_Td(1024)=" << extrapolated * 1e6
        << "us(model 50, measured band 54+-10)";
    return ok;
}

bool criterion_cat_size_fit(std::ostringstream& out) {
    bool ok = true;
    ParityOptions popts; // ideal
    for (double s : {16.0, 64.0, 144.0}) {
        const cxd alpha{0.5 * std::sqrt(s), 0.0};
        CatPrepResult cat = prepare_cat(alpha, ref, popts, +1);
        std::vector<double> ys = linspace(-1.2, 1.2, 241);
        ExperimentResult cut = wigner_cut_experiment(cat.state, ref, ys, popts);
        CatCutFit fit = fit_cat_cut(to_vec(cut.sweep), to_vec(cut.observable));
        const double fringe = std::abs(fit.fit.param("fringe_rate"));
        const bool pass = fit.fit.converged && within(fit.cat_size, s, 0.01) &&
                          within(fringe, 2.0 * std::sqrt(s), 0.01);
        ok &= pass;
        out << "S=" << s << ":fit " << fit.cat_size << ",fringe " << fringe
            << (pass ? " " : " MISS ");
    }

    // Vacuum calibration: fitted sigma = 0.5 +- 0.005.
    auto space = make_cavity_space(24);
    QuantumState vac = fock_state(space, {0});
    std::vector<double> ys = linspace(-1.5, 1.5, 121);
    ExperimentResult cut = wigner_cut_experiment(vac, ref, ys, popts);
    FitResult g = fit_gaussian(to_vec(cut.sweep), to_vec(cut.observable));
    const double sigma = std::abs(g.param("sigma"));
    const bool vac_ok = g.converged && std::abs(sigma - 0.5) <= 0.005;
    ok &= vac_ok;
    out << "vacuum_sigma=" << sigma << "(0.5 +- 0.005)";
    return ok;
}

bool criterion_sideband(std::ostringstream& out) {
    SidebandOptions square;
    square.ramp = 0.0;
    const double t_pi = std::numbers::pi / square.omega_sideband;

    // Swap-time: peak of the square-pulse sweep, refined by a parabola
    // through the best samples.
    std::vector<double> durations = linspace(0.9 * t_pi, 1.1 * t_pi, 41);
    ExperimentResult sweep = sideband_swap_sweep(ref, durations, square);
    int imax = 1;
    for (size_t i = 1; i + 1 < sweep.observable.size(); ++i)
        if (sweep.observable[i] > sweep.observable[imax]) imax = static_cast<int>(i);
    const double h = durations[1] - durations[0];
    const double ym = sweep.observable[imax - 1], y0 = sweep.observable[imax],
                 yp = sweep.observable[imax + 1];
    const double shift = 0.5 * (ym - yp) / (ym - 2.0 * y0 + yp);
    const double t_peak = durations[imax] + shift * h;
    const bool time_ok = within(t_peak, 1.05e-6, 0.01);

    // Noiseless encode fidelity (default ramped pulse).
    QuantumState clean = encode_qubit(0.0, 1.0, ref);
    const double f_clean = clean.fidelity_to(fock_state(clean.space(), {1, 0}));
    const bool clean_ok = f_clean >= 0.999;

    SidebandOptions noisy;
    noisy.with_noise = true;
    QuantumState hot = encode_qubit(0.0, 1.0, ref, noisy);
    const double f_noisy = hot.fidelity_to(fock_state(hot.space(), {1, 0}));
    const bool noisy_ok = std::abs(f_noisy - 0.98) <= 0.01;

    out << "t_pi=" << t_peak * 1e6 << "us(ref 1.05, 1%) F_clean=" << f_clean
        << "(>=0.999) F_noisy=" << f_noisy << "(0.98 +- 0.01)";
    return time_ok && clean_ok && noisy_ok;
}

bool criterion_parity_calibration(std::ostringstream& out) {
    const double chi = ref.chi;
    ParityOptions opts;
    opts.mode = ParityMode::simulated;
    std::vector<double> grid = linspace(13.0 * chi, 19.0 * chi, 241);
    ParityCalibrationResult cal =
        calibrate_parity_drive(ref, cxd{4.0, 0.0}, grid, opts);

    const double nu = std::abs(cal.cosine_fit.param("nu"));
    const bool period_ok = cal.cosine_fit.converged && within(nu, chi / two_pi, 0.01);
    const double miss = std::abs(cal.optimal_detuning - 16.0 * chi);
    const bool optimum_ok = miss <= 0.25 * chi;
    out << "period=" << nu * two_pi / two_pi << "rad/s as nu(ref " << chi / two_pi
        << ", 1%) optimum_miss=" << miss / chi << "*chi(<=0.25)";
    return period_ok && optimum_ok;
}

bool criterion_spam(std::ostringstream& out) {
    const std::vector<double> nbars = {1.0, 4.0, 9.0, 16.0};

    ChannelToggles transmon = ChannelToggles::none();
    transmon.transmon_decay = true;
    transmon.transmon_dephasing = true;
    ChannelToggles cavity = ChannelToggles::none();
    cavity.cavity_loss = true;

    std::vector<double> transmon_loss, cavity_loss;
    for (double nbar : nbars) {
        const cxd alpha{std::sqrt(nbar), 0.0};
        transmon_loss.push_back(
            1.0 - spam_error_budget(alpha, ref, transmon).visibility);
        cavity_loss.push_back(1.0 - spam_error_budget(alpha, ref, cavity).visibility);
    }

    double lo = transmon_loss[0], hi = transmon_loss[0], mean = 0.0;
    for (double v : transmon_loss) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
        mean += v / transmon_loss.size();
    }
    const double variation = (hi - lo) / mean;
    const bool transmon_ok = variation < 0.10;

    bool cavity_ok = true;
    for (size_t i = 1; i < cavity_loss.size(); ++i)
        cavity_ok &= cavity_loss[i] > cavity_loss[i - 1];

    out << "transmon_loss={";
    for (double v : transmon_loss) out << v << ",";
    out << "} rel_variation=" << variation << "(<0.10) cavity_loss={";
    for (double v : cavity_loss) out << v << ",";
    out << "} strictly_increasing=" << (cavity_ok ? "yes" : "no");
    return transmon_ok && cavity_ok;
}

bool criterion_oracle_equivalence(std::ostringstream& out) {
    // Damped coherent state against n0 e^{-t/T1} to 0.1% over 3 lifetimes.
    auto space = make_cavity_space(26);
    QuantumState coh = coherent_state(space, kCavity, cxd{2.0, 0.0});
    EvolutionSpec spec;
    spec.collapse = {{annihilation(space, kCavity), 1.0 / ref.t1_c}};
    spec.t0 = 0.0;
    spec.t1 = 3.0 * ref.t1_c;
    Trajectory traj;
    std::vector<double> samples = linspace(0.0, spec.t1, 13);
    evolve_sampled(coh, spec, samples, {number_operator(space, kCavity)}, traj);
    double worst = 0.0;
    for (size_t i = 0; i < samples.size(); ++i) {
        const double expected = 4.0 * std::exp(-samples[i] / ref.t1_c);
        worst = std::max(worst,
                         std::abs(traj.values(static_cast<long>(i), 0) - expected) /
                             expected);
    }
    const bool decay_ok = worst < 1e-3;

    // Simulated vs ideal parity post-states (noiseless) at nbar = 4.
    auto qspace = make_cavity_transmon_space(guarded_dim(4.0), 3);
    QuantumState c2 = coherent_state(qspace, kCavity, cxd{2.0, 0.0});
    ParityOptions sim;
    sim.mode = ParityMode::simulated;
    ParityBranches simulated = parity_branches(c2, ref, sim);
    ParityBranches ideal = parity_branches(c2, ref, {});
    const double f_even =
        simulated.even.post_state.fidelity_to(ideal.even.post_state);
    const double f_odd = simulated.odd.post_state.fidelity_to(ideal.odd.post_state);
    const bool parity_ok = f_even >= 0.999 && f_odd >= 0.999;

    out << "decay_worst_rel=" << worst << "(<1e-3) parity_fidelity_even=" << f_even
        << " odd=" << f_odd << "(>=0.999)";
    return decay_ok && parity_ok;
}

bool criterion_kerr(std::ostringstream& out) {
    KerrEstimates k = kerr_estimates(ref, 256.0);
    const bool ncrit_ok = std::abs(k.n_crit - 579.0) <= 1.0;
    const bool tgate_ok = within(k.t_gate_min, 0.2e-6, 0.10);
    const bool tcol_ok = within(k.t_collapse, 4.3e-3, 0.10);
    out << "n_crit=" << k.n_crit << "(579 +- 1) T_g_min=" << k.t_gate_min * 1e6
        << "us(ref 0.2, 10%" << (tgate_ok ? "" : " MISS") << ") T_col="
        << k.t_collapse * 1e3 << "ms(ref 4.3, 10%)";
    return ncrit_ok && tgate_ok && tcol_ok;
}

} // namespace

int main() {
    std::vector<Criterion> criteria = {
        {1, "loss budget", criterion_loss_budget, 1.0},
        {2, "ring-down arithmetic", criterion_ringdown, 1.0},
        {3, "T1/T2 round trip", criterion_t1_t2, 120.0},
        {4, "thermal-dephasing cross-cooldown check", criterion_cooldown_t2, 1.0},
        {5, "cat decoherence law", criterion_cat_decoherence, 600.0},
        {6, "cat-size fitting", criterion_cat_size_fit, 0.0},
        {7, "sideband encoding", criterion_sideband, 0.0},
        {8, "parity calibration", criterion_parity_calibration, 0.0},
        {9, "SPAM error budget", criterion_spam, 0.0},
        {10, "oracle equivalence", criterion_oracle_equivalence, 0.0},
        {11, "Kerr and critical estimates", criterion_kerr, 0.0},
    };

    int failures = 0;
    for (const Criterion& c : criteria) {
        std::ostringstream detail;
        bool pass = false;
        std::string error;
        const auto start = std::chrono::steady_clock::now();
        try {
            pass = c.run(detail);
        } catch (const std::exception& ex) {
            error = ex.what();
        }
        const double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
                .count();
        if (c.runtime_limit_s > 0.0 && elapsed > c.runtime_limit_s) {
            pass = false;
            detail << " [runtime " << elapsed << "s exceeds " << c.runtime_limit_s
                   << "s]";
        }
        if (!error.empty()) {
            pass = false;
            detail << " [exception: " << error << "]";
        }
        if (!pass) ++failures;
        std::printf("[%s] criterion %2d: %s (%.2fs) %s\n", pass ? "PASS" : "FAIL",
                    c.id, c.name.c_str(), elapsed, detail.str().c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
