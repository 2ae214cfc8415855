#include "cavitysim/run.hpp"

#include <cmath>
#include <filesystem>
#include <random>

#include "cavitysim/experiments.hpp"
#include "cavitysim/models.hpp"
#include "cavitysim/reports.hpp"
#include "cavitysim/threading.hpp"

namespace cavitysim {

namespace {

namespace fs = std::filesystem;

struct RunContext {
    const RunConfig& cfg;
    fs::path dir;
    std::vector<std::string> files;

    std::string path(const std::string& name) {
        files.push_back(name);
        return (dir / name).string();
    }
    double rel_tol() const { return 1e-8 * cfg.tolerance_scale; }
    double abs_tol() const { return 1e-10 * cfg.tolerance_scale; }
};

std::vector<double> sweep_values(const Json& exp, const std::string& list_key,
                                 const std::string& max_key, double fallback_max,
                                 int fallback_points) {
    if (exp.contains(list_key)) {
        std::vector<double> values;
        for (const auto& v : exp[list_key]) values.push_back(v.get<double>());
        if (values.size() < 2)
            throw validation_error("config: experiment." + list_key +
                                   " needs at least 2 entries");
        return values;
    }
    const double max = number_or(exp, max_key, fallback_max);
    const int points = static_cast<int>(number_or(exp, "points", fallback_points));
    if (points < 2)
        throw validation_error("config: experiment.points must be >= 2");
    std::vector<double> values(points);
    for (int i = 0; i < points; ++i)
        values[i] = max * static_cast<double>(i) / (points - 1);
    return values;
}

/// Synthetic measurement noise, seeded; zero sigma leaves data untouched.
void inject_noise(std::vector<double>& y, double sigma, std::uint64_t seed) {
    if (sigma <= 0.0) return;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, sigma);
    for (double& v : y) v += dist(rng);
}

Eigen::VectorXd to_vec(const std::vector<double>& v) {
    return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<long>(v.size()));
}

// ---------------------------------------------------------------------------
// Experiment handlers
// ---------------------------------------------------------------------------

void run_ringdown(RunContext& ctx) {
    const Json& exp = ctx.cfg.experiment;
    const double tau = require_number(exp, "tau_loaded_s");
    const double q_ext = require_number(exp, "q_ext");
    RingdownReport r = ringdown_conversions(ctx.cfg.device.omega_c, tau, q_ext);
    Json j;
    j["tau_loaded_s"] = tau;
    j["q_loaded"] = r.q_loaded;
    j["q_ext"] = q_ext;
    j["tau_ext_s"] = r.tau_ext;
    j["tau_intrinsic_s"] = r.tau_intrinsic;
    j["q_intrinsic"] = r.q_intrinsic;
    write_json(ctx.path("ringdown.json"), j);
}

void run_budget(RunContext& ctx) {
    LossBudget budget = assemble_budget(ctx.cfg.geometry, ctx.cfg.material);
    write_json(ctx.path("budget.json"), budget_report(budget));

    CsvTable t;
    t.headers = {"kappa_over_2pi_hz", "lifetime_s"};
    t.columns.resize(2);
    for (const LossChannel& ch : budget.channels) {
        t.columns[0].push_back(ch.kappa_over_2pi_hz());
        t.columns[1].push_back(ch.lifetime_s());
    }
    t.columns[0].push_back(budget.total_kappa_over_2pi_hz());
    t.columns[1].push_back(budget.total_lifetime_s());
    write_csv(ctx.path("budget.csv"), t);
}

void run_device_table(RunContext& ctx) {
    const SystemParams& p = ctx.cfg.device;
    Json j;
    j["omega_c_over_2pi_hz"] = p.omega_c / two_pi;
    j["kerr_c_over_2pi_hz"] = p.kerr_c / two_pi;
    j["t1_c_s"] = p.t1_c;
    j["t2_c_s"] = p.t2_c;
    j["nth_c"] = p.nth_c;
    j["omega_q_over_2pi_hz"] = p.omega_q / two_pi;
    j["kerr_q_over_2pi_hz"] = p.kerr_q / two_pi;
    j["t1_q_s"] = p.t1_q;
    j["t2_q_s"] = p.t2_q;
    j["t2e_q_s"] = p.t2e_q;
    j["nth_q"] = p.nth_q;
    j["t1_f_q_s"] = p.t1_f_q;
    j["t2_gf_q_s"] = p.t2_gf_q;
    j["chi_over_2pi_hz"] = p.chi / two_pi;
    j["omega_r_over_2pi_hz"] = p.omega_r / two_pi;
    j["kerr_r_over_2pi_hz"] = p.kerr_r / two_pi;
    j["t1_r_s"] = p.t1_r;
    j["chi_qr_over_2pi_hz"] = p.chi_qr / two_pi;
    j["chi_cr_over_2pi_hz"] = p.chi_cr / two_pi;
    write_json(ctx.path("device.json"), j);
}

void run_cooldown_t2(RunContext& ctx) {
    Json rows = Json::array();
    CsvTable t;
    t.headers = {"nth_q", "predicted_t2_s", "measured_t2_s"};
    t.columns.resize(3);
    for (const CooldownRow& row : reference_cooldowns()) {
        const double predicted = predicted_t2_from_thermal(row);
        Json r;
        r["name"] = row.name;
        r["nth_q"] = row.nth_q;
        r["gamma_down_over_2pi_hz"] = row.gamma_down_q / two_pi;
        r["chi_over_2pi_hz"] = row.chi / two_pi;
        r["t1_c_s"] = row.t1_c;
        r["predicted_t2_s"] = predicted;
        r["measured_t2_s"] = row.measured_t2_c;
        rows.push_back(r);
        t.columns[0].push_back(row.nth_q);
        t.columns[1].push_back(predicted);
        t.columns[2].push_back(row.measured_t2_c);
    }
    Json j;
    j["cooldowns"] = rows;
    write_json(ctx.path("cooldown_t2.json"), j);
    write_csv(ctx.path("cooldown_t2.csv"), t);
}

void run_thermal_dephasing_curve(RunContext& ctx) {
    const Json& exp = ctx.cfg.experiment;
    const double chi = two_pi * number_or(exp, "chi_over_2pi_hz", 42e3);
    const double gamma_down =
        two_pi * number_or(exp, "gamma_down_over_2pi_hz", 1.45e3);
    const int points = static_cast<int>(number_or(exp, "points", 61));
    const double nth_max = number_or(exp, "nth_max", 0.1);

    CsvTable t;
    t.headers = {"nth_q", "gamma_phi_per_s", "slow_jump_limit_per_s"};
    t.columns.resize(3);
    for (int i = 0; i < points; ++i) {
        const double nth = nth_max * static_cast<double>(i) / (points - 1);
        t.columns[0].push_back(nth);
        t.columns[1].push_back(thermal_dephasing_rate(chi, gamma_down, nth));
        t.columns[2].push_back(nth * gamma_down);
    }
    write_csv(ctx.path("thermal_dephasing.csv"), t);
}

MemoryExperimentOptions memory_options(RunContext& ctx) {
    MemoryExperimentOptions opts;
    opts.cavity_dim =
        static_cast<int>(number_or(ctx.cfg.experiment, "cavity_dim", 4));
    opts.with_noise = number_or(ctx.cfg.experiment, "with_noise", 1.0) != 0.0;
    opts.rel_tol = ctx.rel_tol();
    opts.abs_tol = ctx.abs_tol();
    opts.sideband.rel_tol = ctx.rel_tol();
    opts.sideband.abs_tol = ctx.abs_tol();
    return opts;
}

void run_t1(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    std::vector<double> delays = sweep_values(exp, "delays_s", "delay_max_s", 0.1, 26);
    ExperimentResult result =
        measure_t1_experiment(ctx.cfg.device, delays, memory_options(ctx));
    inject_noise(result.observable, number_or(exp, "noise_sigma", 0.0), ctx.cfg.seed);
    write_csv(ctx.path(stem + ".csv"), series_table(result));
    FitResult fit = fit_exponential(to_vec(result.sweep), to_vec(result.observable));
    write_json(ctx.path(stem + "_fit.json"), fit_report(fit));
}

void run_t2(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    std::vector<double> delays = sweep_values(exp, "delays_s", "delay_max_s", 0.1, 41);
    const double fringe = number_or(exp, "fringe_detuning_hz", 60.0);
    ExperimentResult result =
        measure_t2_experiment(ctx.cfg.device, delays, fringe, memory_options(ctx));
    inject_noise(result.observable, number_or(exp, "noise_sigma", 0.0),
                 ctx.cfg.seed + 1);
    write_csv(ctx.path(stem + ".csv"), series_table(result));
    FitResult fit = fit_exp_cos(to_vec(result.sweep), to_vec(result.observable));
    write_json(ctx.path(stem + "_fit.json"), fit_report(fit));
}

void run_wigner_cut(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    const double s = require_number(exp, "cat_size");
    const int sign = static_cast<int>(number_or(exp, "parity", 1.0));
    const int points = static_cast<int>(number_or(exp, "points", 241));
    const double y_max = number_or(exp, "y_max", 1.5);
    const bool analytic = number_or(exp, "analytic", s > 256.0 ? 1.0 : 0.0) != 0.0;

    ExperimentResult result;
    result.sweep_name = "imag_axis_displacement";
    result.observable_name = "displaced_parity";
    if (analytic) {
        for (int i = 0; i < points; ++i) {
            const double y = -y_max + 2.0 * y_max * i / (points - 1);
            result.sweep.push_back(y);
            result.observable.push_back(ideal_cat_wigner_cut(s, sign, y));
        }
    } else {
        const double alpha = 0.5 * std::sqrt(s);
        ParityOptions popts;
        popts.rel_tol = ctx.rel_tol();
        popts.abs_tol = ctx.abs_tol();
        CatPrepResult cat = prepare_cat(alpha, ctx.cfg.device, popts, sign);
        std::vector<double> ys(points);
        for (int i = 0; i < points; ++i)
            ys[i] = -y_max + 2.0 * y_max * i / (points - 1);
        result = wigner_cut_experiment(cat.state, ctx.cfg.device, ys, popts);
    }
    result.meta.numbers["cat_size"] = s;
    inject_noise(result.observable, number_or(exp, "noise_sigma", 0.0), ctx.cfg.seed);
    write_csv(ctx.path(stem + ".csv"), series_table(result));

    CatCutFit fit = fit_cat_cut(to_vec(result.sweep), to_vec(result.observable));
    Json j = fit_report(fit.fit);
    j["cat_size"] = fit.cat_size;
    j["cat_size_sigma"] = fit.cat_size_sigma;
    write_json(ctx.path(stem + "_fit.json"), j);
}

void run_cat_decoherence(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    std::vector<double> sizes;
    if (exp.contains("cat_sizes"))
        for (const auto& v : exp["cat_sizes"]) sizes.push_back(v.get<double>());
    else
        sizes = {4.0, 16.0, 36.0, 64.0};
    const int points = static_cast<int>(number_or(exp, "points", 10));

    CatDecoherenceOptions opts;
    opts.rel_tol = ctx.rel_tol();
    opts.abs_tol = ctx.abs_tol();
    opts.parity.rel_tol = ctx.rel_tol();
    opts.parity.abs_tol = ctx.abs_tol();

    CsvTable summary;
    summary.headers = {"cat_size", "fitted_rate_per_s", "model_rate_per_s"};
    summary.columns.resize(3);

    for (double s : sizes) {
        const cxd alpha{0.5 * std::sqrt(s), 0.0};
        std::vector<double> delays =
            cat_decoherence_delays(alpha, ctx.cfg.device, points);
        CatDecoherenceResult r =
            cat_decoherence_experiment(alpha, ctx.cfg.device, delays, opts);
        const std::string size_stem =
            stem + "_s" + std::to_string(static_cast<int>(std::lround(s)));
        write_csv(ctx.path(size_stem + ".csv"), series_table(r.fringe));
        summary.columns[0].push_back(s);
        summary.columns[1].push_back(1.0 / r.t_d);
        summary.columns[2].push_back(s / (2.0 * ctx.cfg.device.t1_c));
    }
    write_csv(ctx.path(stem + "_rates.csv"), summary);

    const double extrapolate = number_or(exp, "extrapolate_size", 1024.0);
    // Slope of the fitted rates against size, through the origin.
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < summary.columns[0].size(); ++i) {
        num += summary.columns[0][i] * summary.columns[1][i];
        den += summary.columns[0][i] * summary.columns[0][i];
    }
    const double slope = num / den;
    Json j;
    j["rate_per_size_per_s"] = slope;
    j["model_rate_per_size_per_s"] = 0.5 / ctx.cfg.device.t1_c;
    j["extrapolated_size"] = extrapolate;
    j["extrapolated_t_d_s"] = 1.0 / (slope * extrapolate);
    write_json(ctx.path(stem + "_summary.json"), j);
}

void run_parity_calibration(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    const double nbar = number_or(exp, "nbar", 16.0);
    const cxd alpha{std::sqrt(nbar), 0.0};
    const double chi = ctx.cfg.device.chi;
    const double center = number_or(exp, "grid_center_rad_s", nbar * chi);
    const double half_span = number_or(exp, "grid_half_span_rad_s", 4.0 * chi);
    const int points = static_cast<int>(number_or(exp, "points", 161));

    std::vector<double> grid(points);
    for (int i = 0; i < points; ++i)
        grid[i] = center - half_span + 2.0 * half_span * i / (points - 1);

    ParityOptions popts;
    popts.mode = ParityMode::simulated;
    popts.rel_tol = ctx.rel_tol();
    popts.abs_tol = ctx.abs_tol();
    ParityCalibrationResult r =
        calibrate_parity_drive(ctx.cfg.device, alpha, grid, popts);

    write_csv(ctx.path(stem + ".csv"), series_table(r.curve));
    Json j = fit_report(r.cosine_fit);
    j["optimal_detuning_rad_s"] = r.optimal_detuning;
    j["optimal_detuning_over_2pi_hz"] = r.optimal_detuning / two_pi;
    j["stark_shift_rad_s"] = nbar * chi;
    write_json(ctx.path(stem + "_fit.json"), j);
}

void run_spam_budget(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    std::vector<double> nbars;
    if (exp.contains("nbars"))
        for (const auto& v : exp["nbars"]) nbars.push_back(v.get<double>());
    else
        nbars = {1.0, 4.0, 9.0, 16.0};

    struct Config {
        std::string name;
        ChannelToggles toggles;
    };
    std::vector<Config> configs;
    {
        Config none{"none", ChannelToggles::none()};
        Config transmon{"transmon", ChannelToggles::none()};
        transmon.toggles.transmon_decay = true;
        transmon.toggles.transmon_dephasing = true;
        Config cavity{"cavity", ChannelToggles::none()};
        cavity.toggles.cavity_loss = true;
        Config readout{"readout", ChannelToggles::none()};
        readout.toggles.readout_flip = true;
        readout.toggles.readout_fidelity =
            number_or(exp, "readout_fidelity", 0.95);
        Config all{"all", ChannelToggles::all()};
        all.toggles.readout_flip = true;
        all.toggles.readout_fidelity = readout.toggles.readout_fidelity;
        configs = {none, transmon, cavity, readout, all};
    }

    CsvTable t;
    t.headers = {"nbar", "visibility", "config_index"};
    t.columns.resize(3);
    Json rows = Json::array();
    for (size_t c = 0; c < configs.size(); ++c) {
        for (double nbar : nbars) {
            SpamBudgetResult r =
                spam_error_budget(cxd{std::sqrt(nbar), 0.0}, ctx.cfg.device,
                                  configs[c].toggles, ctx.rel_tol(), ctx.abs_tol());
            t.columns[0].push_back(nbar);
            t.columns[1].push_back(r.visibility);
            t.columns[2].push_back(static_cast<double>(c));
            Json row;
            row["config"] = configs[c].name;
            row["nbar"] = nbar;
            row["visibility"] = r.visibility;
            rows.push_back(row);
        }
    }
    write_csv(ctx.path(stem + ".csv"), t);
    Json j;
    j["rows"] = rows;
    write_json(ctx.path(stem + ".json"), j);
}

void run_sideband_sweep(RunContext& ctx, const std::string& stem) {
    const Json& exp = ctx.cfg.experiment;
    SidebandOptions opts;
    opts.omega_sideband =
        two_pi * number_or(exp, "omega_sideband_over_2pi_hz", 476e3);
    opts.ramp = number_or(exp, "ramp_s", 0.0);
    opts.rel_tol = ctx.rel_tol();
    opts.abs_tol = ctx.abs_tol();
    const double t_pi = std::numbers::pi / opts.omega_sideband;
    const int points = static_cast<int>(number_or(exp, "points", 41));
    std::vector<double> durations(points);
    for (int i = 0; i < points; ++i)
        durations[i] = 2.0 * t_pi * i / (points - 1);
    ExperimentResult result = sideband_swap_sweep(ctx.cfg.device, durations, opts);
    write_csv(ctx.path(stem + ".csv"), series_table(result));
}

void run_kerr(RunContext& ctx) {
    const double nbar = number_or(ctx.cfg.experiment, "nbar", 256.0);
    KerrEstimates k = kerr_estimates(ctx.cfg.device, nbar);
    Json j;
    j["kerr_c_estimate_over_2pi_hz"] = k.kerr_c_estimate / two_pi;
    j["nbar"] = nbar;
    j["t_collapse_s"] = k.t_collapse;
    j["n_crit"] = k.n_crit;
    j["t_gate_min_s"] = k.t_gate_min;
    write_json(ctx.path("kerr.json"), j);
}

void run_fig4(RunContext& ctx) {
    for (double s : {128.0, 1024.0}) {
        Json exp;
        exp["name"] = "wigner_cut";
        exp["cat_size"] = s;
        exp["analytic"] = 1;
        exp["points"] = 481;
        exp["y_max"] = 1.5;
        RunConfig sub = ctx.cfg;
        sub.experiment = exp;
        RunContext sctx{sub, ctx.dir, {}};
        run_wigner_cut(sctx, "fig4_s" + std::to_string(static_cast<int>(s)));
        for (const auto& f : sctx.files) ctx.files.push_back(f);
    }
    // Desk-scale fully simulated companion cut.
    Json exp;
    exp["name"] = "wigner_cut";
    exp["cat_size"] = 64.0;
    exp["analytic"] = 0;
    exp["points"] = 181;
    exp["y_max"] = 1.2;
    RunConfig sub = ctx.cfg;
    sub.experiment = exp;
    RunContext sctx{sub, ctx.dir, {}};
    run_wigner_cut(sctx, "fig4_s64_simulated");
    for (const auto& f : sctx.files) ctx.files.push_back(f);
}

} // namespace

RunOutcome run_config(const RunConfig& cfg, const std::string& out_dir_override) {
    set_worker_threads(cfg.threads);
    RunContext ctx{cfg,
                   fs::path(out_dir_override.empty() ? cfg.output_dir
                                                     : out_dir_override),
                   {}};
    fs::create_directories(ctx.dir);

    const std::string name = cfg.experiment["name"].get<std::string>();
    if (name == "ringdown") {
        run_ringdown(ctx);
    } else if (name == "budget") {
        run_budget(ctx);
    } else if (name == "device_table") {
        run_device_table(ctx);
    } else if (name == "cooldown_t2") {
        run_cooldown_t2(ctx);
    } else if (name == "thermal_dephasing_curve") {
        run_thermal_dephasing_curve(ctx);
    } else if (name == "t1") {
        run_t1(ctx, "t1");
    } else if (name == "t2") {
        run_t2(ctx, "t2");
    } else if (name == "memory") {
        run_t1(ctx, "t1");
        run_t2(ctx, "t2");
    } else if (name == "wigner_cut") {
        run_wigner_cut(ctx, "wigner_cut");
    } else if (name == "cat_decoherence") {
        run_cat_decoherence(ctx, "cat_decoherence");
    } else if (name == "parity_calibration") {
        run_parity_calibration(ctx, "parity_calibration");
    } else if (name == "spam_budget") {
        run_spam_budget(ctx, "spam_budget");
    } else if (name == "sideband_sweep") {
        run_sideband_sweep(ctx, "sideband_sweep");
    } else if (name == "kerr") {
        run_kerr(ctx);
    } else if (name == "fig4") {
        run_fig4(ctx);
    } else {
        throw validation_error("config: unknown experiment.name '" + name + "'");
    }

    Json manifest = make_manifest(cfg.canonical_text, cfg.seed, ctx.files);
    write_json((ctx.dir / "manifest.json").string(), manifest);
    RunOutcome outcome;
    outcome.files = ctx.files;
    outcome.files.push_back("manifest.json");
    return outcome;
}

std::string canned_config(const std::string& target) {
    if (target == "fig2")
        return R"({"experiment":{"name":"ringdown","tau_loaded_s":0.110,"q_ext":1.3e10}})";
    if (target == "fig3")
        return R"({"experiment":{"name":"memory","delay_max_s":0.1,"points":26,"fringe_detuning_hz":60}})";
    if (target == "fig4") return R"({"experiment":{"name":"fig4"}})";
    if (target == "fig5")
        return R"({"experiment":{"name":"cat_decoherence","cat_sizes":[4,16,36,64],"points":10,"extrapolate_size":1024}})";
    if (target == "table1") return R"({"experiment":{"name":"device_table"}})";
    if (target == "table3") return R"({"experiment":{"name":"budget"}})";
    if (target == "table4") return R"({"experiment":{"name":"cooldown_t2"}})";
    if (target == "appendixD")
        return R"({"experiment":{"name":"thermal_dephasing_curve","chi_over_2pi_hz":42e3,"gamma_down_over_2pi_hz":1.45e3,"nth_max":0.08,"points":81}})";
    if (target == "appendixH")
        return R"({"experiment":{"name":"parity_calibration","nbar":16,"points":161}})";
    throw validation_error("reproduce: unknown target '" + target + "'");
}

RunOutcome reproduce(const std::string& target, const std::string& out_dir,
                     int threads, std::uint64_t seed, double tolerance_scale) {
    RunConfig cfg = parse_config(canned_config(target));
    cfg.threads = threads;
    cfg.seed = seed;
    cfg.tolerance_scale = tolerance_scale;
    cfg.output_dir = out_dir;
    return run_config(cfg);
}

} // namespace cavitysim
