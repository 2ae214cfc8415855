// Batch front end: run configured experiments, reproduce bundled reference
// results, evaluate loss budgets and fit series files.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "cavitysim/errors.hpp"
#include "cavitysim/reports.hpp"
#include "cavitysim/run.hpp"

namespace {

constexpr int kExitParse = 2;
constexpr int kExitValidation = 3;
constexpr int kExitRuntime = 4;

std::string default_out_dir() {
    const char* env = std::getenv("CAVITYSIM_OUT");
    return env && *env ? env : ".";
}

int do_fit(const std::string& model, const std::string& csv_path) {
    using namespace cavitysim;
    CsvTable table = read_csv(csv_path);
    if (table.columns.size() < 2)
        throw validation_error("fit: need a two-column series file");
    Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(
        table.columns[0].data(), static_cast<long>(table.columns[0].size()));
    Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(
        table.columns[1].data(), static_cast<long>(table.columns[1].size()));

    Json report;
    if (model == "exp") {
        report = fit_report(fit_exponential(x, y));
    } else if (model == "expcos") {
        report = fit_report(fit_exp_cos(x, y));
    } else if (model == "catcut") {
        CatCutFit fit = fit_cat_cut(x, y);
        report = fit_report(fit.fit);
        report["cat_size"] = fit.cat_size;
        report["cat_size_sigma"] = fit.cat_size_sigma;
    } else if (model == "cosine") {
        report = fit_report(fit_cosine(x, y));
    } else if (model == "gaussian") {
        report = fit_report(fit_gaussian(x, y));
    } else {
        throw validation_error("fit: unknown model '" + model +
                               "' (exp, expcos, catcut, cosine, gaussian)");
    }
    std::cout << report.dump(2) << "\n";
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Superconducting cavity qubit simulator and analysis toolkit"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    std::string out_dir = default_out_dir();
    std::uint64_t seed = 0;
    int threads = 1;
    double tolerance_scale = 1.0;
    app.add_option("--out", out_dir, "Output directory");
    app.add_option("--seed", seed, "Seed for synthetic measurement noise");
    app.add_option("--threads", threads, "Worker threads for sweep points");
    app.add_option("--tolerance-scale", tolerance_scale,
                   "Scale factor on integrator tolerances");

    std::string config_path;
    auto* run_cmd = app.add_subcommand("run", "Run a configured experiment");
    run_cmd->add_option("config", config_path, "JSON run configuration")->required();

    std::string target;
    auto* repro_cmd =
        app.add_subcommand("reproduce", "Run a canned reference configuration");
    repro_cmd->add_option("target", target,
                          "fig2|fig3|fig4|fig5|table1|table3|table4|appendixD|appendixH")
        ->required();

    std::string budget_config;
    auto* budget_cmd = app.add_subcommand("budget", "Evaluate the loss budget");
    budget_cmd->add_option("config", budget_config,
                           "JSON configuration (defaults to the reference device)");

    std::string fit_model, fit_csv;
    auto* fit_cmd = app.add_subcommand("fit", "Fit a two-column CSV series");
    fit_cmd->add_option("model", fit_model, "exp|expcos|catcut|cosine|gaussian")
        ->required();
    fit_cmd->add_option("csv", fit_csv, "Series file with a header row")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        using namespace cavitysim;
        if (run_cmd->parsed()) {
            RunConfig cfg = load_config(config_path);
            if (app.count("--seed")) cfg.seed = seed;
            if (app.count("--threads")) cfg.threads = threads;
            if (app.count("--tolerance-scale")) cfg.tolerance_scale = tolerance_scale;
            RunOutcome outcome = run_config(cfg, out_dir);
            for (const std::string& f : outcome.files) std::cout << f << "\n";
            return 0;
        }
        if (repro_cmd->parsed()) {
            RunOutcome outcome =
                reproduce(target, out_dir, threads, seed, tolerance_scale);
            for (const std::string& f : outcome.files) std::cout << f << "\n";
            return 0;
        }
        if (budget_cmd->parsed()) {
            RunConfig cfg;
            if (!budget_config.empty()) {
                cfg = load_config(budget_config);
            } else {
                cfg = parse_config(R"({"experiment":{"name":"budget"}})");
            }
            cfg.experiment["name"] = "budget";
            RunOutcome outcome = run_config(cfg, out_dir);
            for (const std::string& f : outcome.files) std::cout << f << "\n";
            return 0;
        }
        if (fit_cmd->parsed()) return do_fit(fit_model, fit_csv);
    } catch (const cavitysim::config_error& ex) {
        std::cerr << ex.what() << "\n";
        return kExitParse;
    } catch (const cavitysim::validation_error& ex) {
        std::cerr << ex.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& ex) {
        std::cerr << ex.what() << "\n";
        return kExitRuntime;
    }
    return 0;
}
