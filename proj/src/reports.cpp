#include "cavitysim/reports.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "cavitysim/errors.hpp"

namespace cavitysim {

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_csv(const std::string& path, const CsvTable& table) {
    if (table.headers.empty() || table.headers.size() != table.columns.size())
        throw validation_error("write_csv: header/column mismatch");
    const size_t rows = table.columns.front().size();
    for (const auto& col : table.columns)
        if (col.size() != rows) throw validation_error("write_csv: ragged columns");

    std::ostringstream out;
    for (size_t c = 0; c < table.headers.size(); ++c) {
        if (c) out << ',';
        out << table.headers[c];
    }
    out << '\n';
    for (size_t r = 0; r < rows; ++r) {
        for (size_t c = 0; c < table.columns.size(); ++c) {
            if (c) out << ',';
            out << format_double(table.columns[c][r]);
        }
        out << '\n';
    }
    write_text(path, out.str());
}

CsvTable read_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw validation_error("read_csv: cannot open " + path);
    CsvTable table;
    std::string line;
    if (!std::getline(in, line))
        throw validation_error("read_csv: missing header row in " + path);
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) table.headers.push_back(cell);
    table.columns.resize(table.headers.size());
    size_t row = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::stringstream fields(line);
        size_t c = 0;
        while (std::getline(fields, cell, ',')) {
            if (c >= table.columns.size())
                throw validation_error("read_csv: too many fields at row " +
                                       std::to_string(row));
            table.columns[c].push_back(std::stod(cell));
            ++c;
        }
        if (c != table.columns.size())
            throw validation_error("read_csv: short row " + std::to_string(row));
        ++row;
    }
    return table;
}

CsvTable series_table(const ExperimentResult& result) {
    CsvTable t;
    t.headers = {result.sweep_name, result.observable_name};
    t.columns = {result.sweep, result.observable};
    return t;
}

Json fit_report(const FitResult& fit) {
    Json j;
    j["model"] = fit.model;
    j["converged"] = fit.converged;
    j["residual_rms"] = fit.residual_rms;
    j["iterations"] = fit.iterations;
    Json params = Json::object();
    for (size_t i = 0; i < fit.param_names.size(); ++i) {
        Json entry;
        entry["value"] = fit.params(static_cast<long>(i));
        entry["sigma"] = fit.sigmas(static_cast<long>(i));
        params[fit.param_names[i]] = entry;
    }
    j["parameters"] = params;
    return j;
}

Json budget_report(const LossBudget& budget) {
    Json j;
    Json channels = Json::array();
    for (const LossChannel& ch : budget.channels) {
        Json row;
        row["channel"] = ch.name;
        row["mitigation"] = ch.mitigation;
        row["kappa_over_2pi_hz"] = ch.kappa_over_2pi_hz();
        row["lifetime_s"] = ch.lifetime_s();
        channels.push_back(row);
    }
    j["channels"] = channels;
    j["total_kappa_over_2pi_hz"] = budget.total_kappa_over_2pi_hz();
    j["total_lifetime_s"] = budget.total_lifetime_s();
    return j;
}

Json experiment_meta(const ExperimentResult& result) {
    Json j;
    j["sweep"] = result.sweep_name;
    j["observable"] = result.observable_name;
    j["points"] = result.sweep.size();
    Json numbers = Json::object();
    for (const auto& [k, v] : result.meta.numbers) numbers[k] = v;
    j["numbers"] = numbers;
    Json notes = Json::object();
    for (const auto& [k, v] : result.meta.notes) notes[k] = v;
    j["notes"] = notes;
    return j;
}

void write_text(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw error("write_text: cannot open " + path);
    out << text;
    if (!out) throw error("write_text: failed writing " + path);
}

std::string read_text(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error("read_text: cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_json(const std::string& path, const Json& j) {
    write_text(path, j.dump(2) + "\n");
}

Json read_json(const std::string& path) {
    return Json::parse(read_text(path));
}

std::uint64_t fnv1a(const std::string& text) {
    std::uint64_t hash = 1469598103934665603ull;
    for (unsigned char c : text) {
        hash ^= c;
        hash *= 1099511628211ull;
    }
    return hash;
}

Json make_manifest(const std::string& config_text, std::uint64_t seed,
                   const std::vector<std::string>& files) {
    Json j;
    j["version"] = kToolVersion;
    j["config_fnv1a"] = fnv1a(config_text);
    j["seed"] = seed;
    j["files"] = files;
    return j;
}

} // namespace cavitysim
