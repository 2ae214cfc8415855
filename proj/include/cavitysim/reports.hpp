#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "cavitysim/fitting.hpp"
#include "cavitysim/loss_budget.hpp"
#include "cavitysim/protocols.hpp"

namespace cavitysim {

using Json = nlohmann::ordered_json;

/// Two-or-more column numeric series with a mandatory header row.
struct CsvTable {
    std::vector<std::string> headers;
    std::vector<std::vector<double>> columns;
};

/// Doubles are printed with 17 significant digits so outputs are bit-stable
/// and round-trip exactly.
std::string format_double(double v);

void write_csv(const std::string& path, const CsvTable& table);
CsvTable read_csv(const std::string& path);

CsvTable series_table(const ExperimentResult& result);

Json fit_report(const FitResult& fit);
Json budget_report(const LossBudget& budget);
Json experiment_meta(const ExperimentResult& result);

void write_text(const std::string& path, const std::string& text);
std::string read_text(const std::string& path);
void write_json(const std::string& path, const Json& j);
Json read_json(const std::string& path);

/// FNV-1a hash of the canonical config text, recorded in manifests.
std::uint64_t fnv1a(const std::string& text);

inline constexpr const char* kToolVersion = "cavitysim 0.1.0";

Json make_manifest(const std::string& config_text, std::uint64_t seed,
                   const std::vector<std::string>& files);

} // namespace cavitysim
