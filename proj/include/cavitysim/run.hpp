#pragma once

#include <string>
#include <vector>

#include "cavitysim/config.hpp"

namespace cavitysim {

struct RunOutcome {
    std::vector<std::string> files;
};

/// Executes the configured experiment and writes series files, fit reports
/// and a manifest into the output directory. Outputs are bit-identical for
/// identical config text and seed.
RunOutcome run_config(const RunConfig& cfg, const std::string& out_dir_override = "");

/// Canned configurations for the bundled reference results.
/// Targets: fig2, fig3, fig4, fig5, table1, table3, table4, appendixD, appendixH.
std::string canned_config(const std::string& target);
RunOutcome reproduce(const std::string& target, const std::string& out_dir,
                     int threads = 1, std::uint64_t seed = 0,
                     double tolerance_scale = 1.0);

} // namespace cavitysim
