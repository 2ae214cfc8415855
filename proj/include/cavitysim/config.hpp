#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "cavitysim/loss_budget.hpp"
#include "cavitysim/system_params.hpp"

namespace cavitysim {

/// Parsed run configuration. Frequencies and rates are written in the config
/// with explicit units in the field names (..._over_2pi_hz, ..._s); values
/// are angular (rad/s) once parsed. Missing device/geometry/material blocks
/// fall back to the reference device.
struct RunConfig {
    SystemParams device;
    CavityGeometry geometry;
    MaterialParams material;
    nlohmann::ordered_json experiment; // validated by the dispatching runner
    std::string output_dir = ".";
    std::uint64_t seed = 0;
    int threads = 1;
    double tolerance_scale = 1.0;
    std::string canonical_text; // exact config text, hashed into the manifest
};

/// Throws config_error for malformed JSON and validation_error (with the
/// field path) for missing or out-of-range fields.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

SystemParams device_from_json(const nlohmann::ordered_json& block);
CavityGeometry geometry_from_json(const nlohmann::ordered_json& block);
MaterialParams material_from_json(const nlohmann::ordered_json& block);

/// Field access that reports the full dotted path on failure.
double require_number(const nlohmann::ordered_json& block, const std::string& path);
double number_or(const nlohmann::ordered_json& block, const std::string& path,
                 double fallback);

} // namespace cavitysim
