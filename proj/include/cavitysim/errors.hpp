#pragma once

#include <stdexcept>
#include <string>

namespace cavitysim {

struct error : std::runtime_error {
    explicit error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Bad inputs: unknown labels, incompatible spaces, invalid parameters.
struct validation_error : error {
    explicit validation_error(const std::string& msg) : error(msg) {}
};

/// Requested state would spill beyond the retained Fock levels.
struct truncation_error : validation_error {
    explicit truncation_error(const std::string& msg) : validation_error(msg) {}
};

/// Integrator or fitter failed to reach the requested accuracy.
struct convergence_error : error {
    explicit convergence_error(const std::string& msg) : error(msg) {}
};

struct config_error : error {
    explicit config_error(const std::string& msg) : error(msg) {}
};

} // namespace cavitysim
