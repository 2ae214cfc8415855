#pragma once

#include <vector>

#include "cavitysim/states.hpp"

namespace cavitysim {

/// W(beta) = c Tr[rho D(beta) P D(beta)^dag].
/// two_over_pi: c = 2/pi, integrates to 1 over the phase plane.
/// parity:      c = 1, values in [-1, 1] (displaced-parity readout units).
enum class WignerConvention { two_over_pi, parity };

/// Displaced-parity Wigner function of one subsystem on a list of phase-space
/// points. Each point must pass the truncation guard of the displacement.
std::vector<double> wigner(const QuantumState& state, const std::string& subsystem,
                           const std::vector<cxd>& points,
                           WignerConvention convention);

/// Single-point convenience overload.
double wigner_at(const QuantumState& state, const std::string& subsystem, cxd point,
                 WignerConvention convention);

} // namespace cavitysim
