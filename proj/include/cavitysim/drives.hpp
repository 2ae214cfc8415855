#pragma once

#include "cavitysim/operators.hpp"
#include "cavitysim/system_params.hpp"

namespace cavitysim {

enum class DriveKind {
    cavity_displacement, // (eps_c/2) c^dag            at omega_c
    readout_measurement, // (eps_r/2) r^dag            at omega_r
    transmon_drive,      // (eps_q/2) q^dag            at omega_q (or omega_q - K_q)
    sideband_qq_c,       // (Omega/2sqrt2) q^2 c^dag   at 2 omega_q - K_q - omega_c
    reset_c_r,           // (Omega_cr/2) c r^dag       at (omega_r - omega_c)/2
};

/// Square envelope with optional raised-cosine ramps; piecewise smooth with
/// finite support. The complex amplitude carries the drive rate (rad/s).
struct Envelope {
    cxd amplitude{0.0, 0.0};
    double t_on = 0.0;
    double t_off = 0.0;
    double ramp = 0.0;

    cxd value(double t) const;
    double max_rate() const { return std::abs(amplitude); }
};

/// One co-rotating drive term. The Hamiltonian contribution is
///   H_d(t) = envelope(t) e^{-i (frame_offset + detuning) t} op + h.c.
/// frame_offset is the residual rotation the term keeps in the frame that
/// removes every bare mode frequency when the drive sits at its nominal
/// frequency; detuning is the user offset from that nominal frequency.
struct DriveTerm {
    DriveKind kind;
    Operator op;
    Envelope envelope;
    double detuning = 0.0;
    double frame_offset = 0.0;

    cxd coefficient(double t) const {
        const double phase = -(frame_offset + detuning) * t;
        return envelope.value(t) * cxd{std::cos(phase), std::sin(phase)};
    }
    /// Fastest rate present in the coefficient; feeds the integrator max_step.
    double max_rate() const {
        return std::max(envelope.max_rate(), std::abs(frame_offset + detuning));
    }
};

DriveTerm build_drive(DriveKind kind, const SystemParams& params,
                      const SpacePtr& space, const Envelope& envelope,
                      double detuning = 0.0);

} // namespace cavitysim
