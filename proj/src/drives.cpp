#include "cavitysim/drives.hpp"

#include <cmath>

namespace cavitysim {

cxd Envelope::value(double t) const {
    if (t < t_on || t > t_off) return {0.0, 0.0};
    if (ramp <= 0.0) return amplitude;
    double w = 1.0;
    if (t < t_on + ramp)
        w = 0.5 * (1.0 - std::cos(std::numbers::pi * (t - t_on) / ramp));
    else if (t > t_off - ramp)
        w = 0.5 * (1.0 - std::cos(std::numbers::pi * (t_off - t) / ramp));
    return amplitude * w;
}

DriveTerm build_drive(DriveKind kind, const SystemParams& params,
                      const SpacePtr& space, const Envelope& envelope,
                      double detuning) {
    DriveTerm term;
    term.kind = kind;
    term.envelope = envelope;
    term.detuning = detuning;
    term.frame_offset = 0.0;

    switch (kind) {
        case DriveKind::cavity_displacement:
            term.op = cxd{0.5, 0.0} * creation(space, kCavity);
            break;
        case DriveKind::readout_measurement:
            term.op = cxd{0.5, 0.0} * creation(space, kReadout);
            break;
        case DriveKind::transmon_drive:
            term.op = cxd{0.5, 0.0} * creation(space, kTransmon);
            break;
        case DriveKind::sideband_qq_c: {
            // q^2 c^dag / (2 sqrt 2); driving at 2wq - Kq - wc leaves a
            // residual e^{-i Kq t} that brings |0,f> <-> |1,g> on resonance.
            Operator q = annihilation(space, kTransmon);
            term.op = cxd{1.0 / (2.0 * std::sqrt(2.0)), 0.0} *
                      (q * q * creation(space, kCavity));
            term.frame_offset = params.kerr_q;
            break;
        }
        case DriveKind::reset_c_r:
            term.op = cxd{0.5, 0.0} *
                      (annihilation(space, kCavity) * creation(space, kReadout));
            break;
        default:
            throw validation_error("build_drive: unknown drive kind");
    }
    if (!std::isfinite(std::abs(envelope.amplitude)))
        throw validation_error("build_drive: envelope amplitude not finite");
    return term;
}

} // namespace cavitysim
