#pragma once

#include <numbers>

namespace cavitysim {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Device parameters: mode frequencies, self-Kerr and cross-Kerr rates
/// (all angular, rad/s), coherence times (s) and thermal populations.
/// Single source of truth for a simulated device.
struct SystemParams {
    // Mode frequencies.
    double omega_c = 0.0;
    double omega_q = 0.0;
    double omega_r = 0.0;

    // Self-Kerr rates (kerr_q is the transmon anharmonicity).
    double kerr_c = 0.0;
    double kerr_q = 0.0;
    double kerr_r = 0.0;

    // Dispersive shifts.
    double chi = 0.0;    // cavity-transmon
    double chi_qr = 0.0; // transmon-readout
    double chi_cr = 0.0; // cavity-readout

    // Lifetimes and coherence times (seconds).
    double t1_c = 0.0;
    double t2_c = 0.0;
    double t1_q = 0.0;
    double t2_q = 0.0;   // Ramsey
    double t2e_q = 0.0;  // Hahn echo
    double t2_gf_q = 0.0; // (|g>+|f>)/sqrt(2) superposition
    double t1_f_q = 0.0;  // |f> lifetime (measured; the ladder model gives t1_q/2)
    double t1_r = 0.0;

    // Thermal populations (dimensionless, in [0,1)).
    double nth_c = 0.0;
    double nth_q = 0.0;

    /// Pure-dephasing rate gamma such that the Lindblad channel
    /// sqrt(gamma) n_q reproduces 1/t2 = 1/(2 t1) + gamma/2 on the g-e
    /// coherence. Negative values within 1e-9 are clamped to zero.
    double transmon_dephasing_rate() const;

    /// Same construction for the g-f manifold: gamma such that the g-f
    /// coherence decays at 1/t2_gf (ladder decay of |f> included).
    double transmon_gf_dephasing_rate() const;

    void validate() const;

    /// Bundled reference device (the hardware this toolkit models).
    static SystemParams reference();
};

} // namespace cavitysim
