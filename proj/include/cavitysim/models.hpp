#pragma once

#include <string>
#include <vector>

#include "cavitysim/system_params.hpp"

namespace cavitysim {

/// Cavity dephasing rate induced by thermal transmon excitations:
///   Gamma_phi = (Gamma_down/2) Re[ sqrt((1 + i chi/Gamma_down)^2
///                                       + 4 i chi nth / Gamma_down) - 1 ],
/// principal square root (reduces to 0 at nth = 0). In the slow-jump limit
/// chi/Gamma_down >> 1 this tends to nth * Gamma_down = 1/T_up.
double thermal_dephasing_rate(double chi, double gamma_down_q, double nth_q);

/// Decomposition 1/T2c = 1/(2 T1c) + 1/T_up + 1/T_phi_residual.
struct DephasingBudget {
    double one_over_2t1 = 0.0;
    double heating_rate = 0.0;   // 1/T_up
    double residual_rate = 0.0;  // clamped at 0 when negative within error
    double residual_sigma = 0.0;
    double predicted_t2 = 0.0;   // 1/(sum of the three rates)
    /// 1-sigma lower bound on the residual dephasing time (inf if rate+sigma<=0).
    double residual_time_lower_bound = 0.0;
};

/// Splits a measured T2 into photon loss, transmon heating and a residual.
/// Optional 1-sigma input uncertainties propagate into the residual; inputs
/// whose residual is negative beyond 2 sigma are rejected as unphysical.
DephasingBudget t2_decomposition(double t1_c, double t2_c, double t_up_q,
                                 double sigma_t1 = 0.0, double sigma_t2 = 0.0,
                                 double sigma_t_up = 0.0);

/// Wigner origin value of an initially even/odd cat of mean photon number
/// nbar relaxing with photon lifetime t1_c:
///   W(0, dt) = 4/(pi (1 +- e^{-2 nbar})) {e^{-2 nbar e^{-dt/t1}}
///                                         +- e^{-2 nbar (1 - e^{-dt/t1})}}.
double cat_parity_vs_time(double nbar, int parity_sign, double t1_c, double dt);

/// Large-cat short-time limit +-(4/pi) e^{-2 nbar dt / t1}.
double cat_parity_short_time_limit(double nbar, int parity_sign, double t1_c,
                                   double dt);

/// Ideal-cat Wigner cut along the imaginary axis (parity convention):
/// W_s(y) = e^{-2 y^2} (s cos(2 sqrt(S) y) + e^{-S/2}) / (1 + s e^{-S/2}).
double ideal_cat_wigner_cut(double cat_size, int parity_sign, double y);

/// One cooldown of the reference device: thermal transmon population,
/// transmon relaxation rate, dispersive shift, photon lifetime and the
/// measured coherence time.
struct CooldownRow {
    std::string name;
    double nth_q = 0.0;
    double gamma_down_q = 0.0; // rad/s
    double chi = 0.0;          // rad/s
    double t1_c = 0.0;         // s
    double measured_t2_c = 0.0;
};

std::vector<CooldownRow> reference_cooldowns();

/// Coherence time predicted from photon loss plus thermal-jump dephasing:
/// 1/T2 = 1/(2 T1c) + Gamma_phi(chi, Gamma_down, nth).
double predicted_t2_from_thermal(const CooldownRow& row);

struct KerrEstimates {
    double kerr_c_estimate = 0.0; // chi^2 / (4 K_q)
    double t_collapse = 0.0;      // pi / (2 sqrt(nbar) K_c)
    double n_crit = 0.0;          // K_q / (6 chi)
    double t_gate_min = 0.0;      // 1 / (sqrt(n_crit) chi)
};

/// Kerr and dispersive-breakdown figures of merit. The collapse time uses
/// the device Kerr when one is configured, the chi^2/4Kq estimate otherwise.
KerrEstimates kerr_estimates(const SystemParams& params, double nbar);

} // namespace cavitysim
