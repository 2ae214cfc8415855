#include "cavitysim/models.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "cavitysim/errors.hpp"

namespace cavitysim {

double thermal_dephasing_rate(double chi, double gamma_down_q, double nth_q) {
    if (chi < 0.0 || gamma_down_q < 0.0 || nth_q < 0.0)
        throw validation_error("thermal_dephasing_rate: inputs must be >= 0");
    if (nth_q == 0.0 || chi == 0.0) return 0.0;
    const std::complex<double> i{0.0, 1.0};
    const std::complex<double> base = 1.0 + i * chi / gamma_down_q;
    const std::complex<double> radicand =
        base * base + 4.0 * i * chi * nth_q / gamma_down_q;
    return 0.5 * gamma_down_q * (std::sqrt(radicand) - 1.0).real();
}

DephasingBudget t2_decomposition(double t1_c, double t2_c, double t_up_q,
                                 double sigma_t1, double sigma_t2,
                                 double sigma_t_up) {
    if (t1_c <= 0.0 || t2_c <= 0.0 || t_up_q <= 0.0)
        throw validation_error("t2_decomposition: all times must be > 0");

    DephasingBudget b;
    b.one_over_2t1 = 0.5 / t1_c;
    b.heating_rate = 1.0 / t_up_q;
    const double raw = 1.0 / t2_c - b.one_over_2t1 - b.heating_rate;

    // Propagate input sigmas through 1/T derivatives.
    const double s1 = 0.5 / (t1_c * t1_c) * sigma_t1;
    const double s2 = 1.0 / (t2_c * t2_c) * sigma_t2;
    const double su = 1.0 / (t_up_q * t_up_q) * sigma_t_up;
    b.residual_sigma = std::sqrt(s1 * s1 + s2 * s2 + su * su);

    const double floor = -(2.0 * b.residual_sigma + 1e-9);
    if (raw < floor)
        throw validation_error(
            "t2_decomposition: 1/T2 below 1/(2 T1) + 1/T_up beyond uncertainty");
    b.residual_rate = std::max(0.0, raw);
    b.predicted_t2 = 1.0 / (b.one_over_2t1 + b.heating_rate + b.residual_rate);

    const double upper_rate = raw + b.residual_sigma;
    b.residual_time_lower_bound = upper_rate > 0.0
                                      ? 1.0 / upper_rate
                                      : std::numeric_limits<double>::infinity();
    return b;
}

double cat_parity_vs_time(double nbar, int parity_sign, double t1_c, double dt) {
    if (nbar < 0.0 || dt < 0.0 || t1_c <= 0.0)
        throw validation_error("cat_parity_vs_time: invalid inputs");
    if (parity_sign != 1 && parity_sign != -1)
        throw validation_error("cat_parity_vs_time: parity_sign must be +-1");
    const double s = static_cast<double>(parity_sign);
    const double decay = std::exp(-dt / t1_c);
    const double bracket =
        std::exp(-2.0 * nbar * decay) + s * std::exp(-2.0 * nbar * (1.0 - decay));
    return 4.0 / (std::numbers::pi * (1.0 + s * std::exp(-2.0 * nbar))) * bracket;
}

double cat_parity_short_time_limit(double nbar, int parity_sign, double t1_c,
                                   double dt) {
    return static_cast<double>(parity_sign) * 4.0 / std::numbers::pi *
           std::exp(-2.0 * nbar * dt / t1_c);
}

double ideal_cat_wigner_cut(double cat_size, int parity_sign, double y) {
    if (cat_size < 0.0)
        throw validation_error("ideal_cat_wigner_cut: cat_size must be >= 0");
    const double s = static_cast<double>(parity_sign);
    const double tail = std::exp(-0.5 * cat_size);
    return std::exp(-2.0 * y * y) *
           (s * std::cos(2.0 * std::sqrt(cat_size) * y) + tail) / (1.0 + s * tail);
}

std::vector<CooldownRow> reference_cooldowns() {
    return {
        {"cooldown_1", 7.2e-2, two_pi * 1.88e3, two_pi * 197.0e3, 25.7e-3, 1.2e-3},
        {"cooldown_2", 2.9e-2, two_pi * 3.75e3, two_pi * 36.1e3, 22.3e-3, 1.2e-3},
        {"cooldown_3", 1.0e-3, two_pi * 1.45e3, two_pi * 42.0e3, 25.6e-3, 34.0e-3},
    };
}

double predicted_t2_from_thermal(const CooldownRow& row) {
    const double gamma_phi =
        thermal_dephasing_rate(row.chi, row.gamma_down_q, row.nth_q);
    return 1.0 / (0.5 / row.t1_c + gamma_phi);
}

KerrEstimates kerr_estimates(const SystemParams& params, double nbar) {
    if (nbar < 0.0) throw validation_error("kerr_estimates: nbar must be >= 0");
    KerrEstimates k;
    k.kerr_c_estimate = params.chi * params.chi / (4.0 * params.kerr_q);
    k.n_crit = params.kerr_q / (6.0 * params.chi);
    k.t_gate_min = 1.0 / (std::sqrt(k.n_crit) * params.chi);
    const double kerr = params.kerr_c > 0.0 ? params.kerr_c : k.kerr_c_estimate;
    k.t_collapse = nbar > 0.0
                       ? std::numbers::pi / (2.0 * std::sqrt(nbar) * kerr)
                       : std::numeric_limits<double>::infinity();
    return k;
}

} // namespace cavitysim
