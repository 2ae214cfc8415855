#pragma once

#include <string>
#include <vector>

namespace cavitysim {

/// Cavity mode and field-participation inputs. Participation ratios, the
/// geometry factor, seam admittance and the external coupling rate come from
/// electromagnetic simulation and are plain inputs here.
struct CavityGeometry {
    double omega_c = 0.0;           // rad/s
    double filling_factor = 0.0;    // oxide participation F
    double geometry_factor = 0.0;   // G, ohm
    double seam_admittance = 0.0;   // y_seam, 1/(ohm m)
    double bulk_participation = 0.0;
    double p_ma = 0.0; // metal-air interface participation
    double p_ms = 0.0; // metal-substrate
    double p_sa = 0.0; // substrate-air
    double external_coupling = 0.0; // rad/s

    void validate() const;
    static CavityGeometry reference();
};

struct MaterialParams {
    double tan_delta_oxide = 0.0;
    double tan_delta_bulk = 0.0;
    double tan_delta_ma = 0.0;
    double tan_delta_ms = 0.0;
    double tan_delta_sa = 0.0;
    double seam_conductance = 0.0;        // g_seam, 1/(ohm m)
    double surface_resistance_per_mg = 0.0; // ohm per milligauss of trapped field
    double ambient_field_mg = 0.0;
    std::vector<double> shield_attenuations; // each >= 1
    double residual_resistance_bound = 0.0;  // ohm
    double temperature = 0.0;                // K

    void validate() const;
    static MaterialParams reference();
};

/// One row of the loss budget. Rates are stored angular (rad/s); report I/O
/// uses kappa/2pi in Hz and lifetimes in seconds.
struct LossChannel {
    std::string name;
    std::string mitigation;
    double kappa = 0.0; // rad/s
    double kappa_over_2pi_hz() const;
    double lifetime_s() const; // 1/kappa
};

struct LossBudget {
    std::vector<LossChannel> channels;
    double total_kappa = 0.0; // rad/s, exact sum of channel rates
    double total_kappa_over_2pi_hz() const;
    double total_lifetime_s() const;
};

/// kappa_ox = omega_c F tan(delta_ox) tanh(hbar omega_c / 2 kB T).
double oxide_loss(const CavityGeometry& geom, const MaterialParams& mat);

/// Thermal occupancy factor of the oxide loss; -> 1 as T -> 0.
double oxide_thermal_factor(double omega_c, double temperature);

/// Photon loss inherited through transmon hybridization, relaxation and
/// dephasing combined: kappa = (chi / K_q) / T2E_q.
double inverse_purcell(double chi, double kerr_q, double t2e_q);

/// kappa_seam = omega_c y_seam / g_seam.
double seam_loss(const CavityGeometry& geom, const MaterialParams& mat);

/// kappa_cond = omega_c R_s / G for a given surface resistance.
double conductive_loss(const CavityGeometry& geom, double surface_resistance);

/// Conductive loss caused by the trapped ambient field after shielding.
double magnetic_vortex_loss(const CavityGeometry& geom, const MaterialParams& mat);

/// Bulk and interface dielectric loss of the chip: (bulk, surface-sum).
struct ChipLoss {
    double bulk = 0.0;
    double surface = 0.0;
};
ChipLoss dielectric_chip_losses(const CavityGeometry& geom, const MaterialParams& mat);

/// Assembles every channel plus the external coupling into a budget.
LossBudget assemble_budget(const CavityGeometry& geom, const MaterialParams& mat);

/// Ring-down arithmetic: Q = omega tau, 1/tau_int = 1/tau_loaded - 1/tau_ext.
struct RingdownReport {
    double q_loaded = 0.0;
    double tau_ext = 0.0;
    double tau_intrinsic = 0.0;
    double q_intrinsic = 0.0;
};
RingdownReport ringdown_conversions(double omega_c, double tau_loaded, double q_ext);

} // namespace cavitysim
