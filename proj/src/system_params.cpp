#include "cavitysim/system_params.hpp"

#include "cavitysim/errors.hpp"

namespace cavitysim {

namespace {

double clamped_rate(double rate, const char* what) {
    if (rate < -1e-9)
        throw validation_error(std::string(what) + ": negative derived dephasing rate");
    return rate < 0.0 ? 0.0 : rate;
}

} // namespace

double SystemParams::transmon_dephasing_rate() const {
    // ge coherence: 1/t2 = 1/(2 t1) + gamma/2  =>  gamma = 2 (1/t2 - 1/(2 t1)).
    const double gamma = 2.0 * (1.0 / t2_q - 0.5 / t1_q);
    return clamped_rate(gamma, "transmon_dephasing_rate");
}

double SystemParams::transmon_gf_dephasing_rate() const {
    // gf coherence under sqrt(gamma) n_q decays at 2 gamma; the f->e ladder
    // decay adds 1/t1:  1/t2_gf = 1/t1 + 2 gamma.
    const double gamma = 0.5 * (1.0 / t2_gf_q - 1.0 / t1_q);
    return clamped_rate(gamma, "transmon_gf_dephasing_rate");
}

void SystemParams::validate() const {
    auto positive = [](double v, const char* name) {
        if (v <= 0.0)
            throw validation_error(std::string("SystemParams: ") + name +
                                   " must be > 0");
    };
    positive(t1_c, "t1_c");
    positive(t1_q, "t1_q");
    positive(t2_q, "t2_q");
    positive(t2e_q, "t2e_q");
    positive(t1_r, "t1_r");
    if (nth_c < 0.0 || nth_c >= 1.0 || nth_q < 0.0 || nth_q >= 1.0)
        throw validation_error("SystemParams: thermal populations must be in [0,1)");
    (void)transmon_dephasing_rate();
}

SystemParams SystemParams::reference() {
    SystemParams p;
    p.omega_c = two_pi * 4.301e9;
    p.omega_q = two_pi * 3.099e9;
    p.omega_r = two_pi * 7.889e9;
    p.kerr_c = two_pi * 3.6;
    p.kerr_q = two_pi * 146e6;
    p.kerr_r = two_pi * 2.3e3;
    p.chi = two_pi * 42e3;
    p.chi_qr = two_pi * 1.3e6;
    p.chi_cr = two_pi * 0.2e3;
    p.t1_c = 25.6e-3;
    p.t2_c = 34e-3;
    p.t1_q = 110e-6;
    p.t2_q = 16e-6;
    p.t2e_q = 80e-6;
    p.t2_gf_q = 45e-6;
    p.t1_f_q = 50e-6;
    p.t1_r = 0.38e-6;
    p.nth_c = 0.0;       // bounded below 0.5%; treated as empty
    p.nth_q = 1.2e-3;
    return p;
}

} // namespace cavitysim
