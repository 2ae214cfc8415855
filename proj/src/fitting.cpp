#include "cavitysim/fitting.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "cavitysim/errors.hpp"

namespace cavitysim {

namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void require_sorted_xy(const VectorXd& x, const VectorXd& y, int min_points,
                       const char* what) {
    if (x.size() != y.size())
        throw validation_error(std::string(what) + ": x/y size mismatch");
    if (x.size() < min_points)
        throw validation_error(std::string(what) + ": needs at least " +
                               std::to_string(min_points) + " points");
    for (int i = 1; i < x.size(); ++i)
        if (x(i) <= x(i - 1))
            throw validation_error(std::string(what) + ": x must be strictly increasing");
}

void require_nondegenerate(const VectorXd& y, const char* what) {
    const double mean = y.mean();
    double var = 0.0;
    for (int i = 0; i < y.size(); ++i) var += (y(i) - mean) * (y(i) - mean);
    if (var <= 1e-300)
        throw validation_error(std::string(what) + ": degenerate data (zero variance)");
}

VectorXd residuals(const VectorXd& x, const VectorXd& y, const VectorXd& p,
                   const ModelFn& f) {
    VectorXd r(x.size());
    for (int i = 0; i < x.size(); ++i) r(i) = y(i) - f(x(i), p);
    return r;
}

MatrixXd numeric_jacobian(const VectorXd& x, const VectorXd& p, const ModelFn& f) {
    MatrixXd jac(x.size(), p.size());
    VectorXd pl = p, ph = p;
    for (int j = 0; j < p.size(); ++j) {
        const double h = std::max(1e-9, 1e-6 * std::abs(p(j)));
        pl(j) = p(j) - h;
        ph(j) = p(j) + h;
        for (int i = 0; i < x.size(); ++i)
            jac(i, j) = (f(x(i), ph) - f(x(i), pl)) / (2.0 * h);
        pl(j) = p(j);
        ph(j) = p(j);
    }
    return jac;
}

/// Dominant frequency of mean-subtracted data by a dense spectral scan
/// (works for nonuniform x). Returns cycles per unit x.
double spectral_peak_frequency(const VectorXd& x, const VectorXd& y) {
    const double span = x(x.size() - 1) - x(0);
    const int n = static_cast<int>(x.size());
    const double mean = y.mean();

    // Median spacing bounds the resolvable band.
    std::vector<double> dx(n - 1);
    for (int i = 0; i + 1 < n; ++i) dx[i] = x(i + 1) - x(i);
    std::nth_element(dx.begin(), dx.begin() + (n - 1) / 2, dx.end());
    const double f_max = 0.5 / dx[(n - 1) / 2];
    const double f_min = 0.5 / span;

    double best_f = 0.0, best_power = -1.0;
    const int candidates = std::max(64, 8 * n);
    for (int k = 0; k <= candidates; ++k) {
        const double f =
            f_min + (f_max - f_min) * static_cast<double>(k) / candidates;
        double re = 0.0, im = 0.0;
        for (int i = 0; i < n; ++i) {
            const double arg = 2.0 * std::numbers::pi * f * x(i);
            re += (y(i) - mean) * std::cos(arg);
            im += (y(i) - mean) * std::sin(arg);
        }
        const double power = re * re + im * im;
        if (power > best_power) {
            best_power = power;
            best_f = f;
        }
    }
    return best_f;
}

/// Linear least squares of y on {cos(2 pi f x), sin(2 pi f x), 1};
/// returns amplitude and phase of A cos(2 pi f x + phi).
void quadrature_seed(const VectorXd& x, const VectorXd& y, double f, double& amp,
                     double& phase, double& offset) {
    MatrixXd m(x.size(), 3);
    for (int i = 0; i < x.size(); ++i) {
        const double arg = 2.0 * std::numbers::pi * f * x(i);
        m(i, 0) = std::cos(arg);
        m(i, 1) = std::sin(arg);
        m(i, 2) = 1.0;
    }
    Eigen::Vector3d c = m.colPivHouseholderQr().solve(y);
    amp = std::hypot(c(0), c(1));
    phase = std::atan2(-c(1), c(0));
    offset = c(2);
}

} // namespace

double FitResult::param(const std::string& name) const {
    for (size_t i = 0; i < param_names.size(); ++i)
        if (param_names[i] == name) return params(static_cast<long>(i));
    throw validation_error("FitResult: unknown parameter '" + name + "'");
}

double FitResult::sigma(const std::string& name) const {
    for (size_t i = 0; i < param_names.size(); ++i)
        if (param_names[i] == name) return sigmas(static_cast<long>(i));
    throw validation_error("FitResult: unknown parameter '" + name + "'");
}

FitResult fit_least_squares(const std::string& model_name,
                            const std::vector<std::string>& param_names,
                            const VectorXd& x, const VectorXd& y, const VectorXd& p0,
                            const ModelFn& f, int max_iterations) {
    FitResult out;
    out.model = model_name;
    out.param_names = param_names;
    out.params = p0;
    out.sigmas = VectorXd::Zero(p0.size());

    VectorXd p = p0;
    VectorXd r = residuals(x, y, p, f);
    double cost = r.squaredNorm();
    double lambda = 1e-3;

    for (int iter = 0; iter < max_iterations; ++iter) {
        out.iterations = iter + 1;
        MatrixXd jac = numeric_jacobian(x, p, f);
        MatrixXd jtj = jac.transpose() * jac;
        VectorXd jtr = jac.transpose() * r;

        if (jtr.lpNorm<Eigen::Infinity>() < 1e-12 * (1.0 + std::sqrt(cost))) {
            out.converged = true;
            break;
        }

        bool improved = false;
        for (int attempt = 0; attempt < 16; ++attempt) {
            MatrixXd damped = jtj;
            for (int d = 0; d < damped.rows(); ++d)
                damped(d, d) += lambda * std::max(jtj(d, d), 1e-12);
            VectorXd step = damped.ldlt().solve(jtr);
            VectorXd p_try = p + step;
            VectorXd r_try = residuals(x, y, p_try, f);
            const double cost_try = r_try.squaredNorm();
            if (std::isfinite(cost_try) && cost_try < cost) {
                const double rel_drop = (cost - cost_try) / std::max(cost, 1e-300);
                const double rel_step =
                    step.norm() / std::max(1e-300, p.norm() + 1e-12);
                p = p_try;
                r = r_try;
                cost = cost_try;
                lambda = std::max(lambda * 0.3, 1e-12);
                improved = true;
                if (rel_drop < 1e-14 || rel_step < 1e-12) out.converged = true;
                break;
            }
            lambda *= 10.0;
            if (lambda > 1e12) break;
        }
        if (!improved) {
            // No downhill direction left; treat the current point as optimal.
            out.converged = true;
            break;
        }
        if (out.converged) break;
    }

    out.params = p;
    out.residual_rms = std::sqrt(cost / static_cast<double>(x.size()));

    const long dof = x.size() - p.size();
    MatrixXd jac = numeric_jacobian(x, p, f);
    MatrixXd jtj = jac.transpose() * jac;
    const double s2 = dof > 0 ? cost / static_cast<double>(dof) : 0.0;
    Eigen::FullPivLU<MatrixXd> lu(jtj);
    if (lu.isInvertible()) {
        MatrixXd cov = s2 * lu.inverse();
        for (int i = 0; i < p.size(); ++i)
            out.sigmas(i) = std::sqrt(std::max(0.0, cov(i, i)));
    }
    return out;
}

namespace {

FitResult fit_exponential_impl(const VectorXd& x, const VectorXd& y,
                               bool fit_baseline) {
    require_sorted_xy(x, y, 4, "fit_exponential");
    require_nondegenerate(y, "fit_exponential");

    const double span = x(x.size() - 1) - x(0);
    // Decay baseline: the tail value; amplitude: head minus tail.
    double c0 = fit_baseline ? y(y.size() - 1) : 0.0;
    double a0 = y(0) - c0;
    if (a0 == 0.0) a0 = y.maxCoeff() - y.minCoeff();

    // Log-linear regression on baseline-subtracted points with usable signal.
    double sx = 0, sxx = 0, sy = 0, sxy = 0;
    int used = 0;
    for (int i = 0; i < x.size(); ++i) {
        const double v = (y(i) - c0) / a0;
        if (v < 0.02) continue;
        const double ly = std::log(v);
        sx += x(i);
        sxx += x(i) * x(i);
        sy += ly;
        sxy += x(i) * ly;
        ++used;
    }
    double tau0 = span / 2.0;
    if (used >= 2) {
        const double denom = used * sxx - sx * sx;
        if (std::abs(denom) > 1e-300) {
            const double slope = (used * sxy - sx * sy) / denom;
            if (slope < -1e-300) tau0 = -1.0 / slope;
        }
    }

    if (fit_baseline) {
        Eigen::Vector3d p0(a0, tau0, c0);
        auto model = [](double xv, const VectorXd& p) {
            return p(0) * std::exp(-xv / p(1)) + p(2);
        };
        return fit_least_squares("exponential", {"amplitude", "tau", "baseline"}, x, y,
                                 p0, model);
    }
    Eigen::Vector2d p0(a0, tau0);
    auto model = [](double xv, const VectorXd& p) {
        return p(0) * std::exp(-xv / p(1));
    };
    return fit_least_squares("exponential_zero_baseline", {"amplitude", "tau"}, x, y,
                             p0, model);
}

} // namespace

FitResult fit_exponential(const VectorXd& x, const VectorXd& y) {
    return fit_exponential_impl(x, y, true);
}

FitResult fit_exponential_no_baseline(const VectorXd& x, const VectorXd& y) {
    return fit_exponential_impl(x, y, false);
}

FitResult fit_exp_cos(const VectorXd& x, const VectorXd& y) {
    require_sorted_xy(x, y, 8, "fit_exp_cos");
    require_nondegenerate(y, "fit_exp_cos");

    const double span = x(x.size() - 1) - x(0);
    const double f0 = spectral_peak_frequency(x, y);
    if (f0 * span < 0.75) {
        // Less than one period: monotone data. Degenerate to the plain
        // exponential and report it in the oscillatory parameterization.
        FitResult plain = fit_exponential_impl(x, y, true);
        FitResult out;
        out.model = "exp_cos";
        out.param_names = {"amplitude", "tau", "frequency", "phase", "baseline"};
        out.params = Eigen::VectorXd::Zero(5);
        out.sigmas = Eigen::VectorXd::Zero(5);
        out.params(0) = plain.param("amplitude");
        out.params(1) = plain.param("tau");
        out.params(4) = plain.param("baseline");
        out.sigmas(0) = plain.sigma("amplitude");
        out.sigmas(1) = plain.sigma("tau");
        out.sigmas(4) = plain.sigma("baseline");
        out.residual_rms = plain.residual_rms;
        out.converged = plain.converged;
        out.iterations = plain.iterations;
        return out;
    }

    double a0, phi0, c0;
    quadrature_seed(x, y, f0, a0, phi0, c0);
    if (a0 <= 0.0) a0 = 0.5 * (y.maxCoeff() - y.minCoeff());

    Eigen::VectorXd p0(5);
    p0 << a0, span, f0, phi0, c0;
    auto model = [](double xv, const VectorXd& p) {
        return p(0) * std::exp(-xv / p(1)) *
                   std::cos(2.0 * std::numbers::pi * p(2) * xv + p(3)) +
               p(4);
    };
    return fit_least_squares("exp_cos",
                             {"amplitude", "tau", "frequency", "phase", "baseline"},
                             x, y, p0, model);
}

CatCutFit fit_cat_cut(const VectorXd& x, const VectorXd& w) {
    require_sorted_xy(x, w, 8, "fit_cat_cut");
    require_nondegenerate(w, "fit_cat_cut");

    // Fringe frequency in rad per unit displacement, seeded spectrally.
    const double f_cyc = spectral_peak_frequency(x, w);
    const double f0 = 2.0 * std::numbers::pi * f_cyc;
    if (f0 <= 0.0)
        throw validation_error("fit_cat_cut: fringe frequency below resolvability");

    double a_quad, phi0, off;
    quadrature_seed(x, w, f_cyc, a_quad, phi0, off);
    const double sigma0 = 0.5; // vacuum-calibrated axis
    // Model amplitude A/(sigma sqrt(2 pi)) ~ a_quad near the envelope center.
    double a0 = a_quad * sigma0 * std::sqrt(2.0 * std::numbers::pi);
    if (a0 == 0.0) a0 = (w.maxCoeff() - w.minCoeff()) / 2.0;

    Eigen::VectorXd p0(5);
    // sin(f x + phi) = cos(f x + phi - pi/2)
    p0 << a0, 0.0, sigma0, f0, phi0 + 0.5 * std::numbers::pi;
    auto model = [](double xv, const VectorXd& p) {
        const double g = std::exp(-(xv - p(1)) * (xv - p(1)) / (2.0 * p(2) * p(2)));
        return p(0) / (p(2) * std::sqrt(2.0 * std::numbers::pi)) * g *
               std::sin(p(3) * xv + p(4));
    };
    CatCutFit out;
    out.fit = fit_least_squares("modulated_gaussian",
                                {"amplitude", "center", "sigma", "fringe_rate", "phase"},
                                x, w, p0, model);
    const double f = std::abs(out.fit.param("fringe_rate"));
    out.cat_size = f * f / 4.0;
    out.cat_size_sigma = 0.5 * f * out.fit.sigma("fringe_rate");
    return out;
}

FitResult fit_cosine(const VectorXd& x, const VectorXd& y) {
    require_sorted_xy(x, y, 8, "fit_cosine");
    require_nondegenerate(y, "fit_cosine");

    const double f_cyc = spectral_peak_frequency(x, y); // cycles per rad/s
    if (f_cyc <= 0.0) throw validation_error("fit_cosine: no spectral peak");
    double a0, phi0, c0;
    quadrature_seed(x, y, f_cyc, a0, phi0, c0);

    Eigen::VectorXd p0(4);
    p0 << a0, 1.0 / (2.0 * std::numbers::pi * f_cyc), phi0, c0;
    auto model = [](double xv, const VectorXd& p) {
        return p(0) * std::cos(xv / p(1) + p(2)) + p(3);
    };
    return fit_least_squares("cosine", {"amplitude", "nu", "phase", "offset"}, x, y,
                             p0, model);
}

FitResult fit_gaussian(const VectorXd& x, const VectorXd& y) {
    require_sorted_xy(x, y, 4, "fit_gaussian");
    require_nondegenerate(y, "fit_gaussian");

    int imax = 0;
    y.maxCoeff(&imax);
    const double c0 = y.minCoeff();
    const double a0 = y(imax) - c0;
    const double mu0 = x(imax);
    // Second moment of the baseline-subtracted profile.
    double wsum = 0.0, m2 = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        const double v = std::max(0.0, y(i) - c0);
        wsum += v;
        m2 += v * (x(i) - mu0) * (x(i) - mu0);
    }
    const double sigma0 = wsum > 0 ? std::sqrt(m2 / wsum) : 1.0;

    Eigen::VectorXd p0(4);
    p0 << a0, mu0, sigma0, c0;
    auto model = [](double xv, const VectorXd& p) {
        return p(0) * std::exp(-(xv - p(1)) * (xv - p(1)) / (2.0 * p(2) * p(2))) +
               p(3);
    };
    return fit_least_squares("gaussian", {"amplitude", "center", "sigma", "baseline"},
                             x, y, p0, model);
}

} // namespace cavitysim
