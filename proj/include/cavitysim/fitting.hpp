#pragma once

#include <functional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace cavitysim {

/// Result of a damped least-squares fit. Parameters come with 1-sigma
/// uncertainties from the Jacobian at the optimum scaled by the residual
/// variance. If `converged` is false the parameters are unusable.
struct FitResult {
    std::string model;
    std::vector<std::string> param_names;
    Eigen::VectorXd params;
    Eigen::VectorXd sigmas;
    double residual_rms = 0.0;
    bool converged = false;
    int iterations = 0;

    double param(const std::string& name) const;
    double sigma(const std::string& name) const;
};

using ModelFn = std::function<double(double x, const Eigen::VectorXd& p)>;

/// Levenberg-Marquardt with numeric Jacobian.
FitResult fit_least_squares(const std::string& model_name,
                            const std::vector<std::string>& param_names,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                            const Eigen::VectorXd& p0, const ModelFn& f,
                            int max_iterations = 200);

/// A exp(-x/tau) + C, seeded by log-linear regression on baseline-subtracted
/// data. Requires >= 4 points with strictly increasing x.
FitResult fit_exponential(const Eigen::VectorXd& x, const Eigen::VectorXd& y);
/// Same model with the baseline pinned to zero (A exp(-x/tau)).
FitResult fit_exponential_no_baseline(const Eigen::VectorXd& x,
                                      const Eigen::VectorXd& y);

/// A exp(-x/tau) cos(2 pi f x + phi) + C, frequency seeded from the discrete
/// spectral peak. Requires >= 8 points spanning at least one period.
FitResult fit_exp_cos(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// Modulated Gaussian (A / sigma sqrt(2 pi)) exp(-(x-mu)^2/2 sigma^2)
/// sin(f x + phi). Returns the fringe parameters; cat size is S = f^2/4.
struct CatCutFit {
    FitResult fit;
    double cat_size = 0.0;
    double cat_size_sigma = 0.0;
};
CatCutFit fit_cat_cut(const Eigen::VectorXd& x, const Eigen::VectorXd& w);

/// A cos(x/nu + phi) + B for detuning sweeps (x in rad/s, nu in rad/s).
FitResult fit_cosine(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

/// A exp(-(x-mu)^2 / 2 sigma^2) + C.
FitResult fit_gaussian(const Eigen::VectorXd& x, const Eigen::VectorXd& y);

} // namespace cavitysim
