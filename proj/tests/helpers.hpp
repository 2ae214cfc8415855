#pragma once

// Test-only oracles, independent of the library implementation paths they
// check: dense Kronecker products built by explicit loops, displacement
// matrix elements from associated Laguerre polynomials, Poisson photon
// statistics and closed-form cat amplitudes.

#include <cmath>
#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using cxd = std::complex<double>;

inline Eigen::MatrixXcd kron_dense(const Eigen::MatrixXcd& a,
                                   const Eigen::MatrixXcd& b) {
    Eigen::MatrixXcd out(a.rows() * b.rows(), a.cols() * b.cols());
    for (int i = 0; i < a.rows(); ++i)
        for (int j = 0; j < a.cols(); ++j)
            for (int k = 0; k < b.rows(); ++k)
                for (int l = 0; l < b.cols(); ++l)
                    out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
    return out;
}

/// Generalized Laguerre polynomial L_n^(k)(x) by the three-term recurrence.
inline double laguerre(int n, int k, double x) {
    if (n == 0) return 1.0;
    double lm1 = 1.0;
    double l = 1.0 + k - x;
    for (int m = 1; m < n; ++m) {
        double lp1 = ((2.0 * m + 1.0 + k - x) * l - (m + k) * lm1) / (m + 1.0);
        lm1 = l;
        l = lp1;
    }
    return l;
}

/// <m|D(alpha)|n> from the closed form with Laguerre polynomials.
inline cxd displacement_element(int m, int n, cxd alpha) {
    const double a2 = std::norm(alpha);
    const double pref = std::exp(-0.5 * a2);
    auto ratio_sqrt = [](int lo, int hi) { // sqrt(lo!/hi!) for lo <= hi
        double r = 1.0;
        for (int i = lo + 1; i <= hi; ++i) r /= static_cast<double>(i);
        return std::sqrt(r);
    };
    if (m >= n) {
        cxd p = std::pow(alpha, m - n);
        return pref * ratio_sqrt(n, m) * p * laguerre(n, m - n, a2);
    }
    cxd p = std::pow(-std::conj(alpha), n - m);
    return pref * ratio_sqrt(m, n) * p * laguerre(m, n - m, a2);
}

inline Eigen::MatrixXcd displacement_matrix(int dim, cxd alpha) {
    Eigen::MatrixXcd d(dim, dim);
    for (int m = 0; m < dim; ++m)
        for (int n = 0; n < dim; ++n) d(m, n) = displacement_element(m, n, alpha);
    return d;
}

inline double poisson_pn(double nbar, int n) {
    double logp = -nbar + n * std::log(nbar);
    for (int i = 2; i <= n; ++i) logp -= std::log(static_cast<double>(i));
    return std::exp(logp);
}

/// Normalized even/odd cat amplitudes c_n over dim Fock levels.
inline Eigen::VectorXcd cat_amplitudes(int dim, cxd alpha, int sign) {
    Eigen::VectorXcd plus(dim), minus(dim);
    plus(0) = minus(0) = 1.0;
    for (int n = 1; n < dim; ++n) {
        plus(n) = plus(n - 1) * alpha / std::sqrt(static_cast<double>(n));
        minus(n) = minus(n - 1) * (-alpha) / std::sqrt(static_cast<double>(n));
    }
    Eigen::VectorXcd cat = plus + static_cast<double>(sign) * minus;
    return cat / cat.norm();
}

} // namespace oracle
