#include "cavitysim/expm.hpp"

#include <array>
#include <cmath>

namespace cavitysim {

namespace {

using Eigen::MatrixXcd;

MatrixXcd pade_solve(const MatrixXcd& u, const MatrixXcd& v) {
    // (v - u) x = (v + u)
    return (v - u).partialPivLu().solve(v + u);
}

MatrixXcd pade3(const MatrixXcd& a) {
    static constexpr std::array<double, 4> b{120., 60., 12., 1.};
    const int n = static_cast<int>(a.rows());
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd a2 = a * a;
    MatrixXcd u = a * (b[3] * a2 + b[1] * id);
    MatrixXcd v = b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

MatrixXcd pade5(const MatrixXcd& a) {
    static constexpr std::array<double, 6> b{30240., 15120., 3360., 420., 30., 1.};
    const int n = static_cast<int>(a.rows());
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd a2 = a * a;
    const MatrixXcd a4 = a2 * a2;
    MatrixXcd u = a * (b[5] * a4 + b[3] * a2 + b[1] * id);
    MatrixXcd v = b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

MatrixXcd pade7(const MatrixXcd& a) {
    static constexpr std::array<double, 8> b{17297280., 8648640., 1995840., 277200.,
                                             25200.,    1512.,    56.,      1.};
    const int n = static_cast<int>(a.rows());
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd a2 = a * a;
    const MatrixXcd a4 = a2 * a2;
    const MatrixXcd a6 = a4 * a2;
    MatrixXcd u = a * (b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    MatrixXcd v = b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

MatrixXcd pade9(const MatrixXcd& a) {
    static constexpr std::array<double, 10> b{17643225600., 8821612800., 2075673600.,
                                              302702400.,   30270240.,   2162160.,
                                              110880.,      3960.,       90.,
                                              1.};
    const int n = static_cast<int>(a.rows());
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd a2 = a * a;
    const MatrixXcd a4 = a2 * a2;
    const MatrixXcd a6 = a4 * a2;
    const MatrixXcd a8 = a6 * a2;
    MatrixXcd u = a * (b[9] * a8 + b[7] * a6 + b[5] * a4 + b[3] * a2 + b[1] * id);
    MatrixXcd v = b[8] * a8 + b[6] * a6 + b[4] * a4 + b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

MatrixXcd pade13(const MatrixXcd& a) {
    static constexpr std::array<double, 14> b{
        64764752532480000., 32382376266240000., 7771770303897600.,
        1187353796428800.,  129060195264000.,   10559470521600.,
        670442572800.,      33522128640.,       1323241920.,
        40840800.,          960960.,            16380.,
        182.,               1.};
    const int n = static_cast<int>(a.rows());
    const MatrixXcd id = MatrixXcd::Identity(n, n);
    const MatrixXcd a2 = a * a;
    const MatrixXcd a4 = a2 * a2;
    const MatrixXcd a6 = a4 * a2;
    MatrixXcd u = a * (a6 * (b[13] * a6 + b[11] * a4 + b[9] * a2) + b[7] * a6 +
                       b[5] * a4 + b[3] * a2 + b[1] * id);
    MatrixXcd v = a6 * (b[12] * a6 + b[10] * a4 + b[8] * a2) + b[6] * a6 + b[4] * a4 +
                  b[2] * a2 + b[0] * id;
    return pade_solve(u, v);
}

double one_norm(const MatrixXcd& a) {
    return a.cwiseAbs().colwise().sum().maxCoeff();
}

} // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a) {
    // Higham (2005) degree selection thresholds.
    constexpr double theta3 = 1.495585217958292e-2;
    constexpr double theta5 = 2.539398330063230e-1;
    constexpr double theta7 = 9.504178996162932e-1;
    constexpr double theta9 = 2.097847961257068;
    constexpr double theta13 = 5.371920351148152;

    const double norm = one_norm(a);
    if (norm <= theta3) return pade3(a);
    if (norm <= theta5) return pade5(a);
    if (norm <= theta7) return pade7(a);
    if (norm <= theta9) return pade9(a);
    if (norm <= theta13) return pade13(a);

    int squarings = static_cast<int>(std::ceil(std::log2(norm / theta13)));
    MatrixXcd scaled = a / std::pow(2.0, squarings);
    MatrixXcd result = pade13(scaled);
    for (int i = 0; i < squarings; ++i) result = result * result;
    return result;
}

} // namespace cavitysim
