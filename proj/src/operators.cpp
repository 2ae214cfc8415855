#include "cavitysim/operators.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

#include "cavitysim/expm.hpp"

namespace cavitysim {

namespace {

SparseCxd sparse_identity(int n) {
    SparseCxd id(n, n);
    id.setIdentity();
    return id;
}

void check_same_space(const Operator& a, const Operator& b) {
    if (!a.space || !b.space || !a.space->same_layout(*b.space))
        throw validation_error("operator algebra: space layout mismatch");
}

} // namespace

double Operator::hermiticity_defect() const {
    SparseCxd diff = SparseCxd(mat - SparseCxd(mat.adjoint()));
    double worst = 0.0;
    for (int k = 0; k < diff.outerSize(); ++k)
        for (SparseCxd::InnerIterator it(diff, k); it; ++it)
            worst = std::max(worst, std::abs(it.value()));
    return worst;
}

Operator make_operator(SpacePtr space, SparseCxd mat, bool hermitian_hint) {
    if (mat.rows() != space->total_dim() || mat.cols() != space->total_dim())
        throw validation_error("make_operator: matrix dimension != space dimension");
    Operator op{std::move(space), std::move(mat), hermitian_hint};
    if (hermitian_hint && op.hermiticity_defect() >= 1e-12)
        throw validation_error("make_operator: hermitian_hint set on non-Hermitian matrix");
    return op;
}

Operator identity(const SpacePtr& space) {
    return Operator{space, sparse_identity(space->total_dim()), true};
}

Eigen::MatrixXcd single_mode_lowering(int d) {
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(d, d);
    for (int n = 1; n < d; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Operator embed(const SpacePtr& space, const std::string& subsystem,
               const Eigen::MatrixXcd& block, bool hermitian_hint) {
    const int k = space->index_of(subsystem);
    if (block.rows() != space->dim(k) || block.cols() != space->dim(k))
        throw validation_error("embed: block dimension != subsystem dimension");

    int pre = 1, post = 1;
    for (int j = 0; j < k; ++j) pre *= space->dim(j);
    for (int j = k + 1; j < space->subsystem_count(); ++j) post *= space->dim(j);

    SparseCxd blk = block.sparseView(1.0, 1e-300);
    SparseCxd mid = Eigen::kroneckerProduct(sparse_identity(pre), blk).eval();
    SparseCxd full = Eigen::kroneckerProduct(mid, sparse_identity(post)).eval();
    full.makeCompressed();
    return Operator{space, std::move(full), hermitian_hint};
}

Operator annihilation(const SpacePtr& space, const std::string& subsystem) {
    const int k = space->index_of(subsystem);
    return embed(space, subsystem, single_mode_lowering(space->dim(k)));
}

Operator creation(const SpacePtr& space, const std::string& subsystem) {
    const int k = space->index_of(subsystem);
    return embed(space, subsystem,
                 single_mode_lowering(space->dim(k)).adjoint().eval());
}

Operator number_operator(const SpacePtr& space, const std::string& subsystem) {
    const int k = space->index_of(subsystem);
    Eigen::MatrixXcd n = Eigen::MatrixXcd::Zero(space->dim(k), space->dim(k));
    for (int i = 0; i < space->dim(k); ++i) n(i, i) = static_cast<double>(i);
    return embed(space, subsystem, n, true);
}

Operator parity_operator(const SpacePtr& space, const std::string& subsystem) {
    const int k = space->index_of(subsystem);
    Eigen::MatrixXcd p = Eigen::MatrixXcd::Zero(space->dim(k), space->dim(k));
    for (int i = 0; i < space->dim(k); ++i) p(i, i) = (i % 2 == 0) ? 1.0 : -1.0;
    return embed(space, subsystem, p, true);
}

Eigen::VectorXd parity_signs(const SpacePtr& space, const std::string& subsystem) {
    const int k = space->index_of(subsystem);
    Eigen::VectorXd signs(space->total_dim());
    for (int i = 0; i < space->total_dim(); ++i)
        signs(i) = (space->level_of(i, k) % 2 == 0) ? 1.0 : -1.0;
    return signs;
}

bool truncation_guard_ok(double nbar, int dim) {
    return nbar + 5.0 * std::sqrt(nbar) + 10.0 <= static_cast<double>(dim);
}

void require_truncation_guard(double nbar, int dim, const std::string& what) {
    if (!truncation_guard_ok(nbar, dim))
        throw truncation_error(what + ": truncation guard violated (nbar=" +
                               std::to_string(nbar) + ", dim=" + std::to_string(dim) +
                               ")");
}

int guarded_dim(double nbar) {
    // Headroom beyond the guard minimum: at the exact boundary the Poisson
    // tail sits right at the 1e-8 norm budget (and above it for large nbar,
    // where the right tail is heavier than the Gaussian estimate).
    const int headroom = std::max(2, static_cast<int>(std::lround(std::sqrt(nbar) / 2.0)));
    return static_cast<int>(std::ceil(nbar + 5.0 * std::sqrt(nbar) + 10.0)) + headroom;
}

Eigen::MatrixXcd single_mode_displacement(int d, cxd alpha) {
    Eigen::MatrixXcd a = single_mode_lowering(d);
    Eigen::MatrixXcd gen = alpha * a.adjoint() - std::conj(alpha) * a;
    return expm(gen);
}

Operator displacement(const SpacePtr& space, const std::string& subsystem, cxd alpha) {
    const int k = space->index_of(subsystem);
    require_truncation_guard(std::norm(alpha), space->dim(k), "displacement");
    return embed(space, subsystem, single_mode_displacement(space->dim(k), alpha));
}

Operator operator*(const Operator& a, const Operator& b) {
    check_same_space(a, b);
    return Operator{a.space, SparseCxd(a.mat * b.mat), false};
}

Operator operator+(const Operator& a, const Operator& b) {
    check_same_space(a, b);
    return Operator{a.space, SparseCxd(a.mat + b.mat),
                    a.hermitian_hint && b.hermitian_hint};
}

Operator operator-(const Operator& a, const Operator& b) {
    check_same_space(a, b);
    return Operator{a.space, SparseCxd(a.mat - b.mat),
                    a.hermitian_hint && b.hermitian_hint};
}

Operator operator*(cxd s, const Operator& a) {
    return Operator{a.space, SparseCxd(s * a.mat),
                    a.hermitian_hint && s.imag() == 0.0};
}

Operator adjoint(const Operator& a) {
    return Operator{a.space, SparseCxd(a.mat.adjoint()), a.hermitian_hint};
}

} // namespace cavitysim
