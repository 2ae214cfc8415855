#pragma once

#include <complex>
#include <memory>
#include <string>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "cavitysim/fock_space.hpp"

namespace cavitysim {

using cxd = std::complex<double>;
using SparseCxd = Eigen::SparseMatrix<cxd>;

/// Sparse operator on a composite Fock space. Operators are immutable value
/// types after construction; the space handle pins the subsystem layout.
struct Operator {
    SpacePtr space;
    SparseCxd mat;
    bool hermitian_hint = false;

    int dim() const { return static_cast<int>(mat.rows()); }

    /// max |A - A^dag| entry; used to back the hermitian_hint invariant.
    double hermiticity_defect() const;
};

Operator make_operator(SpacePtr space, SparseCxd mat, bool hermitian_hint = false);

/// Identity on the full space.
Operator identity(const SpacePtr& space);

/// Lowering operator of one subsystem, embedded in the full tensor product
/// (identity on the other factors): a|n> = sqrt(n)|n-1>.
Operator annihilation(const SpacePtr& space, const std::string& subsystem);
Operator creation(const SpacePtr& space, const std::string& subsystem);

/// n = a^dag a of one subsystem, embedded.
Operator number_operator(const SpacePtr& space, const std::string& subsystem);

/// Photon-number parity (-1)^n of one subsystem, embedded (diagonal).
Operator parity_operator(const SpacePtr& space, const std::string& subsystem);

/// Diagonal of parity_operator as a vector of +-1 over composite basis states.
Eigen::VectorXd parity_signs(const SpacePtr& space, const std::string& subsystem);

/// Unitary displacement D(alpha) = exp(alpha a^dag - alpha* a) of one
/// subsystem, computed with a scaling-and-squaring matrix exponential and
/// embedded in the full space. The truncation guard
/// |alpha|^2 + 5|alpha| + 10 <= dim must hold.
Operator displacement(const SpacePtr& space, const std::string& subsystem, cxd alpha);

/// Truncation guard shared by displacement and coherent-state construction.
bool truncation_guard_ok(double nbar, int dim);
void require_truncation_guard(double nbar, int dim, const std::string& what);
/// Smallest dimension passing the guard for mean photon number nbar.
int guarded_dim(double nbar);

/// Embed a single-subsystem matrix into the full space (identity elsewhere).
Operator embed(const SpacePtr& space, const std::string& subsystem,
               const Eigen::MatrixXcd& block, bool hermitian_hint = false);

/// Dense single-mode building blocks (dimension d).
Eigen::MatrixXcd single_mode_lowering(int d);
Eigen::MatrixXcd single_mode_displacement(int d, cxd alpha);

// Small algebra layer; all operands must live on the same space layout.
Operator operator*(const Operator& a, const Operator& b);
Operator operator+(const Operator& a, const Operator& b);
Operator operator-(const Operator& a, const Operator& b);
Operator operator*(cxd s, const Operator& a);
Operator adjoint(const Operator& a);

} // namespace cavitysim
