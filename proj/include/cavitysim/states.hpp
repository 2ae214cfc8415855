#pragma once

#include <vector>

#include "cavitysim/operators.hpp"

namespace cavitysim {

/// Density matrix (or pure vector, flagged) on a composite Fock space.
/// States are value types; protocol steps return new states.
class QuantumState {
public:
    QuantumState() = default;

    static QuantumState pure(SpacePtr space, Eigen::VectorXcd psi);
    static QuantumState density(SpacePtr space, Eigen::MatrixXcd rho);

    const SpacePtr& space() const { return space_; }
    bool is_pure() const { return pure_; }
    int dim() const { return space_ ? space_->total_dim() : 0; }

    const Eigen::VectorXcd& vector() const;
    const Eigen::MatrixXcd& density_matrix() const;

    /// Density-matrix view regardless of storage (materializes |psi><psi|).
    Eigen::MatrixXcd to_density() const;
    /// Drops purity, converting storage to a density matrix in place.
    void demote_to_density();

    double trace() const;
    void normalize();

    cxd expectation(const Operator& op) const;
    /// <target|rho|target> for a pure target (fidelity against pure states).
    double fidelity_to(const QuantumState& pure_target) const;

    /// Trace 1 to 1e-6, Hermitian to 1e-10, eigenvalues >= -1e-8.
    void validate() const;

private:
    SpacePtr space_;
    bool pure_ = true;
    Eigen::VectorXcd psi_;
    Eigen::MatrixXcd rho_;
};

/// |n1, n2, ...> basis state with the given per-subsystem levels.
QuantumState fock_state(const SpacePtr& space, const std::vector<int>& levels);

/// Coherent state |alpha> in one subsystem (vacuum elsewhere), built from
/// Fock amplitudes e^{-|a|^2/2} a^n / sqrt(n!). Truncation-guarded.
QuantumState coherent_state(const SpacePtr& space, const std::string& subsystem,
                            cxd alpha);

/// Pure state with an arbitrary transmon superposition sum_l c_l |l> and the
/// other subsystems in their ground levels.
QuantumState product_state(const SpacePtr& space, const std::string& subsystem,
                           const Eigen::VectorXcd& amplitudes);

QuantumState apply_unitary(const QuantumState& state, const Operator& u);

/// Projects one subsystem onto |level>. Returns the Born probability and the
/// normalized post-state (subsystem left in |level>).
struct ProjectionResult {
    double probability = 0.0;
    QuantumState post_state;
};
ProjectionResult project_subsystem(const QuantumState& state,
                                   const std::string& subsystem, int level);

/// Replaces a subsystem with the pure level |level> after tracing it out
/// (ideal reset of that subsystem).
QuantumState reset_subsystem(const QuantumState& state, const std::string& subsystem,
                             int level);

/// Statistical mixture sum_i w_i rho_i (weights need not be normalized).
QuantumState mix(const std::vector<std::pair<double, QuantumState>>& parts);

} // namespace cavitysim
