#pragma once

#include <optional>
#include <vector>

#include "cavitysim/lindblad.hpp"
#include "cavitysim/states.hpp"

namespace cavitysim {

/// Inputs of one Lindblad evolution
///   d rho/dt = -i[H(t), rho] + sum_k rate_k D[L_k] rho,
/// with H(t) the static Hamiltonian plus the co-rotating drive terms.
struct EvolutionSpec {
    std::optional<Operator> hamiltonian;
    std::vector<DriveTerm> drives;
    std::vector<CollapseChannel> collapse;
    double t0 = 0.0;
    double t1 = 0.0;
    double rel_tol = 1e-8;
    double abs_tol = 1e-10;
    /// 0 selects min(1/(10 max drive rate), span/100).
    double max_step = 0.0;

    void validate(const QuantumState& state) const;
};

/// Expectation values sampled along an evolution.
struct Trajectory {
    std::vector<double> times;
    Eigen::MatrixXd values; // one row per sample time, one column per observable
};

/// Adaptive embedded Runge-Kutta (Dormand-Prince 5(4)) integration. Pure
/// states without collapse channels evolve as vectors; anything else as a
/// density matrix with Hermitian symmetrization each accepted step. Trace
/// drift beyond 1e-6 raises convergence_error.
QuantumState evolve(const QuantumState& state, const EvolutionSpec& spec);

QuantumState evolve_sampled(const QuantumState& state, const EvolutionSpec& spec,
                            const std::vector<double>& sample_times,
                            const std::vector<Operator>& observables,
                            Trajectory& trajectory);

/// Drive-free evolution for a time `duration` under a static Hamiltonian and
/// collapse channels, solved in closed form when the structure allows it:
///   - everything diagonal: element-wise exponential map,
///   - no collapse: dense unitary exponential,
///   - small spaces: exponential of the full superoperator,
///   - otherwise: the adaptive integrator.
QuantumState evolve_idle(const QuantumState& state, const Operator& hamiltonian,
                         const std::vector<CollapseChannel>& channels,
                         double duration, double rel_tol = 1e-8,
                         double abs_tol = 1e-10);

} // namespace cavitysim
