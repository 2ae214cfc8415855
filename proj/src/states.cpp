#include "cavitysim/states.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>

namespace cavitysim {

QuantumState QuantumState::pure(SpacePtr space, Eigen::VectorXcd psi) {
    if (psi.size() != space->total_dim())
        throw validation_error("QuantumState: vector dimension != space dimension");
    QuantumState s;
    s.space_ = std::move(space);
    s.pure_ = true;
    s.psi_ = std::move(psi);
    return s;
}

QuantumState QuantumState::density(SpacePtr space, Eigen::MatrixXcd rho) {
    if (rho.rows() != space->total_dim() || rho.cols() != space->total_dim())
        throw validation_error("QuantumState: matrix dimension != space dimension");
    QuantumState s;
    s.space_ = std::move(space);
    s.pure_ = false;
    s.rho_ = std::move(rho);
    return s;
}

const Eigen::VectorXcd& QuantumState::vector() const {
    if (!pure_) throw validation_error("QuantumState: not stored as a pure vector");
    return psi_;
}

const Eigen::MatrixXcd& QuantumState::density_matrix() const {
    if (pure_) throw validation_error("QuantumState: stored as a pure vector");
    return rho_;
}

Eigen::MatrixXcd QuantumState::to_density() const {
    if (pure_) return psi_ * psi_.adjoint();
    return rho_;
}

void QuantumState::demote_to_density() {
    if (!pure_) return;
    rho_ = psi_ * psi_.adjoint();
    psi_.resize(0);
    pure_ = false;
}

double QuantumState::trace() const {
    if (pure_) return psi_.squaredNorm();
    return rho_.trace().real();
}

void QuantumState::normalize() {
    const double t = trace();
    if (t <= 0.0) throw validation_error("QuantumState: cannot normalize zero state");
    if (pure_)
        psi_ /= std::sqrt(t);
    else
        rho_ /= t;
}

cxd QuantumState::expectation(const Operator& op) const {
    if (!space_->same_layout(*op.space))
        throw validation_error("expectation: operator on different space");
    if (pure_) return psi_.dot(op.mat * psi_);
    return (op.mat * rho_).eval().trace();
}

double QuantumState::fidelity_to(const QuantumState& pure_target) const {
    if (!pure_target.is_pure())
        throw validation_error("fidelity_to: target must be pure");
    const Eigen::VectorXcd& t = pure_target.vector();
    if (pure_) return std::norm(t.dot(psi_));
    return (t.dot(rho_ * t)).real();
}

void QuantumState::validate() const {
    if (std::abs(trace() - 1.0) > 1e-6)
        throw validation_error("QuantumState: trace deviates from 1 beyond 1e-6");
    if (!pure_) {
        double defect = (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff();
        if (defect > 1e-10)
            throw validation_error("QuantumState: Hermiticity defect beyond 1e-10");
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(rho_,
                                                           Eigen::EigenvaluesOnly);
        if (es.eigenvalues().minCoeff() < -1e-8)
            throw validation_error("QuantumState: negative eigenvalue beyond -1e-8");
    }
}

QuantumState fock_state(const SpacePtr& space, const std::vector<int>& levels) {
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space->total_dim());
    psi(space->basis_index(levels)) = 1.0;
    return QuantumState::pure(space, std::move(psi));
}

QuantumState coherent_state(const SpacePtr& space, const std::string& subsystem,
                            cxd alpha) {
    const int k = space->index_of(subsystem);
    const int d = space->dim(k);
    require_truncation_guard(std::norm(alpha), d, "coherent_state");

    Eigen::VectorXcd amps(d);
    amps(0) = std::exp(-0.5 * std::norm(alpha));
    for (int n = 1; n < d; ++n)
        amps(n) = amps(n - 1) * alpha / std::sqrt(static_cast<double>(n));

    const double deficit = std::abs(1.0 - amps.squaredNorm());
    if (deficit > 1e-8)
        throw truncation_error("coherent_state: retained norm misses 1 by " +
                               std::to_string(deficit));

    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space->total_dim());
    std::vector<int> levels(space->subsystem_count(), 0);
    for (int n = 0; n < d; ++n) {
        levels[k] = n;
        psi(space->basis_index(levels)) = amps(n);
    }
    psi /= psi.norm();
    return QuantumState::pure(space, std::move(psi));
}

QuantumState product_state(const SpacePtr& space, const std::string& subsystem,
                           const Eigen::VectorXcd& amplitudes) {
    const int k = space->index_of(subsystem);
    if (amplitudes.size() != space->dim(k))
        throw validation_error("product_state: amplitude count != subsystem dim");
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(space->total_dim());
    std::vector<int> levels(space->subsystem_count(), 0);
    for (int l = 0; l < space->dim(k); ++l) {
        levels[k] = l;
        psi(space->basis_index(levels)) = amplitudes(l);
    }
    const double n = psi.norm();
    if (std::abs(n - 1.0) > 1e-9)
        throw validation_error("product_state: amplitudes not normalized");
    psi /= n;
    return QuantumState::pure(space, std::move(psi));
}

QuantumState apply_unitary(const QuantumState& state, const Operator& u) {
    if (!state.space()->same_layout(*u.space))
        throw validation_error("apply_unitary: operator on different space");
    if (state.is_pure())
        return QuantumState::pure(state.space(), u.mat * state.vector());
    Eigen::MatrixXcd rho = u.mat * state.density_matrix() * u.mat.adjoint();
    return QuantumState::density(state.space(), std::move(rho));
}

ProjectionResult project_subsystem(const QuantumState& state,
                                   const std::string& subsystem, int level) {
    const SpacePtr& sp = state.space();
    const int k = sp->index_of(subsystem);
    if (level < 0 || level >= sp->dim(k))
        throw validation_error("project_subsystem: level out of range");

    const int n = sp->total_dim();
    ProjectionResult out;
    if (state.is_pure()) {
        Eigen::VectorXcd proj = state.vector();
        for (int i = 0; i < n; ++i)
            if (sp->level_of(i, k) != level) proj(i) = 0.0;
        out.probability = proj.squaredNorm();
        if (out.probability > 0.0) proj /= std::sqrt(out.probability);
        out.post_state = QuantumState::pure(sp, std::move(proj));
        return out;
    }

    Eigen::MatrixXcd rho = state.density_matrix();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (sp->level_of(i, k) != level || sp->level_of(j, k) != level)
                rho(i, j) = 0.0;
    out.probability = rho.trace().real();
    if (out.probability > 0.0) rho /= out.probability;
    out.post_state = QuantumState::density(sp, std::move(rho));
    return out;
}

QuantumState reset_subsystem(const QuantumState& state, const std::string& subsystem,
                             int level) {
    const SpacePtr& sp = state.space();
    const int k = sp->index_of(subsystem);
    const int n = sp->total_dim();

    if (state.is_pure()) {
        // A pure state supported on a single subsystem level stays pure:
        // relabel that level to the reset target.
        const Eigen::VectorXcd& psi = state.vector();
        int support = -1;
        bool single = true;
        for (int i = 0; i < n && single; ++i) {
            if (std::abs(psi(i)) < 1e-14) continue;
            const int l = sp->level_of(i, k);
            if (support == -1)
                support = l;
            else if (l != support)
                single = false;
        }
        if (single && support >= 0) {
            Eigen::VectorXcd out = Eigen::VectorXcd::Zero(n);
            std::vector<int> levels(sp->subsystem_count());
            for (int i = 0; i < n; ++i) {
                if (std::abs(psi(i)) < 1e-300) continue;
                if (sp->level_of(i, k) != support) continue;
                for (int q = 0; q < sp->subsystem_count(); ++q)
                    levels[q] = sp->level_of(i, q);
                levels[k] = level;
                out(sp->basis_index(levels)) = psi(i);
            }
            return QuantumState::pure(sp, std::move(out));
        }
    }

    const Eigen::MatrixXcd rho = state.to_density();

    // Partial trace over the subsystem, then re-tensor with |level><level|.
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (sp->level_of(i, k) != level || sp->level_of(j, k) != level) continue;
            cxd sum = 0.0;
            // Sum rho over all values of subsystem k with the other indices fixed.
            for (int l = 0; l < sp->dim(k); ++l) {
                std::vector<int> li(sp->subsystem_count()), lj(sp->subsystem_count());
                for (int q = 0; q < sp->subsystem_count(); ++q) {
                    li[q] = sp->level_of(i, q);
                    lj[q] = sp->level_of(j, q);
                }
                li[k] = l;
                lj[k] = l;
                sum += rho(sp->basis_index(li), sp->basis_index(lj));
            }
            out(i, j) = sum;
        }
    }
    return QuantumState::density(sp, std::move(out));
}

QuantumState mix(const std::vector<std::pair<double, QuantumState>>& parts) {
    if (parts.empty()) throw validation_error("mix: no states");
    const SpacePtr sp = parts.front().second.space();
    Eigen::MatrixXcd rho =
        Eigen::MatrixXcd::Zero(sp->total_dim(), sp->total_dim());
    double wsum = 0.0;
    for (const auto& [w, s] : parts) {
        if (!s.space()->same_layout(*sp))
            throw validation_error("mix: states on different spaces");
        rho += w * s.to_density();
        wsum += w;
    }
    rho /= wsum;
    return QuantumState::density(sp, std::move(rho));
}

} // namespace cavitysim
