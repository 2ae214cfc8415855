#include "cavitysim/evolve.hpp"

#include <algorithm>
#include <cmath>

#include "cavitysim/expm.hpp"

namespace cavitysim {

namespace {

using Eigen::MatrixXcd;
using Eigen::VectorXcd;

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192,
                 b5 = -2187.0 / 6784, b6 = 11.0 / 84;
// b (order 5) minus bhat (order 4); multiplies the stages in the error term.
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

struct DrivePrepared {
    SparseCxd op;
    SparseCxd op_adj;
    const DriveTerm* term;
};

struct ChannelPrepared {
    SparseCxd l;
    SparseCxd l_adj;
    SparseCxd ldl; // L^dag L
    double rate;
};

struct Generator {
    const SparseCxd* h = nullptr;
    std::vector<DrivePrepared> drives;
    std::vector<ChannelPrepared> channels;

    void density_rhs(double t, const MatrixXcd& rho, MatrixXcd& out) const {
        const cxd mi{0.0, -1.0};
        out.setZero();
        if (h) {
            out.noalias() += mi * ((*h) * rho);
            out.noalias() -= mi * (rho * (*h));
        }
        for (const DrivePrepared& d : drives) {
            const cxd c = d.term->coefficient(t);
            if (c == cxd{0.0, 0.0}) continue;
            out.noalias() += (mi * c) * (d.op * rho);
            out.noalias() += (mi * std::conj(c)) * (d.op_adj * rho);
            out.noalias() -= (mi * c) * (rho * d.op);
            out.noalias() -= (mi * std::conj(c)) * (rho * d.op_adj);
        }
        for (const ChannelPrepared& ch : channels) {
            out.noalias() += ch.rate * (MatrixXcd(ch.l * rho) * ch.l_adj);
            out.noalias() -= (0.5 * ch.rate) * (ch.ldl * rho);
            out.noalias() -= (0.5 * ch.rate) * (rho * ch.ldl);
        }
    }

    void pure_rhs(double t, const VectorXcd& psi, VectorXcd& out) const {
        const cxd mi{0.0, -1.0};
        out.setZero();
        if (h) out.noalias() += mi * ((*h) * psi);
        for (const DrivePrepared& d : drives) {
            const cxd c = d.term->coefficient(t);
            if (c == cxd{0.0, 0.0}) continue;
            out.noalias() += (mi * c) * (d.op * psi);
            out.noalias() += (mi * std::conj(c)) * (d.op_adj * psi);
        }
    }
};

Generator prepare(const EvolutionSpec& spec) {
    Generator g;
    if (spec.hamiltonian) g.h = &spec.hamiltonian->mat;
    for (const DriveTerm& d : spec.drives)
        g.drives.push_back({d.op.mat, SparseCxd(d.op.mat.adjoint()), &d});
    for (const CollapseChannel& ch : spec.collapse) {
        if (ch.rate == 0.0) continue;
        SparseCxd l_adj = ch.op.mat.adjoint();
        g.channels.push_back({ch.op.mat, l_adj, SparseCxd(l_adj * ch.op.mat), ch.rate});
    }
    return g;
}

double auto_max_step(const EvolutionSpec& spec) {
    if (spec.max_step > 0.0) return spec.max_step;
    const double span = spec.t1 - spec.t0;
    double step = span / 100.0;
    for (const DriveTerm& d : spec.drives) {
        const double rate = d.max_rate();
        if (rate > 0.0) step = std::min(step, 1.0 / (10.0 * rate));
    }
    return step;
}

// Weighted rms error norm over matrix/vector entries.
template <typename M>
double error_norm(const M& err, const M& y0, const M& y1, double atol, double rtol) {
    double sum = 0.0;
    const auto* e = err.data();
    const auto* a = y0.data();
    const auto* b = y1.data();
    const long n = err.size();
    for (long i = 0; i < n; ++i) {
        const double scale = atol + rtol * std::max(std::abs(a[i]), std::abs(b[i]));
        const double r = std::abs(e[i]) / scale;
        sum += r * r;
    }
    return std::sqrt(sum / static_cast<double>(n));
}

/// Integrates y through [t0, t1]; Post is called on y after each accepted step.
template <typename M, typename Rhs, typename Post>
void dopri5(M& y, double t0, double t1, double atol, double rtol, double max_step,
            const Rhs& rhs, const Post& post) {
    const double span = t1 - t0;
    if (span <= 0.0) return;

    M k1 = y, k2 = y, k3 = y, k4 = y, k5 = y, k6 = y, k7 = y, ytmp = y, ynew = y,
      err = y;

    double t = t0;
    double h = std::min(max_step, span);
    rhs(t, y, k1);
    bool k1_fresh = true;

    int rejected_in_a_row = 0;
    const double hmin = span * 1e-14;
    const double end_tol = span * 1e-13; // endpoint reached up to roundoff
    while (t1 - t > end_tol) {
        h = std::min(h, t1 - t);
        if (h < hmin)
            throw convergence_error("evolve: step size underflow at t=" +
                                    std::to_string(t));
        if (!k1_fresh) {
            rhs(t, y, k1);
            k1_fresh = true;
        }

        ytmp = y + h * (a21 * k1);
        rhs(t + c2 * h, ytmp, k2);
        ytmp = y + h * (a31 * k1 + a32 * k2);
        rhs(t + c3 * h, ytmp, k3);
        ytmp = y + h * (a41 * k1 + a42 * k2 + a43 * k3);
        rhs(t + c4 * h, ytmp, k4);
        ytmp = y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4);
        rhs(t + c5 * h, ytmp, k5);
        ytmp = y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5);
        rhs(t + h, ytmp, k6);
        ynew = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        rhs(t + h, ynew, k7);

        err = h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double norm = error_norm(err, y, ynew, atol, rtol);

        if (norm <= 1.0) {
            t += h;
            y.swap(ynew);
            post(y);
            // post() may nudge y (symmetrization), so k7 is not reused as k1.
            k1_fresh = false;
            rejected_in_a_row = 0;
            const double factor =
                norm == 0.0 ? 5.0
                            : std::clamp(0.9 * std::pow(norm, -0.2), 0.2, 5.0);
            h = std::min(h * factor, max_step);
        } else {
            ++rejected_in_a_row;
            if (rejected_in_a_row > 60)
                throw convergence_error("evolve: tolerance failure (60 rejects)");
            const double factor = std::clamp(0.9 * std::pow(norm, -0.2), 0.1, 0.9);
            h *= factor;
            k1_fresh = true; // k1 still valid at unchanged t
        }
    }
}

QuantumState evolve_segment(QuantumState state, const EvolutionSpec& spec,
                            const Generator& gen, double t0, double t1) {
    const double max_step = std::min(auto_max_step(spec), t1 - t0);
    if (state.is_pure() && gen.channels.empty()) {
        VectorXcd psi = state.vector();
        dopri5(
            psi, t0, t1, spec.abs_tol, spec.rel_tol, max_step,
            [&](double t, const VectorXcd& y, VectorXcd& out) { gen.pure_rhs(t, y, out); },
            [](VectorXcd&) {});
        const double drift = std::abs(psi.squaredNorm() - 1.0);
        if (drift > 1e-6)
            throw convergence_error("evolve: norm drift " + std::to_string(drift));
        return QuantumState::pure(state.space(), std::move(psi));
    }

    state.demote_to_density();
    MatrixXcd rho = state.density_matrix();
    dopri5(
        rho, t0, t1, spec.abs_tol, spec.rel_tol, max_step,
        [&](double t, const MatrixXcd& y, MatrixXcd& out) { gen.density_rhs(t, y, out); },
        [](MatrixXcd& y) { y = 0.5 * (y + y.adjoint()).eval(); });
    const double drift = std::abs(rho.trace().real() - 1.0);
    if (drift > 1e-6)
        throw convergence_error("evolve: trace drift " + std::to_string(drift));
    return QuantumState::density(state.space(), std::move(rho));
}

bool is_diagonal(const SparseCxd& m) {
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseCxd::InnerIterator it(m, k); it; ++it)
            if (it.row() != it.col() && std::abs(it.value()) > 0.0) return false;
    return true;
}

} // namespace

void EvolutionSpec::validate(const QuantumState& state) const {
    if (t1 <= t0) throw validation_error("EvolutionSpec: t1 must exceed t0");
    if (rel_tol <= 0.0 || abs_tol <= 0.0)
        throw validation_error("EvolutionSpec: tolerances must be > 0");
    auto check_space = [&](const Operator& op, const char* what) {
        if (!state.space()->same_layout(*op.space))
            throw validation_error(std::string("EvolutionSpec: ") + what +
                                   " lives on a different space");
    };
    if (hamiltonian) check_space(*hamiltonian, "hamiltonian");
    for (const DriveTerm& d : drives) check_space(d.op, "drive");
    for (const CollapseChannel& ch : collapse) {
        check_space(ch.op, "collapse operator");
        if (ch.rate < 0.0)
            throw validation_error("EvolutionSpec: collapse rates must be >= 0");
    }
}

QuantumState evolve(const QuantumState& state, const EvolutionSpec& spec) {
    spec.validate(state);
    Generator gen = prepare(spec);
    return evolve_segment(state, spec, gen, spec.t0, spec.t1);
}

QuantumState evolve_sampled(const QuantumState& state, const EvolutionSpec& spec,
                            const std::vector<double>& sample_times,
                            const std::vector<Operator>& observables,
                            Trajectory& trajectory) {
    spec.validate(state);
    Generator gen = prepare(spec);

    trajectory.times = sample_times;
    trajectory.values.resize(static_cast<long>(sample_times.size()),
                             static_cast<long>(observables.size()));

    QuantumState current = state;
    double t = spec.t0;
    for (size_t i = 0; i < sample_times.size(); ++i) {
        const double target = sample_times[i];
        if (target < t - 1e-15 || target > spec.t1 + 1e-12)
            throw validation_error("evolve_sampled: sample times must be ordered "
                                   "and inside the span");
        if (target > t) {
            current = evolve_segment(current, spec, gen, t, target);
            t = target;
        }
        for (size_t j = 0; j < observables.size(); ++j)
            trajectory.values(static_cast<long>(i), static_cast<long>(j)) =
                current.expectation(observables[j]).real();
    }
    if (t < spec.t1) current = evolve_segment(current, spec, gen, t, spec.t1);
    return current;
}

QuantumState evolve_idle(const QuantumState& state, const Operator& hamiltonian,
                         const std::vector<CollapseChannel>& channels,
                         double duration, double rel_tol, double abs_tol) {
    if (duration < 0.0) throw validation_error("evolve_idle: negative duration");
    if (duration == 0.0) return state;
    const int n = state.dim();

    const bool h_diag = is_diagonal(hamiltonian.mat);
    bool all_diag = h_diag;
    for (const CollapseChannel& ch : channels)
        if (ch.rate > 0.0 && !is_diagonal(ch.op.mat)) all_diag = false;

    // Pure state, unitary idle.
    if (channels.empty() ||
        std::all_of(channels.begin(), channels.end(),
                    [](const CollapseChannel& c) { return c.rate == 0.0; })) {
        if (h_diag) {
            Eigen::VectorXcd phases(n);
            for (int i = 0; i < n; ++i) {
                const double e = hamiltonian.mat.coeff(i, i).real();
                phases(i) = std::polar(1.0, -e * duration);
            }
            if (state.is_pure())
                return QuantumState::pure(state.space(),
                                          phases.asDiagonal() * state.vector());
            Eigen::MatrixXcd rho = phases.asDiagonal() * state.to_density() *
                                   phases.conjugate().asDiagonal();
            return QuantumState::density(state.space(), std::move(rho));
        }
        Eigen::MatrixXcd u =
            expm(cxd{0.0, -duration} * Eigen::MatrixXcd(hamiltonian.mat));
        return apply_unitary(state, Operator{state.space(), u.sparseView(), false});
    }

    // Diagonal Hamiltonian and diagonal jump operators close element-wise.
    if (all_diag) {
        Eigen::MatrixXcd rho = state.to_density();
        Eigen::VectorXcd hdiag(n);
        for (int i = 0; i < n; ++i) hdiag(i) = hamiltonian.mat.coeff(i, i);
        std::vector<Eigen::VectorXcd> ldiags;
        std::vector<double> rates;
        for (const CollapseChannel& ch : channels) {
            if (ch.rate == 0.0) continue;
            Eigen::VectorXcd d(n);
            for (int i = 0; i < n; ++i) d(i) = ch.op.mat.coeff(i, i);
            ldiags.push_back(std::move(d));
            rates.push_back(ch.rate);
        }
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                cxd exponent = cxd{0.0, -1.0} * (hdiag(i) - hdiag(j));
                for (size_t k = 0; k < rates.size(); ++k) {
                    const cxd li = ldiags[k](i), lj = ldiags[k](j);
                    exponent += rates[k] * (li * std::conj(lj) -
                                            0.5 * (std::norm(li) + std::norm(lj)));
                }
                rho(i, j) *= std::exp(exponent * duration);
            }
        }
        return QuantumState::density(state.space(), std::move(rho));
    }

    // Small spaces: exponential of the full superoperator.
    if (n <= 16) {
        SparseCxd liouv = build_liouvillian(hamiltonian, channels);
        Eigen::MatrixXcd propagator = expm(duration * Eigen::MatrixXcd(liouv));
        Eigen::MatrixXcd rho = state.to_density();
        Eigen::Map<Eigen::VectorXcd> vec(rho.data(), n * n);
        Eigen::VectorXcd moved = propagator * vec;
        Eigen::MatrixXcd out = Eigen::Map<Eigen::MatrixXcd>(moved.data(), n, n);
        out = 0.5 * (out + out.adjoint()).eval();
        return QuantumState::density(state.space(), std::move(out));
    }

    EvolutionSpec spec;
    spec.hamiltonian = hamiltonian;
    spec.collapse = channels;
    spec.t0 = 0.0;
    spec.t1 = duration;
    spec.rel_tol = rel_tol;
    spec.abs_tol = abs_tol;
    return evolve(state, spec);
}

} // namespace cavitysim
