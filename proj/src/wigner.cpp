#include "cavitysim/wigner.hpp"

#include <cmath>
#include <numbers>

namespace cavitysim {

std::vector<double> wigner(const QuantumState& state, const std::string& subsystem,
                           const std::vector<cxd>& points,
                           WignerConvention convention) {
    const SpacePtr& sp = state.space();
    const int k = sp->index_of(subsystem);
    const Eigen::VectorXd signs = parity_signs(sp, subsystem);
    const double scale =
        convention == WignerConvention::two_over_pi ? 2.0 / std::numbers::pi : 1.0;

    std::vector<double> values;
    values.reserve(points.size());
    for (const cxd& beta : points) {
        require_truncation_guard(std::norm(beta), sp->dim(k), "wigner");
        // Tr[rho D P D^dag] = sum_n (-1)^n <n| D^dag rho D |n>, evaluated by
        // displacing the state by -beta.
        const Operator d = displacement(sp, subsystem, -beta);
        double value = 0.0;
        if (state.is_pure()) {
            Eigen::VectorXcd phi = d.mat * state.vector();
            for (int i = 0; i < phi.size(); ++i)
                value += signs(i) * std::norm(phi(i));
        } else {
            Eigen::MatrixXcd moved =
                d.mat * state.density_matrix() * d.mat.adjoint();
            for (int i = 0; i < moved.rows(); ++i)
                value += signs(i) * moved(i, i).real();
        }
        values.push_back(scale * value);
    }
    return values;
}

double wigner_at(const QuantumState& state, const std::string& subsystem, cxd point,
                 WignerConvention convention) {
    return wigner(state, subsystem, {point}, convention)[0];
}

} // namespace cavitysim
