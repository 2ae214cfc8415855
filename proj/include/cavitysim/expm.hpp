#pragma once

#include <Eigen/Dense>

namespace cavitysim {

/// Dense matrix exponential by scaling and squaring with a Pade approximant
/// whose degree (3/5/7/9/13) is chosen from the 1-norm of the argument.
Eigen::MatrixXcd expm(const Eigen::MatrixXcd& a);

} // namespace cavitysim
