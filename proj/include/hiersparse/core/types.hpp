#pragma once
#include <Eigen/Dense>
#include <cstddef>

namespace hiersparse {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;
using Index = Eigen::Index;

} // namespace hiersparse
