#pragma once

#include <Eigen/Dense>

namespace nimfa {

// Dense row-major storage; networks are desk-scale.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

}  // namespace nimfa
