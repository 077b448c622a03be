#pragma once

#include <Eigen/Core>
#include <Eigen/Dense>

namespace reeblab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using CVec = Eigen::VectorXcd;
using CMat = Eigen::MatrixXcd;

// Read-only views that bind vectors, blocks and expressions without copies.
using VecRef = Eigen::Ref<const Eigen::VectorXd>;
using MatRef = Eigen::Ref<const Eigen::MatrixXd>;

}  // namespace reeblab
