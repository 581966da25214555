#pragma once

#include <Eigen/Dense>

namespace rydcp::numeric {

struct LeastSquaresSolution {
  Eigen::VectorXd coefficients;
  Eigen::VectorXd residuals;
  int rank = 0;
};

/// Column-scaled, column-pivoted QR solution of min |A x - b|.
/// Throws InvalidArgument when A is rank deficient.
LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs);

}  // namespace rydcp::numeric
