#include "rydcp/numeric/least_squares.hpp"

#include "rydcp/error.hpp"

namespace rydcp::numeric {

LeastSquaresSolution solve_least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& rhs) {
  if (design.rows() != rhs.size()) throw InvalidArgument("least squares: dimension mismatch");
  if (design.rows() < design.cols()) {
    throw InvalidArgument("least squares: fewer samples than coefficients (rank deficient)");
  }
  // Basis columns such as n^7 and 1 differ by many orders of magnitude.
  Eigen::VectorXd scale = design.colwise().norm().transpose();
  for (Eigen::Index j = 0; j < scale.size(); ++j) {
    if (scale[j] == 0.0) throw InvalidArgument("least squares: zero basis column (rank deficient)");
  }
  const Eigen::MatrixXd scaled = design * scale.cwiseInverse().asDiagonal();
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(scaled);
  qr.setThreshold(1e-12);
  const int rank = static_cast<int>(qr.rank());
  if (rank < design.cols()) {
    throw InvalidArgument("least squares: design matrix is rank deficient (rank " + std::to_string(rank) +
                          " < " + std::to_string(design.cols()) + ")");
  }
  LeastSquaresSolution out;
  out.coefficients = qr.solve(rhs).cwiseQuotient(scale);
  out.residuals = rhs - design * out.coefficients;
  out.rank = rank;
  return out;
}

}  // namespace rydcp::numeric
