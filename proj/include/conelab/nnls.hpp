#pragma once

#include <Eigen/Dense>

namespace conelab {

// Lawson-Hanson active-set solve of min |A x - b| subject to x >= 0.
// Small dense problems only.
struct NnlsResult {
  Eigen::VectorXd x;
  double residual = 0.0;
  bool converged = false;
};

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter = 0,
                double tol = 1e-12);

}  // namespace conelab
