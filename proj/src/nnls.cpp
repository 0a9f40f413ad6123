#include "conelab/nnls.hpp"

#include <vector>

namespace conelab {

NnlsResult nnls(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, int max_iter, double tol) {
  const int n = static_cast<int>(A.cols());
  if (max_iter <= 0) max_iter = 6 * n + 30;
  NnlsResult res;
  res.x = Eigen::VectorXd::Zero(n);
  std::vector<bool> passive(static_cast<std::size_t>(n), false);

  auto solve_passive = [&](Eigen::VectorXd& z) {
    std::vector<int> idx;
    for (int j = 0; j < n; ++j)
      if (passive[static_cast<std::size_t>(j)]) idx.push_back(j);
    z = Eigen::VectorXd::Zero(n);
    if (idx.empty()) return;
    Eigen::MatrixXd Ap(A.rows(), static_cast<Eigen::Index>(idx.size()));
    for (std::size_t c = 0; c < idx.size(); ++c) Ap.col(static_cast<Eigen::Index>(c)) = A.col(idx[c]);
    Eigen::VectorXd zp = Ap.colPivHouseholderQr().solve(b);
    for (std::size_t c = 0; c < idx.size(); ++c) z[idx[c]] = zp[static_cast<Eigen::Index>(c)];
  };

  Eigen::VectorXd w = A.transpose() * (b - A * res.x);
  const double scale = std::max(1.0, b.norm());
  for (int iter = 0; iter < max_iter; ++iter) {
    int best = -1;
    double bestw = tol * scale;
    for (int j = 0; j < n; ++j)
      if (!passive[static_cast<std::size_t>(j)] && w[j] > bestw) {
        bestw = w[j];
        best = j;
      }
    if (best < 0) break;
    passive[static_cast<std::size_t>(best)] = true;

    Eigen::VectorXd z;
    solve_passive(z);
    int guard = 0;
    while (guard++ < max_iter) {
      double min_passive = 0.0;
      bool neg = false;
      for (int j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) neg = true;
      (void)min_passive;
      if (!neg) break;
      // step back to the boundary and drop the blocking coordinates
      double alpha = 1.0;
      for (int j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && z[j] <= 0.0) {
          const double denom = res.x[j] - z[j];
          if (denom > 0.0) alpha = std::min(alpha, res.x[j] / denom);
        }
      res.x += alpha * (z - res.x);
      for (int j = 0; j < n; ++j)
        if (passive[static_cast<std::size_t>(j)] && res.x[j] <= tol * scale) {
          passive[static_cast<std::size_t>(j)] = false;
          res.x[j] = 0.0;
        }
      solve_passive(z);
    }
    res.x = z;
    for (int j = 0; j < n; ++j)
      if (res.x[j] < 0.0) res.x[j] = 0.0;
    w = A.transpose() * (b - A * res.x);
  }
  res.residual = (A * res.x - b).norm();
  res.converged = true;
  return res;
}

}  // namespace conelab
