#include "conelab/blockpos.hpp"

#include <limits>

namespace conelab {

double product_vector_min(const Eigen::MatrixXcd& M, int dA, int dB, int starts, int steps,
                          Rng& rng, Eigen::VectorXcd* best_y, Eigen::VectorXcd* best_z) {
  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXcd y(dA), z(dB);
  for (int s = 0; s < starts; ++s) {
    for (int i = 0; i < dA; ++i) y[i] = std::complex<double>(rng.gauss(), rng.gauss());
    for (int i = 0; i < dB; ++i) z[i] = std::complex<double>(rng.gauss(), rng.gauss());
    y.normalize();
    z.normalize();
    double val = std::numeric_limits<double>::infinity();
    for (int it = 0; it < steps; ++it) {
      // fix y: quadratic form in z is z^dag B z with B = (y (x) id)^dag M (y (x) id)
      Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(dB, dB);
      for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dA; ++b) {
          const std::complex<double> w = std::conj(y[a]) * y[b];
          if (w == std::complex<double>(0, 0)) continue;
          B += w * M.block(a * dB, b * dB, dB, dB);
        }
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esz(B);
      z = esz.eigenvectors().col(0);
      Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(dA, dA);
      for (int a = 0; a < dA; ++a)
        for (int b = 0; b < dA; ++b)
          C(a, b) = (z.adjoint() * M.block(a * dB, b * dB, dB, dB) * z)(0, 0);
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> esy(C);
      y = esy.eigenvectors().col(0);
      const double nv = esy.eigenvalues()[0];
      if (it > 2 && std::abs(nv - val) < 1e-14 * std::max(1.0, std::abs(nv))) {
        val = nv;
        break;
      }
      val = nv;
    }
    if (val < best) {
      best = val;
      if (best_y) *best_y = y;
      if (best_z) *best_z = z;
    }
  }
  return best;
}

}  // namespace conelab
