#pragma once

#include <Eigen/Dense>

#include "conelab/jordan.hpp"
#include "conelab/rng.hpp"

namespace conelab::testutil {

inline Eigen::VectorXd random_vector(int n, Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = rng.gauss();
  return v;
}

inline jordan::Element random_element(const jordan::Algebra& alg, Rng& rng) {
  return jordan::make(alg, random_vector(alg.ambient_dim(), rng));
}

// random element with spectrum inside [-1, 1]
inline jordan::Element random_contraction(const jordan::Algebra& alg, Rng& rng) {
  jordan::Element a = random_element(alg, rng);
  const auto s = jordan::spectral_decompose(a);
  const double r = s.eigenvalues.cwiseAbs().maxCoeff();
  if (r > 0.0) a = jordan::scale(1.0 / (r * (1.0 + 0.5 * rng.uniform())), a);
  return a;
}

// random element of the cone of squares
inline jordan::Element random_cone_element(const jordan::Algebra& alg, Rng& rng) {
  jordan::Element a = random_element(alg, rng);
  return jordan::product(a, a);
}

inline Eigen::MatrixXd random_matrix(int r, int c, Rng& rng) {
  Eigen::MatrixXd m(r, c);
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < c; ++j) m(i, j) = rng.gauss();
  return m;
}

}  // namespace conelab::testutil
