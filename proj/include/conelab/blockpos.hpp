#pragma once

#include <Eigen/Dense>

#include "conelab/rng.hpp"

namespace conelab {

// Heuristic minimum of <y (x) z | M | y (x) z> over unit product vectors,
// for Hermitian M on C^{dA} (x) C^{dB}. Alternates exact smallest-eigenvector
// updates in each factor (monotone), with multi-start. A negative value is a
// verifiable witness against block positivity; a nonnegative value is only
// evidence for it.
double product_vector_min(const Eigen::MatrixXcd& M, int dA, int dB, int starts, int steps,
                          Rng& rng, Eigen::VectorXcd* best_y = nullptr,
                          Eigen::VectorXcd* best_z = nullptr);

}  // namespace conelab
