#pragma once

#include <Eigen/Dense>
#include <array>
#include <vector>

namespace conelab::compalg {

enum class AlgKind { R, C, Csplit, H, O };

const char* to_string(AlgKind k);
AlgKind alg_kind_from_string(const std::string& s);

// Real composition algebra: unital algebra with a nondegenerate quadratic
// form q satisfying q(x*y) = q(x) q(y). The five kinds handled here are the
// division algebras R, C, H, O (built by Cayley-Dickson doubling) and the
// split complex numbers with (x,y)*(x',y') = (xx'+yy', xy'+x'y),
// q(x,y) = x^2 - y^2. All basis products are signed basis vectors.
struct CompositionAlgebra {
  AlgKind kind;
  int dim;
  // table[i][j] = (k, s) meaning e_i * e_j = s * e_k
  std::vector<std::vector<std::pair<int, int>>> table;
  Eigen::VectorXd qform;  // diagonal signature of q

  Eigen::VectorXd multiply(const Eigen::VectorXd& x, const Eigen::VectorXd& y) const;
  double q(const Eigen::VectorXd& x) const;

  // multiplication tensor as a dim x dim^2 matrix, column (i,j) = e_i * e_j
  Eigen::MatrixXd mult_matrix() const;
};

const CompositionAlgebra& algebra(AlgKind kind);

// The direct-sum cone L = {(x1, x2) : q2(x2) <= q1(x1), first coordinate >= 0}
// for alg1 in {R, Csplit} and alg2 a division algebra. In these coordinates
// (signature already diagonal with the order unit first) L equals the Lorentz
// cone L_N for N = dim(alg1) + dim(alg2) - 1, so the stored change of basis
// is the identity.
struct ProtocolCone {
  AlgKind alg1;
  AlgKind alg2;
  int n;  // dim(alg2)
  int N;  // dim of the Lorentz cone

  static ProtocolCone make(AlgKind a1, AlgKind a2);
};

// matrix of m_{A1} (+) m_{A2} : R^{N+1} (x) R^{N+1} -> R^{N+1}
Eigen::MatrixXd direct_sum_map(const ProtocolCone& pc);

// one protocol iteration on isotropic parameters (closed form)
std::pair<double, double> protocol_step(const ProtocolCone& pc, double alpha, double beta);

// the same step computed by twirling (m (+) m) o I^{(x)2} o (m (+) m)^*;
// used as a cross-check of the closed form
std::pair<double, double> protocol_step_via_twirl(const ProtocolCone& pc, double alpha,
                                                  double beta);

// normalized iteration beta -> beta'/alpha'
double protocol_map(const ProtocolCone& pc, double beta);

// largest starting ratio that the iteration does not push upward; the unique
// root of protocol_map(beta) - beta in (0, 1], found by bisection
double protocol_threshold(const ProtocolCone& pc, double tol = 1e-12);

std::vector<double> protocol_trajectory(const ProtocolCone& pc, double beta0, int steps);

}  // namespace conelab::compalg
