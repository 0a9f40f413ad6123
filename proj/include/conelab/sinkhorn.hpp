#pragma once

#include <Eigen/Dense>
#include <vector>

#include "conelab/cones.hpp"
#include "conelab/jordan.hpp"

namespace conelab::sinkhorn {

// Result of bringing a cone-interior-mapping positive map P to the normal
// form P~ = B o P o A with P~(e1) = e2 and P~*(e2) = lambda e1. When the two
// identity elements have equal norms (all the cases driven here) lambda = 1
// and P~ is unital and trace-preserving.
struct ScalingResult {
  Eigen::MatrixXd A, B;         // quadratic representations, automorphisms
  jordan::Element sqrt_x;       // generator of A
  jordan::Element inv_sqrt_y;   // generator of B
  Eigen::MatrixXd P_tilde;
  int iterations = 0;
  bool converged = false;
  double residual_unital = 0.0;  // |P~(e1) - e2|
  double residual_trace = 0.0;   // |P~*(e2) - lambda_expected e1|
  double lambda = 0.0;
  double lambda_expected = 1.0;  // |e2|^2 / |e1|^2
  std::vector<double> trajectory;  // fixed-point residuals per iteration
  double interiority_margin = 0.0;
  bool damped = false;
};

struct SinkhornOptions {
  double tol = 1e-9;
  int max_iter = 10000;
  std::uint64_t seed = 1;
  int boundary_samples = 100;
};

// P maps coordinates of `dom` to coordinates of `cod` and must send the cone
// strictly inside the target cone (checked on a frame of the identity plus
// sampled boundary points). Throws on an interiority violation; reports
// non-convergence through `converged`.
ScalingResult sinkhorn_scale(const Eigen::MatrixXd& P, const jordan::Algebra& dom,
                             const jordan::Algebra& cod, const SinkhornOptions& opts = {});

// --- constructive ell1 entanglement-breaking decomposition --------------------

struct MinDecomposition {
  // terms (c, v): c in the ell1 cone on R^{k+1}, v in the symmetric cone
  std::vector<std::pair<Eigen::VectorXd, jordan::Element>> terms;
  double reconstruction_residual = 0.0;
  double lemma_margin = 0.0;  // min eigenvalue of sqrt(k) e - sum |x_i'|
  bool regularized = false;
  std::vector<jordan::Element> target;  // (id (x) I_sqrt(k)) applied to the input
};

// Decomposes (id (x) I_sqrt(k))(x0, x1..xk) into the minimal tensor product,
// after checking maximal-tensor-product membership by sign enumeration.
// Throws (with the violating sign vector in the message) when the input is
// not in the maximal cone; boundary x0 is regularized once by adding
// 1e-8 |x0| e.
MinDecomposition ell1_break_decompose(const std::vector<jordan::Element>& x, double tol = 1e-9);

cones::Certificate decomposition_certificate(const MinDecomposition& d);

// evaluates both order-interval implications for a concrete element
struct IntervalReport {
  bool premise_both_sides = false;  // e + x and e - x in the cone
  bool conclusion_square = false;   // e - x^2 in the cone
  bool premise_square = false;      // e - x^2 in the cone
  bool conclusion_linear = false;   // e - x in the cone
  double margin_square = 0.0;
  double margin_linear = 0.0;
};

IntervalReport lemma_interval_check(const jordan::Element& x, double tol = 1e-9);

// cone handle matching a jordan algebra's cone of squares
cones::Handle cone_of(const jordan::Algebra& alg);

}  // namespace conelab::sinkhorn
