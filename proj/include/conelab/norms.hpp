#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "conelab/rng.hpp"
#include "conelab/tensor.hpp"

namespace conelab::norms {

struct Space {
  enum class Kind { l1, l2, linf };
  Kind kind;
  int n;

  static Space l1(int n) { return {Kind::l1, n}; }
  static Space l2(int n) { return {Kind::l2, n}; }
  static Space linf(int n) { return {Kind::linf, n}; }

  bool operator==(const Space&) const = default;
};

Space dual(const Space& X);
const char* to_string(Space::Kind k);
Space::Kind space_kind_from_string(const std::string& s);

double vector_norm(const Eigen::VectorXd& v, const Space& X);

// A computed norm value. When exact, lower == upper == value; otherwise the
// two endpoints bracket the true value and `value` is the sound side for the
// quantity's typical use (lower for sup-type, upper for inf-type norms).
struct NormResult {
  double value = 0.0;
  bool exact = false;
  double lower = 0.0;
  double upper = 0.0;
};

inline constexpr double kEnumBudget = 4.0e6;  // sign-vector enumeration cap

// injective norm on X^{(x)k}. Exact for l1 (dual extreme point enumeration),
// l2 with k <= 2, and linf; multi-start alternating maximization lower bound
// otherwise.
NormResult injective_norm(const Tensor& z, const Space& X);

// projective norm on X^{(x)k}. Exact for l1 (entrywise) and l2 with k <= 2
// (trace norm); otherwise greedy rank-one peeling upper bound and a duality
// lower bound.
NormResult projective_norm(const Tensor& z, const Space& X);

// operator norm |P|_{X->Y}; exact for every l_p pair handled here (some via
// sign enumeration, budget-guarded)
double operator_norm(const Eigen::MatrixXd& P, const Space& X, const Space& Y);

// nuclear norm; exact for X = l1, Y = linf, or l2 -> l2, else two-sided bounds
NormResult nuclear_norm(const Eigen::MatrixXd& P, const Space& X, const Space& Y);

struct WitnessRecord {
  std::string source;
  double value = 0.0;
};

struct TauBound {
  int k = 1;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<WitnessRecord> witnesses;
};

// bounds on tau_k(T) = |T^{(x)k}|^{1/k} between the injective and projective
// tensor norms; lower bounds come from evaluated witness tensors, the upper
// bound from the nuclear norm
TauBound tau_bounds(const Eigen::MatrixXd& T, const Space& X, const Space& Y, int k);

// orthogonal projection onto span{e_0^{(x)k}} (+) span{pure X block} inside
// (R^{n+1})^{(x)k}; the direct coordinate form
Tensor project_Xk(const Tensor& z);

// the same projection assembled as the product of the pairwise symmetrizers
// (1/2)(id (x) id + A (x) A)
Tensor project_Xk_pairwise(const Tensor& z);

// --- two-qubit hat/check memberships -----------------------------------------

struct ProductVectorCertificate {
  Eigen::VectorXcd y, z;
  double value = 0.0;
};

struct HatDecomposition {
  // separable part: sum_i weight_i |y_i><y_i| (x) |z_i><z_i|
  std::vector<double> weights;
  std::vector<Eigen::Vector2cd> ys, zs;
  Eigen::MatrixXcd separable;  // assembled S
  Eigen::MatrixXcd remainder;  // W = Z - S
  double remainder_trace = 0.0;
  double remainder_moment_opnorm = 0.0;
};

struct QubitHatCheckResult {
  bool in_check = false;
  // max-membership side of the check test
  bool block_positive = true;                              // heuristic: no violation found
  std::optional<ProductVectorCertificate> max_violation;   // sound refutation when present
  double attained_min = 0.0;
  // trace-norm side
  double trace = 0.0;
  double moment_block_trace_norm = 0.0;
  // hat side: a found decomposition certifies membership; absence means unknown
  std::optional<HatDecomposition> in_hat_evidence;
};

// Z is a Hermitian 4x4 matrix on C^2 (x) C^2
QubitHatCheckResult hat_check_membership_qubit(const Eigen::MatrixXcd& Z, double tol = 1e-9,
                                               std::uint64_t seed = 1);

// moment matrix M_{ij} = Tr[Z (sigma_i (x) sigma_j)], 4x4 real for Hermitian Z
Eigen::Matrix4d qubit_moments(const Eigen::MatrixXcd& Z);

// --- empirical transfer check -------------------------------------------------

struct TransferReport {
  bool applicable = false;  // tau_k upper bound <= alpha
  int samples = 0;
  int violations = 0;
  double worst_margin = 0.0;  // min over samples of alpha^k z0 - pi-lower
  double tau_upper = 0.0;
};

// samples w = z0 e_0^{(x)k} + z with z0 >= eps-norm of z and tests the
// projective-norm consequence |P^{(x)k} z|_pi <= alpha^k z0. Violations are
// flagged only from sound lower bounds.
TransferReport transfer_check(double alpha, const Eigen::MatrixXd& P, const Space& X,
                              const Space& Y, int k, int samples, Rng& rng);

}  // namespace conelab::norms
