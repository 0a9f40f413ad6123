#pragma once

#include <Eigen/Dense>
#include <optional>
#include <string>
#include <vector>

#include "conelab/norms.hpp"
#include "conelab/rng.hpp"
#include "conelab/serialize.hpp"
#include "conelab/tensor.hpp"

namespace conelab::cones {

inline constexpr double kDefaultTol = 1e-9;

enum class Kind { lorentz, psd, ell1, ellinf, simplex };

const char* to_string(Kind k);
Kind kind_from_string(const std::string& s);

// Handle to one of the concrete proper cones used throughout. All of them
// are realized self-paired in coordinates, so the dual pairing is the
// standard inner product and dual() only swaps the handle kind.
struct Handle {
  Kind kind;
  int param;  // n for lorentz/simplex, d for psd, k for ell1/ellinf

  static Handle lorentz(int n) { return {Kind::lorentz, n}; }
  static Handle psd(int d) { return {Kind::psd, d}; }
  static Handle ell1(int k) { return {Kind::ell1, k}; }
  static Handle ellinf(int k) { return {Kind::ellinf, k}; }
  static Handle simplex(int n) { return {Kind::simplex, n}; }

  int ambient_dim() const;
  bool operator==(const Handle&) const = default;
};

Handle dual(const Handle& c);

double dual_pairing(const Eigen::VectorXd& phi, const Eigen::VectorXd& x);

// membership with relative tolerance (zero is in every cone)
bool in_cone(const Handle& c, const Eigen::VectorXd& x, double tol = kDefaultTol);

// signed distance-style margin: >= 0 inside (up to tolerance semantics of
// the kind); used by membership and certificates
double cone_margin(const Handle& c, const Eigen::VectorXd& x);

struct LinearMapDense {
  Eigen::MatrixXd matrix;
  Handle domain;
  Handle codomain;
};

LinearMapDense make_map(Eigen::MatrixXd m, Handle domain, Handle codomain);

// --- isotropic and central maps ---------------------------------------------

struct IsotropicMap {
  double alpha = 0.0;
  double beta = 0.0;
  int n = 0;  // base dimension; acts on R^{n+1}

  Eigen::MatrixXd as_matrix() const;
};

// exact twirl of a square map on R^{n+1}: alpha = L(0,0), beta = mean of the
// remaining diagonal
IsotropicMap twirl(const Eigen::MatrixXd& L);

// Monte-Carlo average of conj(g~, L) over Haar-random rotations of the base
Eigen::MatrixXd twirl_monte_carlo(const Eigen::MatrixXd& L, int samples, Rng& rng);

Eigen::MatrixXd haar_rotation(int n, Rng& rng);

bool isotropic_positive(const IsotropicMap& m, double tol = kDefaultTol);
bool isotropic_eb(const IsotropicMap& m, double tol = kDefaultTol);

bool central_positive(double alpha, const Eigen::MatrixXd& P, const norms::Space& X,
                      const norms::Space& Y, double tol = kDefaultTol);

struct CentralEbResult {
  bool eb = false;
  bool exact = true;  // false when only nuclear-norm bounds were available
  double nuclear_lower = 0.0;
  double nuclear_upper = 0.0;
};

CentralEbResult central_eb(double alpha, const Eigen::MatrixXd& P, const norms::Space& X,
                           const norms::Space& Y, double tol = kDefaultTol);

// (1/2)(L + A L A) with A = diag(1, -1, ..., -1); kills the off-diagonal
// blocks and preserves the trace
Eigen::MatrixXd central_symmetrize(const Eigen::MatrixXd& L);

// --- maximal tensor product with an ell1 factor -------------------------------

inline constexpr int kMaxSignEnumeration = 20;

struct MaxMembership {
  bool member = false;
  std::optional<Eigen::VectorXi> violating_sign;
};

// x0 + sum_i s_i x_i in C for all sign vectors s; 2^k enumeration
MaxMembership max_membership_ell1_factor(const Handle& c, const Eigen::VectorXd& x0,
                                         const std::vector<Eigen::VectorXd>& xs,
                                         double tol = kDefaultTol);

// --- minimal tensor product via explicit generators ---------------------------

struct MinDecompositionResult {
  bool decomposed = false;
  double residual = 0.0;
  Eigen::VectorXd coefficients;
};

// nonnegative-combination solve of z against columns of `generators`
MinDecompositionResult min_membership_by_generators(const Eigen::VectorXd& z,
                                                    const Eigen::MatrixXd& generators,
                                                    double tol = 1e-10);

// extreme rays (1, s), s in {-1,1}^k of the ellinf cone, as columns
Eigen::MatrixXd ellinf_extreme_rays(int k);

// rays (1, +-e_i) of the ell1 cone, as columns
Eigen::MatrixXd ell1_extreme_rays(int k);

// --- certificates -------------------------------------------------------------

struct Certificate {
  std::string kind;
  json payload;
};

struct CheckResult {
  bool ok = false;
  std::string detail;
};

// pairing certificate <w, P^{(x)k} x> < 0 after the claimed memberships;
// claims that have no decision procedure at this size are spot-checked by
// sampling and recorded as assumptions in the payload
Certificate certify_not_annihilating(const LinearMapDense& P, int k, const Tensor& x,
                                     const Tensor& w, double tol = kDefaultTol,
                                     std::uint64_t seed = 1);

Certificate max_violation_certificate(const Handle& c, const Eigen::VectorXd& x0,
                                      const std::vector<Eigen::VectorXd>& xs,
                                      const Eigen::VectorXi& sign);

// recompute every claim in the payload
CheckResult verify_certificate(const Certificate& cert);

json to_json(const Certificate& cert);
Certificate certificate_from_json(const json& j);

}  // namespace conelab::cones
