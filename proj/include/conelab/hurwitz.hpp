#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

#include "conelab/rng.hpp"
#include "conelab/tensor.hpp"

namespace conelab::hurwitz {

// Signed permutation matrix: column c holds sign[c] in row img[c]. All
// family matrices built here are of this form, which keeps every family
// identity exact integer arithmetic and makes long products O(N).
struct SignedPerm {
  std::vector<int> img;
  std::vector<std::int8_t> sign;

  int size() const { return static_cast<int>(img.size()); }
  static SignedPerm identity(int n);
  Eigen::MatrixXd dense() const;
};

// a * b as matrices
SignedPerm compose(const SignedPerm& a, const SignedPerm& b);

// Radon-Hurwitz function rho(N): writing the 2-adic valuation of N as
// 4a + b with b in {0,1,2,3}, rho(N) = 8a + 2^b.
int radon_hurwitz(int N);

// minimal N admitting n orthonormal matrices A_1..A_n with
// Theta(x)^T Theta(x) = |x|^2 id; supported for 1 <= n <= 16
int N_of(int n);

// Family A_1..A_n in M_N, N = N_of(n): A_1 = id, the rest antisymmetric,
// pairwise anticommuting, entries in {-1, 0, 1}. Built from the left
// multiplication operators of the division algebras plus tensor doubling.
struct Family {
  int n = 0;
  int N = 0;
  std::vector<SignedPerm> mats;

  std::vector<Eigen::MatrixXd> dense() const;
  Eigen::MatrixXd theta(const Eigen::VectorXd& x) const;  // sum x_i A_i
};

Family build_family(int n);

// z_{n,k}: the (i0,j0) slice of largest squared norm of the tensor family
//   z(i,j) = sum_l [Theta(e_{l_1}) ... Theta(e_{l_k})]_{ij} e_{l_1} (x) ... (x) e_{l_k}.
// Entries are in {-1, 0, 1}; sq_norm is an exact integer count.
struct WitnessTensor {
  int n = 0;
  int k = 0;
  int N = 0;
  Tensor coords;       // in (R^n)^{(x)k}, row-major
  double sq_norm = 0;  // = |coords|^2, >= n^k / N
  int i0 = 0, j0 = 0;
  double total_sq_norm = 0;  // sum over all (i,j), equals N * n^k
};

// guard on n^k * N^2 scan cost
inline constexpr double kWitnessBudget = 1e8;

WitnessTensor witness_tensor(int n, int k);

// z+- = e_0^{(x)k} +- z_{n,k} embedded into (R^{n+1})^{(x)k}
struct WitnessPair {
  Tensor z_plus;
  Tensor z_minus;
  WitnessTensor base;
};

WitnessPair lorentz_witness_pair(int n, int k);

// <z^s, I_{alpha,beta}^{(x)k} z^+> = alpha^k + s beta^k |z|^2 for s = +-1
double witness_pairing(const WitnessPair& wp, double alpha, double beta, int sign);

// necessary condition alpha >= |beta| n N^{-1/k} for I_{alpha,beta} to stay
// annihilating at level k; the k -> infinity row is alpha >= |beta| n
struct EbBoundRow {
  int k;  // 0 marks the limit row
  double bound;
  bool satisfied;
};

std::vector<EbBoundRow> eb_bound_from_witness(int n, double alpha, double beta,
                                              const std::vector<int>& k_list);

}  // namespace conelab::hurwitz
