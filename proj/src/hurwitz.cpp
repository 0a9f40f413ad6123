#include "conelab/hurwitz.hpp"

#include <cmath>
#include <stdexcept>

#include "conelab/compalg.hpp"

namespace conelab::hurwitz {

namespace {

// 2x2 building blocks as signed permutations
SignedPerm sp_identity2() { return SignedPerm{{0, 1}, {1, 1}}; }
SignedPerm sp_P() { return SignedPerm{{0, 1}, {1, -1}}; }   // diag(1, -1)
SignedPerm sp_Q() { return SignedPerm{{1, 0}, {1, 1}}; }    // antidiag(1, 1)
SignedPerm sp_R() { return SignedPerm{{1, 0}, {1, -1}}; }   // [[0,-1],[1,0]]

SignedPerm kron(const SignedPerm& a, const SignedPerm& b) {
  const int na = a.size(), nb = b.size();
  SignedPerm out;
  out.img.resize(na * nb);
  out.sign.resize(na * nb);
  for (int i = 0; i < na; ++i)
    for (int j = 0; j < nb; ++j) {
      out.img[i * nb + j] = a.img[i] * nb + b.img[j];
      out.sign[i * nb + j] = static_cast<std::int8_t>(a.sign[i] * b.sign[j]);
    }
  return out;
}

// left multiplication by basis vector e_i of a division algebra, as a signed
// permutation (every product e_i e_j is a signed basis vector)
SignedPerm left_mult(const compalg::CompositionAlgebra& alg, int i) {
  SignedPerm out;
  out.img.resize(alg.dim);
  out.sign.resize(alg.dim);
  for (int j = 0; j < alg.dim; ++j) {
    const auto [k, s] = alg.table[i][j];
    out.img[j] = k;
    out.sign[j] = static_cast<std::int8_t>(s);
  }
  return out;
}

std::vector<SignedPerm> division_family(compalg::AlgKind kind) {
  const auto& alg = compalg::algebra(kind);
  std::vector<SignedPerm> fam;
  fam.reserve(alg.dim);
  for (int i = 0; i < alg.dim; ++i) fam.push_back(left_mult(alg, i));
  return fam;
}

// the antisymmetric anticommuting part of a family (everything past the unit)
std::vector<SignedPerm> skews_of(const std::vector<SignedPerm>& fam) {
  return {fam.begin() + 1, fam.end()};
}

// doubling: skews in M_{2N} from skews in M_N
std::vector<SignedPerm> double_skews(const std::vector<SignedPerm>& skews, int N) {
  std::vector<SignedPerm> out;
  out.reserve(skews.size() + 1);
  const SignedPerm idN = SignedPerm::identity(N);
  for (const auto& s : skews) out.push_back(kron(sp_Q(), s));
  out.push_back(kron(sp_R(), idN));
  return out;
}

// skews in M_{16 N0} from skews in M_{N0}: eight come from the 16-dimensional
// block, the rest ride on a symmetric partner that anticommutes with all of
// them
std::vector<SignedPerm> sixteen_fold_skews(const std::vector<SignedPerm>& skews0, int N0) {
  const std::vector<SignedPerm> oct = skews_of(division_family(compalg::AlgKind::O));  // 7 in M_8
  std::vector<SignedPerm> skews16;
  for (const auto& b : oct) skews16.push_back(kron(sp_Q(), b));
  skews16.push_back(kron(sp_R(), SignedPerm::identity(8)));
  const SignedPerm T = kron(sp_P(), SignedPerm::identity(8));  // symmetric, anticommutes with all

  std::vector<SignedPerm> out;
  const SignedPerm idN0 = SignedPerm::identity(N0);
  for (const auto& c : skews16) out.push_back(kron(c, idN0));
  for (const auto& d : skews0) out.push_back(kron(T, d));
  return out;
}

}  // namespace

SignedPerm SignedPerm::identity(int n) {
  SignedPerm out;
  out.img.resize(n);
  out.sign.assign(n, 1);
  for (int i = 0; i < n; ++i) out.img[i] = i;
  return out;
}

Eigen::MatrixXd SignedPerm::dense() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(size(), size());
  for (int c = 0; c < size(); ++c) m(img[c], c) = sign[c];
  return m;
}

SignedPerm compose(const SignedPerm& a, const SignedPerm& b) {
  const int n = a.size();
  SignedPerm out;
  out.img.resize(n);
  out.sign.resize(n);
  for (int c = 0; c < n; ++c) {
    out.img[c] = a.img[b.img[c]];
    out.sign[c] = static_cast<std::int8_t>(a.sign[b.img[c]] * b.sign[c]);
  }
  return out;
}

int radon_hurwitz(int N) {
  if (N < 1) throw std::invalid_argument("radon_hurwitz: N >= 1");
  int v = 0;
  while (N % 2 == 0) {
    ++v;
    N /= 2;
  }
  const int a = v / 4, b = v % 4;
  return 8 * a + (1 << b);
}

int N_of(int n) {
  if (n < 1 || n > 16) throw std::invalid_argument("N_of: supported range is 1 <= n <= 16");
  for (int N = 1;; N *= 2)
    if (radon_hurwitz(N) >= n) return N;
}

Family build_family(int n) {
  const int N = N_of(n);
  Family fam;
  fam.n = n;
  fam.N = N;

  std::vector<SignedPerm> full;
  if (N <= 8) {
    compalg::AlgKind kind = compalg::AlgKind::R;
    if (N == 2) kind = compalg::AlgKind::C;
    if (N == 4) kind = compalg::AlgKind::H;
    if (N == 8) kind = compalg::AlgKind::O;
    full = division_family(kind);
  } else {
    std::vector<SignedPerm> skews;
    if (N == 16) {
      skews = sixteen_fold_skews({}, 1);
    } else if (N == 32) {
      skews = double_skews(sixteen_fold_skews({}, 1), 16);
    } else if (N == 64) {
      skews = sixteen_fold_skews(skews_of(division_family(compalg::AlgKind::H)), 4);
    } else if (N == 128) {
      skews = sixteen_fold_skews(skews_of(division_family(compalg::AlgKind::O)), 8);
    } else {
      throw std::logic_error("build_family: unexpected N");
    }
    full.push_back(SignedPerm::identity(N));
    for (auto& s : skews) full.push_back(std::move(s));
  }

  if (static_cast<int>(full.size()) < n) throw std::logic_error("build_family: family too small");
  fam.mats.assign(full.begin(), full.begin() + n);
  return fam;
}

std::vector<Eigen::MatrixXd> Family::dense() const {
  std::vector<Eigen::MatrixXd> out;
  out.reserve(mats.size());
  for (const auto& m : mats) out.push_back(m.dense());
  return out;
}

Eigen::MatrixXd Family::theta(const Eigen::VectorXd& x) const {
  if (x.size() != n) throw std::invalid_argument("theta: dimension mismatch");
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(N, N);
  for (int i = 0; i < n; ++i) {
    const auto& m = mats[static_cast<std::size_t>(i)];
    for (int c = 0; c < N; ++c) out(m.img[c], c) += x[i] * m.sign[c];
  }
  return out;
}

WitnessTensor witness_tensor(int n, int k) {
  if (k < 1) throw std::invalid_argument("witness_tensor: k >= 1");
  const Family fam = build_family(n);
  const int N = fam.N;
  const double cost = std::pow(static_cast<double>(n), k) * static_cast<double>(N) * N;
  if (cost > kWitnessBudget) throw std::runtime_error("witness_tensor: budget exceeded");

  // pass 1: per-(i,j) squared norms. The product of k signed permutations
  // has one +-1 entry per column, so each index tuple contributes exactly 1
  // to N of the (i,j) counters.
  Eigen::MatrixXd norms = Eigen::MatrixXd::Zero(N, N);
  std::vector<SignedPerm> stack(static_cast<std::size_t>(k) + 1);
  stack[0] = SignedPerm::identity(N);
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  int depth = 0;
  // iterative DFS over index tuples with shared prefix products
  while (true) {
    while (depth < k) {
      stack[depth + 1] = compose(stack[depth], fam.mats[static_cast<std::size_t>(idx[depth])]);
      ++depth;
    }
    const SignedPerm& prod = stack[k];
    for (int j = 0; j < N; ++j) norms(prod.img[j], j) += 1.0;
    // advance
    int m = k - 1;
    while (m >= 0 && idx[m] == n - 1) {
      idx[m] = 0;
      --m;
    }
    if (m < 0) break;
    ++idx[m];
    depth = m;
  }

  WitnessTensor out;
  out.n = n;
  out.k = k;
  out.N = N;
  out.total_sq_norm = norms.sum();
  Eigen::Index bi = 0, bj = 0;
  out.sq_norm = norms.maxCoeff(&bi, &bj);
  out.i0 = static_cast<int>(bi);
  out.j0 = static_cast<int>(bj);

  // pass 2: extract the chosen slice
  out.coords = Tensor::zeros(std::vector<int>(static_cast<std::size_t>(k), n));
  std::fill(idx.begin(), idx.end(), 0);
  depth = 0;
  Eigen::Index flat = 0;
  while (true) {
    while (depth < k) {
      stack[depth + 1] = compose(stack[depth], fam.mats[static_cast<std::size_t>(idx[depth])]);
      ++depth;
    }
    const SignedPerm& prod = stack[k];
    if (prod.img[out.j0] == out.i0) out.coords.data[flat] = prod.sign[out.j0];
    ++flat;
    int m = k - 1;
    while (m >= 0 && idx[m] == n - 1) {
      idx[m] = 0;
      --m;
    }
    if (m < 0) break;
    ++idx[m];
    depth = m;
  }
  return out;
}

WitnessPair lorentz_witness_pair(int n, int k) {
  WitnessPair wp;
  wp.base = witness_tensor(n, k);
  const std::vector<int> dims(static_cast<std::size_t>(k), n + 1);
  wp.z_plus = Tensor::zeros(dims);
  wp.z_minus = Tensor::zeros(dims);
  wp.z_plus.data[0] = 1.0;  // e_0^{(x)k}
  wp.z_minus.data[0] = 1.0;

  // embed (R^n)^{(x)k} into (R^{n+1})^{(x)k} shifting each index by one
  std::vector<int> idx(static_cast<std::size_t>(k), 0);
  const std::vector<int> ndims(static_cast<std::size_t>(k), n);
  std::vector<int> shifted(static_cast<std::size_t>(k), 0);
  Eigen::Index flat = 0;
  do {
    const double v = wp.base.coords.data[flat++];
    if (v != 0.0) {
      for (int m = 0; m < k; ++m) shifted[static_cast<std::size_t>(m)] = idx[static_cast<std::size_t>(m)] + 1;
      const Eigen::Index f = wp.z_plus.flat_index(shifted);
      wp.z_plus.data[f] = v;
      wp.z_minus.data[f] = -v;
    }
  } while (next_index(idx, ndims));
  return wp;
}

double witness_pairing(const WitnessPair& wp, double alpha, double beta, int sign) {
  const double k = wp.base.k;
  return std::pow(alpha, k) + sign * std::pow(beta, k) * wp.base.sq_norm;
}

std::vector<EbBoundRow> eb_bound_from_witness(int n, double alpha, double beta,
                                              const std::vector<int>& k_list) {
  if (alpha <= 0.0) throw std::invalid_argument("eb_bound_from_witness: alpha > 0 required");
  const double N = static_cast<double>(N_of(n));
  std::vector<EbBoundRow> rows;
  rows.reserve(k_list.size() + 1);
  for (int k : k_list) {
    const double bound = std::abs(beta) * n * std::pow(N, -1.0 / k);
    rows.push_back({k, bound, alpha >= bound - 1e-12});
  }
  const double limit = std::abs(beta) * n;
  rows.push_back({0, limit, alpha >= limit - 1e-12});
  return rows;
}

}  // namespace conelab::hurwitz
