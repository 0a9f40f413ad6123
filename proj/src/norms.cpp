#include "conelab/norms.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

#include "conelab/blockpos.hpp"
#include "conelab/hurwitz.hpp"
#include "conelab/nnls.hpp"

namespace conelab::norms {

namespace {

double pow_int(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

void check_uniform_dims(const Tensor& z, int n) {
  for (int d : z.dims)
    if (d != n) throw std::invalid_argument("norms: tensor mode dimension mismatch");
}

// contract all modes except `keep` with the given vectors
Eigen::VectorXd contract_except(const Tensor& z, const std::vector<Eigen::VectorXd>& vecs,
                                int keep) {
  Tensor cur = z;
  // contract from the last mode so earlier mode numbers stay valid
  for (int m = z.order() - 1; m >= 0; --m) {
    if (m == keep) continue;
    const Eigen::Index d = cur.dims[static_cast<std::size_t>(m)];
    Eigen::Index outer = 1, inner = 1;
    for (int t = 0; t < m; ++t) outer *= cur.dims[static_cast<std::size_t>(t)];
    for (int t = m + 1; t < cur.order(); ++t) inner *= cur.dims[static_cast<std::size_t>(t)];
    Eigen::VectorXd next(outer * inner);
    for (Eigen::Index o = 0; o < outer; ++o)
      for (Eigen::Index in = 0; in < inner; ++in) {
        double acc = 0.0;
        for (Eigen::Index c = 0; c < d; ++c)
          acc += cur.data[(o * d + c) * inner + in] * vecs[static_cast<std::size_t>(m)][c];
        next[o * inner + in] = acc;
      }
    std::vector<int> nd = cur.dims;
    nd.erase(nd.begin() + m);
    cur = Tensor(nd.empty() ? std::vector<int>{1} : nd,
                 nd.empty() ? Eigen::VectorXd::Constant(1, next[0]) : next);
  }
  return cur.data;
}

// alternating maximization of <u_1 (x) ... (x) u_k, z> over unit vectors;
// returns the best value found (a lower bound on the l2 injective norm)
double alternating_max_l2(const Tensor& z, int starts, int steps, Rng& rng,
                          std::vector<Eigen::VectorXd>* best_out = nullptr) {
  const int k = z.order();
  const int n = z.dims[0];
  double best = 0.0;
  std::vector<Eigen::VectorXd> vecs(static_cast<std::size_t>(k));
  for (int s = 0; s < starts; ++s) {
    for (auto& v : vecs) {
      v.resize(n);
      for (int i = 0; i < n; ++i) v[i] = rng.gauss();
      v.normalize();
    }
    double val = 0.0;
    for (int it = 0; it < steps; ++it) {
      double delta = 0.0;
      for (int m = 0; m < k; ++m) {
        Eigen::VectorXd g = contract_except(z, vecs, m);
        const double gn = g.norm();
        if (gn < 1e-300) break;
        vecs[static_cast<std::size_t>(m)] = g / gn;
        delta = std::abs(gn - std::abs(val));
        val = gn;
      }
      if (delta < 1e-13 * std::max(1.0, std::abs(val))) break;
    }
    if (val > best) {
      best = val;
      if (best_out) *best_out = vecs;
    }
  }
  return best;
}

// enumerate sign vectors of length len*n as gray-code free nested loop
bool next_signs(Eigen::VectorXd& s) {
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (s[i] > 0) {
      s[i] = -1.0;
      return true;
    }
    s[i] = 1.0;
  }
  return false;
}

double injective_l1_exact(const Tensor& z) {
  const int k = z.order();
  const int n = z.dims[0];
  const double combos = std::pow(2.0, static_cast<double>(n) * (k - 1));
  if (combos > kEnumBudget) throw std::runtime_error("injective_norm: enumeration budget exceeded");
  std::vector<Eigen::VectorXd> vecs(static_cast<std::size_t>(k), Eigen::VectorXd::Ones(n));
  double best = 0.0;
  // enumerate the first k-1 factors; the last is closed form
  std::vector<Eigen::VectorXd> signs(static_cast<std::size_t>(k - 1), Eigen::VectorXd::Ones(n));
  while (true) {
    for (int m = 0; m < k - 1; ++m) vecs[static_cast<std::size_t>(m)] = signs[static_cast<std::size_t>(m)];
    const Eigen::VectorXd v = contract_except(z, vecs, k - 1);
    best = std::max(best, v.cwiseAbs().sum());
    int m = 0;
    while (m < k - 1 && !next_signs(signs[static_cast<std::size_t>(m)])) ++m;
    if (m == k - 1) break;
  }
  return best;
}

double trace_norm(const Eigen::MatrixXd& M) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues().sum();
}

double spectral_norm(const Eigen::MatrixXd& M) {
  return Eigen::JacobiSVD<Eigen::MatrixXd>(M).singularValues()[0];
}

Eigen::MatrixXcd pauli(int i) {
  using namespace std::complex_literals;
  Eigen::MatrixXcd m(2, 2);
  switch (i) {
    case 0: m << 1, 0, 0, 1; break;
    case 1: m << 0, 1, 1, 0; break;
    case 2: m << 0, -1i, 1i, 0; break;
    default: m << 1, 0, 0, -1; break;
  }
  return m;
}

}  // namespace

Space dual(const Space& X) {
  switch (X.kind) {
    case Space::Kind::l1: return Space::linf(X.n);
    case Space::Kind::linf: return Space::l1(X.n);
    default: return X;
  }
}

const char* to_string(Space::Kind k) {
  switch (k) {
    case Space::Kind::l1: return "l1";
    case Space::Kind::l2: return "l2";
    case Space::Kind::linf: return "linf";
  }
  return "?";
}

Space::Kind space_kind_from_string(const std::string& s) {
  if (s == "l1") return Space::Kind::l1;
  if (s == "l2") return Space::Kind::l2;
  if (s == "linf") return Space::Kind::linf;
  throw std::invalid_argument("unknown space kind: " + s);
}

double vector_norm(const Eigen::VectorXd& v, const Space& X) {
  switch (X.kind) {
    case Space::Kind::l1: return v.cwiseAbs().sum();
    case Space::Kind::l2: return v.norm();
    case Space::Kind::linf: return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
  }
  return 0.0;
}

NormResult injective_norm(const Tensor& z, const Space& X) {
  check_uniform_dims(z, X.n);
  const int k = z.order();
  NormResult r;
  if (X.kind == Space::Kind::l1) {
    r.value = injective_l1_exact(z);
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }
  if (X.kind == Space::Kind::linf) {
    // dual extreme points are +-e_i: the sup is the largest absolute entry
    r.value = z.data.size() == 0 ? 0.0 : z.data.cwiseAbs().maxCoeff();
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }
  if (k == 1) {
    r.value = z.data.norm();
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }
  if (k == 2) {
    r.value = spectral_norm(z.as_matrix());
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }
  Rng rng(20240601, static_cast<std::uint64_t>(z.data.size()));
  r.lower = alternating_max_l2(z, 40, 200, rng);
  r.upper = z.data.norm();  // Cauchy-Schwarz against the unit product vector
  r.value = r.lower;
  r.exact = false;
  return r;
}

NormResult projective_norm(const Tensor& z, const Space& X) {
  check_uniform_dims(z, X.n);
  const int k = z.order();
  NormResult r;
  if (X.kind == Space::Kind::l1) {
    r.value = z.data.cwiseAbs().sum();
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }
  if (k == 1) {
    r.value = vector_norm(z.data, X);
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }
  if (X.kind == Space::Kind::l2 && k == 2) {
    r.value = trace_norm(z.as_matrix());
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }

  // upper bound: greedy rank-one peeling, then the entrywise l1 bound on the
  // residual (basis tensors are unit vectors in every l_p here)
  Tensor res = z;
  double upper = 0.0;
  Rng rng(20240602, static_cast<std::uint64_t>(z.data.size()));
  const int max_terms = 4 * static_cast<int>(z.data.size() > 0 ? z.dims[0] : 1) * k;
  for (int t = 0; t < max_terms; ++t) {
    if (res.data.cwiseAbs().sum() < 1e-12 * std::max(1.0, z.data.norm())) break;
    std::vector<Eigen::VectorXd> vecs;
    const double sigma = alternating_max_l2(res, 8, 100, rng, &vecs);
    if (sigma <= 1e-14) break;
    // subtract <u, res> u with the product vector rescaled to X-unit factors
    double scale = 1.0;
    for (auto& v : vecs) {
      const double nv = vector_norm(v, X);
      scale *= nv;
      v /= nv;
    }
    const double coef = contract_product(res, vecs);
    Tensor term = product_tensor(vecs);
    res.data -= coef * term.data;
    upper += std::abs(coef);
  }
  upper += res.data.cwiseAbs().sum();

  // lower bound by duality: pi_X(z) >= <z, z> / eps_{X*}(z)
  const NormResult eps_dual = injective_norm(z, dual(X));
  const double eps_ub = eps_dual.exact ? eps_dual.value : eps_dual.upper;
  double lower = eps_ub > 0.0 ? z.data.squaredNorm() / eps_ub : 0.0;
  lower = std::max(lower, injective_norm(z, X).lower);

  r.lower = lower;
  r.upper = std::max(upper, lower);
  r.value = r.upper;
  r.exact = false;
  return r;
}

double operator_norm(const Eigen::MatrixXd& P, const Space& X, const Space& Y) {
  if (P.cols() != X.n || P.rows() != Y.n)
    throw std::invalid_argument("operator_norm: dimension mismatch");
  using K = Space::Kind;
  if (X.kind == K::l1) {
    double best = 0.0;
    for (int j = 0; j < P.cols(); ++j) best = std::max(best, vector_norm(P.col(j), Y));
    return best;
  }
  if (Y.kind == K::linf) {
    double best = 0.0;
    for (int i = 0; i < P.rows(); ++i)
      best = std::max(best, vector_norm(P.row(i).transpose(), dual(X)));
    return best;
  }
  if (X.kind == K::l2 && Y.kind == K::l2) return spectral_norm(P);
  if (X.kind == K::l2 && Y.kind == K::l1) {
    // sup over output sign vectors
    if (std::pow(2.0, P.rows()) > kEnumBudget) throw std::runtime_error("operator_norm: budget");
    Eigen::VectorXd s = Eigen::VectorXd::Ones(P.rows());
    double best = 0.0;
    do best = std::max(best, (P.transpose() * s).norm());
    while (next_signs(s));
    return best;
  }
  if (X.kind == K::linf) {
    // extreme points of the input ball are sign vectors
    if (std::pow(2.0, P.cols()) > kEnumBudget) throw std::runtime_error("operator_norm: budget");
    Eigen::VectorXd s = Eigen::VectorXd::Ones(P.cols());
    double best = 0.0;
    do best = std::max(best, vector_norm(P * s, Y));
    while (next_signs(s));
    return best;
  }
  throw std::logic_error("operator_norm: unhandled pair");
}

NormResult nuclear_norm(const Eigen::MatrixXd& P, const Space& X, const Space& Y) {
  if (P.cols() != X.n || P.rows() != Y.n)
    throw std::invalid_argument("nuclear_norm: dimension mismatch");
  using K = Space::Kind;
  NormResult r;
  if (X.kind == K::l1) {
    double s = 0.0;
    for (int j = 0; j < P.cols(); ++j) s += vector_norm(P.col(j), Y);
    r.value = s;
    r.exact = true;
    r.lower = r.upper = s;
    return r;
  }
  if (Y.kind == K::linf) {
    double s = 0.0;
    for (int i = 0; i < P.rows(); ++i) s += vector_norm(P.row(i).transpose(), dual(X));
    r.value = s;
    r.exact = true;
    r.lower = r.upper = s;
    return r;
  }
  if (X.kind == K::l2 && Y.kind == K::l2) {
    r.value = trace_norm(P);
    r.exact = true;
    r.lower = r.upper = r.value;
    return r;
  }

  // upper bound: best of the canonical-basis and SVD rank-one expansions
  double basis_route = 0.0;
  for (int j = 0; j < P.cols(); ++j)
    basis_route += vector_norm(P.col(j), Y);  // |e_j*|_{X*} = 1 for l2 and linf sources
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(P, Eigen::ComputeThinU | Eigen::ComputeThinV);
  double svd_route = 0.0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    svd_route += svd.singularValues()[i] * vector_norm(svd.matrixU().col(i), Y) *
                 vector_norm(svd.matrixV().col(i), dual(X));
  r.upper = std::min(basis_route, svd_route);

  // lower bound by trace duality against maps of unit Y -> X operator norm
  double lower = operator_norm(P, X, Y);  // Q = rank-one pairing achieves this
  Rng rng(20240603, static_cast<std::uint64_t>(P.size()));
  for (int trial = 0; trial < 200; ++trial) {
    Eigen::MatrixXd Q(P.cols(), P.rows());
    for (int i = 0; i < Q.rows(); ++i)
      for (int j = 0; j < Q.cols(); ++j) Q(i, j) = rng.gauss();
    const double qn = operator_norm(Q, Y, X);
    if (qn < 1e-12) continue;
    lower = std::max(lower, std::abs((Q * P).trace()) / qn);
  }
  r.lower = lower;
  r.upper = std::max(r.upper, r.lower);
  r.value = r.upper;
  r.exact = false;
  return r;
}

TauBound tau_bounds(const Eigen::MatrixXd& T, const Space& X, const Space& Y, int k) {
  if (k < 1) throw std::invalid_argument("tau_bounds: k >= 1");
  TauBound tb;
  tb.k = k;
  const double op = operator_norm(T, X, Y);
  const NormResult nuc = nuclear_norm(T, X, Y);
  tb.upper = nuc.exact ? nuc.value : nuc.upper;
  tb.lower = op;
  tb.witnesses.push_back({"operator_norm", op});

  if (X.kind == Space::Kind::l2 && Y.kind == Space::Kind::l2 && X.n == Y.n && X.n <= 16) {
    const double cost = pow_int(static_cast<double>(X.n), k) *
                        static_cast<double>(hurwitz::N_of(X.n)) * hurwitz::N_of(X.n);
    if (cost <= hurwitz::kWitnessBudget &&
        pow_int(static_cast<double>(X.n), k) <= 4.0e6) {
      // pi(T^k z) >= <T^k z, z> / eps(z) with eps(z) <= 1 by construction
      const hurwitz::WitnessTensor wt = hurwitz::witness_tensor(X.n, k);
      Tensor tz = map_power_apply(wt.coords, T);
      const double pairing = dot(tz, wt.coords);
      if (pairing > 0.0) {
        const double wlower = std::pow(pairing, 1.0 / k);
        tb.witnesses.push_back({"hurwitz_witness", wlower});
        tb.lower = std::max(tb.lower, wlower);
      }
    }
  }
  tb.upper = std::max(tb.upper, tb.lower);
  return tb;
}

Tensor project_Xk(const Tensor& z) {
  Tensor out = Tensor::zeros(z.dims);
  std::vector<int> idx(static_cast<std::size_t>(z.order()), 0);
  Eigen::Index flat = 0;
  do {
    bool all_zero = true, all_nonzero = true;
    for (int v : idx) (v == 0 ? all_nonzero : all_zero) = false;
    if (all_zero || all_nonzero) out.data[flat] = z.data[flat];
    ++flat;
  } while (next_index(idx, z.dims));
  return out;
}

Tensor project_Xk_pairwise(const Tensor& z) {
  const int k = z.order();
  const int D = z.dims[0];
  Eigen::MatrixXd A = -Eigen::MatrixXd::Identity(D, D);
  A(0, 0) = 1.0;
  Tensor out = z;
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      Tensor flipped = mode_apply(mode_apply(out, A, i), A, j);
      out.data = 0.5 * (out.data + flipped.data);
    }
  return out;
}

Eigen::Matrix4d qubit_moments(const Eigen::MatrixXcd& Z) {
  Eigen::Matrix4d M;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Eigen::MatrixXcd op = Eigen::MatrixXcd::Zero(4, 4);
      const Eigen::MatrixXcd pi = pauli(i), pj = pauli(j);
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          for (int c = 0; c < 2; ++c)
            for (int d = 0; d < 2; ++d) op(a * 2 + c, b * 2 + d) = pi(a, b) * pj(c, d);
      M(i, j) = (Z * op).trace().real();
    }
  return M;
}

QubitHatCheckResult hat_check_membership_qubit(const Eigen::MatrixXcd& Z, double tol,
                                               std::uint64_t seed) {
  if (Z.rows() != 4 || Z.cols() != 4) throw std::invalid_argument("expected a 4x4 matrix");
  QubitHatCheckResult res;
  const Eigen::Matrix4d M = qubit_moments(Z);
  res.trace = Z.trace().real();
  res.moment_block_trace_norm = trace_norm(M.bottomRightCorner<3, 3>());

  Rng rng(seed, 77);
  Eigen::VectorXcd by, bz;
  res.attained_min = product_vector_min(Z, 2, 2, 200, 50, rng, &by, &bz);
  if (res.attained_min < -tol * std::max(1.0, Z.norm())) {
    res.block_positive = false;
    res.max_violation = ProductVectorCertificate{by, bz, res.attained_min};
  }
  res.in_check = res.block_positive &&
                 res.trace >= res.moment_block_trace_norm - tol * std::max(1.0, Z.norm());

  // hat search: find a separable S over a product-state library whose mixed
  // moments match those of Z; the remainder W = Z - S then has vanishing
  // mixed moments and must pass Tr W >= |moment block|_op
  std::vector<Eigen::Vector2cd> ys, zs;
  auto axis_states = [] {
    std::vector<Eigen::Vector2cd> v;
    using namespace std::complex_literals;
    v.push_back(Eigen::Vector2cd(1, 0));
    v.push_back(Eigen::Vector2cd(0, 1));
    const double s = 1.0 / std::sqrt(2.0);
    v.push_back(Eigen::Vector2cd(s, s));
    v.push_back(Eigen::Vector2cd(s, -s));
    v.push_back(Eigen::Vector2cd(s, s * 1i));
    v.push_back(Eigen::Vector2cd(s, -s * 1i));
    return v;
  }();
  // eigenvectors of the two reductions make every product input exactly
  // representable
  std::vector<Eigen::Vector2cd> left = axis_states, right = axis_states;
  {
    Eigen::Matrix2cd rA = Eigen::Matrix2cd::Zero(), rB = Eigen::Matrix2cd::Zero();
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int c = 0; c < 2; ++c) {
          rA(a, b) += Z(a * 2 + c, b * 2 + c);
          rB(a, b) += Z(c * 2 + a, c * 2 + b);
        }
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> eA(rA), eB(rB);
    for (int i = 0; i < 2; ++i) {
      left.push_back(eA.eigenvectors().col(i));
      right.push_back(eB.eigenvectors().col(i));
    }
  }
  for (const auto& a : left)
    for (const auto& b : right) {
      ys.push_back(a);
      zs.push_back(b);
    }
  for (int extra = 0; extra < 64; ++extra) {
    Eigen::Vector2cd a, b;
    for (int i = 0; i < 2; ++i) {
      a[i] = std::complex<double>(rng.gauss(), rng.gauss());
      b[i] = std::complex<double>(rng.gauss(), rng.gauss());
    }
    a.normalize();
    b.normalize();
    ys.push_back(a);
    zs.push_back(b);
  }

  const int L = static_cast<int>(ys.size());
  Eigen::MatrixXd mixed_rows(6, L);   // the hard constraints on S
  Eigen::MatrixXd all_rows(16, L);    // full moment match, used as a fallback
  std::vector<Eigen::MatrixXcd> lib(static_cast<std::size_t>(L));
  for (int c = 0; c < L; ++c) {
    Eigen::Matrix2cd py = ys[static_cast<std::size_t>(c)] * ys[static_cast<std::size_t>(c)].adjoint();
    Eigen::Matrix2cd pz = zs[static_cast<std::size_t>(c)] * zs[static_cast<std::size_t>(c)].adjoint();
    Eigen::MatrixXcd prod(4, 4);
    for (int a = 0; a < 2; ++a)
      for (int b = 0; b < 2; ++b)
        for (int x = 0; x < 2; ++x)
          for (int w = 0; w < 2; ++w) prod(a * 2 + x, b * 2 + w) = py(a, b) * pz(x, w);
    lib[static_cast<std::size_t>(c)] = prod;
    const Eigen::Matrix4d mm = qubit_moments(prod);
    for (int j = 0; j < 3; ++j) {
      mixed_rows(j, c) = mm(0, j + 1);
      mixed_rows(3 + j, c) = mm(j + 1, 0);
    }
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) all_rows(i * 4 + j, c) = mm(i, j);
  }
  Eigen::VectorXd mixed_b(6), all_b(16);
  for (int j = 0; j < 3; ++j) {
    mixed_b[j] = M(0, j + 1);
    mixed_b[3 + j] = M(j + 1, 0);
  }
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) all_b[i * 4 + j] = M(i, j);

  auto try_solution = [&](const Eigen::VectorXd& c) -> bool {
    HatDecomposition hd;
    hd.separable = Eigen::MatrixXcd::Zero(4, 4);
    for (int i = 0; i < L; ++i) {
      if (c[i] <= 0.0) continue;
      hd.weights.push_back(c[i]);
      hd.ys.push_back(ys[static_cast<std::size_t>(i)]);
      hd.zs.push_back(zs[static_cast<std::size_t>(i)]);
      hd.separable += c[i] * lib[static_cast<std::size_t>(i)];
    }
    hd.remainder = Z - hd.separable;
    const Eigen::Matrix4d mw = qubit_moments(hd.remainder);
    hd.remainder_trace = hd.remainder.trace().real();
    hd.remainder_moment_opnorm = spectral_norm(mw.bottomRightCorner<3, 3>());
    const double mixed = mw.row(0).tail(3).cwiseAbs().sum() + mw.col(0).tail(3).cwiseAbs().sum();
    if (mixed <= 1e-8 * std::max(1.0, Z.norm()) &&
        hd.remainder_trace >= hd.remainder_moment_opnorm - tol * std::max(1.0, Z.norm())) {
      res.in_hat_evidence = std::move(hd);
      return true;
    }
    return false;
  };

  const NnlsResult stage1 = nnls(mixed_rows, mixed_b);
  bool found = stage1.converged &&
               stage1.residual <= 1e-10 * std::max(1.0, mixed_b.norm()) &&
               try_solution(stage1.x);
  if (!found) {
    const NnlsResult stage2 = nnls(all_rows, all_b);
    if (stage2.converged) try_solution(stage2.x);
  }
  return res;
}

TransferReport transfer_check(double alpha, const Eigen::MatrixXd& P, const Space& X,
                              const Space& Y, int k, int samples, Rng& rng) {
  TransferReport rep;
  rep.samples = samples;
  const TauBound tb = tau_bounds(P, X, Y, k);
  rep.tau_upper = tb.upper;
  rep.applicable = tb.upper <= alpha + 1e-12;
  rep.worst_margin = std::numeric_limits<double>::infinity();
  if (!rep.applicable) return rep;

  const std::vector<int> dims(static_cast<std::size_t>(k), X.n);
  for (int s = 0; s < samples; ++s) {
    Tensor z = Tensor::zeros(dims);
    for (Eigen::Index i = 0; i < z.data.size(); ++i) z.data[i] = rng.gauss();
    const NormResult eps = injective_norm(z, X);
    const double z0 = (eps.exact ? eps.value : eps.upper) * (1.0 + rng.uniform());
    Tensor pz = map_power_apply(z, P);
    const NormResult pi = projective_norm(pz, Y);
    const double pi_lower = pi.exact ? pi.value : pi.lower;
    const double margin = pow_int(alpha, k) * z0 - pi_lower;
    rep.worst_margin = std::min(rep.worst_margin, margin);
    if (margin < -1e-9 * std::max(1.0, pow_int(alpha, k) * z0)) ++rep.violations;
  }
  return rep;
}

}  // namespace conelab::norms
