#include "conelab/compalg.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

namespace conelab::compalg {

namespace {

using Table = std::vector<std::vector<std::pair<int, int>>>;

// Cayley-Dickson doubling data: multiplication table plus the conjugation
// signs (+1 on the unit, -1 on imaginary basis vectors). The product on the
// double is (a,b)(c,d) = (ac - conj(d) b, da + b conj(c)).
struct DivisionAlg {
  Table table;
  std::vector<int> conj;
};

DivisionAlg reals() {
  DivisionAlg a;
  a.table = {{{0, 1}}};
  a.conj = {1};
  return a;
}

DivisionAlg cayley_dickson(const DivisionAlg& base) {
  const int n = static_cast<int>(base.table.size());
  DivisionAlg out;
  out.table.assign(2 * n, std::vector<std::pair<int, int>>(2 * n));
  out.conj.assign(2 * n, -1);
  out.conj[0] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto [kij, sij] = base.table[i][j];
      const auto [kji, sji] = base.table[j][i];
      // (e_i,0)(e_j,0) = (e_i e_j, 0)
      out.table[i][j] = {kij, sij};
      // (e_i,0)(0,e_j) = (0, e_j e_i)
      out.table[i][n + j] = {n + kji, sji};
      // (0,e_i)(e_j,0) = (0, e_i conj(e_j))
      out.table[n + i][j] = {n + kij, sij * base.conj[j]};
      // (0,e_i)(0,e_j) = (-conj(e_j) e_i, 0)
      out.table[n + i][n + j] = {kji, -sji * base.conj[j]};
    }
  return out;
}

CompositionAlgebra build(AlgKind kind) {
  CompositionAlgebra alg;
  alg.kind = kind;
  if (kind == AlgKind::Csplit) {
    alg.dim = 2;
    alg.table = {{{0, 1}, {1, 1}}, {{1, 1}, {0, 1}}};
    alg.qform = Eigen::Vector2d(1.0, -1.0);
    return alg;
  }
  DivisionAlg d = reals();
  int doublings = 0;
  switch (kind) {
    case AlgKind::R: doublings = 0; break;
    case AlgKind::C: doublings = 1; break;
    case AlgKind::H: doublings = 2; break;
    case AlgKind::O: doublings = 3; break;
    default: throw std::logic_error("unreachable");
  }
  for (int i = 0; i < doublings; ++i) d = cayley_dickson(d);
  alg.dim = static_cast<int>(d.table.size());
  alg.table = std::move(d.table);
  alg.qform = Eigen::VectorXd::Ones(alg.dim);
  return alg;
}

}  // namespace

const char* to_string(AlgKind k) {
  switch (k) {
    case AlgKind::R: return "R";
    case AlgKind::C: return "C";
    case AlgKind::Csplit: return "Csplit";
    case AlgKind::H: return "H";
    case AlgKind::O: return "O";
  }
  return "?";
}

AlgKind alg_kind_from_string(const std::string& s) {
  if (s == "R") return AlgKind::R;
  if (s == "C") return AlgKind::C;
  if (s == "Csplit" || s == "C'") return AlgKind::Csplit;
  if (s == "H") return AlgKind::H;
  if (s == "O") return AlgKind::O;
  throw std::invalid_argument("unknown composition algebra: " + s);
}

const CompositionAlgebra& algebra(AlgKind kind) {
  static std::mutex mu;
  static std::map<AlgKind, CompositionAlgebra> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(kind);
  if (it == cache.end()) it = cache.emplace(kind, build(kind)).first;
  return it->second;
}

Eigen::VectorXd CompositionAlgebra::multiply(const Eigen::VectorXd& x,
                                             const Eigen::VectorXd& y) const {
  if (x.size() != dim || y.size() != dim)
    throw std::invalid_argument("composition algebra multiply: dimension mismatch");
  Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
  for (int i = 0; i < dim; ++i) {
    if (x[i] == 0.0) continue;
    for (int j = 0; j < dim; ++j) {
      const auto [k, s] = table[i][j];
      out[k] += s * x[i] * y[j];
    }
  }
  return out;
}

double CompositionAlgebra::q(const Eigen::VectorXd& x) const {
  return x.cwiseProduct(x).dot(qform);
}

Eigen::MatrixXd CompositionAlgebra::mult_matrix() const {
  Eigen::MatrixXd m = Eigen::MatrixXd::Zero(dim, dim * dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      const auto [k, s] = table[i][j];
      m(k, i * dim + j) = s;
    }
  return m;
}

ProtocolCone ProtocolCone::make(AlgKind a1, AlgKind a2) {
  if (a1 != AlgKind::R && a1 != AlgKind::Csplit)
    throw std::invalid_argument("protocol cone: alg1 must be R or Csplit");
  if (a2 == AlgKind::Csplit)
    throw std::invalid_argument("protocol cone: alg2 must be a division algebra");
  ProtocolCone pc;
  pc.alg1 = a1;
  pc.alg2 = a2;
  pc.n = algebra(a2).dim;
  pc.N = algebra(a1).dim + pc.n - 1;
  return pc;
}

Eigen::MatrixXd direct_sum_map(const ProtocolCone& pc) {
  const auto& A1 = algebra(pc.alg1);
  const auto& A2 = algebra(pc.alg2);
  const int d1 = A1.dim;
  const int D = pc.N + 1;  // = d1 + n
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D, D * D);
  // block 1 coordinates occupy [0, d1), block 2 occupies [d1, D)
  for (int i = 0; i < d1; ++i)
    for (int j = 0; j < d1; ++j) {
      const auto [k, s] = A1.table[i][j];
      M(k, i * D + j) = s;
    }
  for (int i = 0; i < A2.dim; ++i)
    for (int j = 0; j < A2.dim; ++j) {
      const auto [k, s] = A2.table[i][j];
      M(d1 + k, (d1 + i) * D + (d1 + j)) = s;
    }
  return M;
}

std::pair<double, double> protocol_step(const ProtocolCone& pc, double alpha, double beta) {
  const double n = static_cast<double>(pc.n);
  if (pc.alg1 == AlgKind::R) return {alpha * alpha, n * beta * beta};
  return {alpha * alpha + beta * beta, (2.0 * alpha * beta + beta * beta * n * n) / (n + 1.0)};
}

std::pair<double, double> protocol_step_via_twirl(const ProtocolCone& pc, double alpha,
                                                  double beta) {
  const int D = pc.N + 1;
  const Eigen::MatrixXd M = direct_sum_map(pc);
  Eigen::VectorXd iso = Eigen::VectorXd::Constant(D, beta);
  iso[0] = alpha;
  // I^{(x)2} is diagonal in the product basis
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(D, D);
  Eigen::VectorXd scaled_col(D);
  for (int i = 0; i < D; ++i)
    for (int j = 0; j < D; ++j) {
      const double w = iso[i] * iso[j];
      if (w == 0.0) continue;
      J += w * M.col(i * D + j) * M.col(i * D + j).transpose();
    }
  const double a = J(0, 0);
  double b = 0.0;
  for (int i = 1; i < D; ++i) b += J(i, i);
  return {a, b / (D - 1)};
}

double protocol_map(const ProtocolCone& pc, double beta) {
  const auto [a, b] = protocol_step(pc, 1.0, beta);
  return b / a;
}

double protocol_threshold(const ProtocolCone& pc, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("protocol_threshold: tol must be positive");
  const auto g = [&](double beta) { return protocol_map(pc, beta) - beta; };
  // bracket the sign change of g on (0, 1]
  const int grid = 4096;
  double lo = 0.0, hi = 0.0;
  double prev_x = 1e-12, prev_g = g(prev_x);
  for (int i = 1; i <= grid; ++i) {
    const double x = static_cast<double>(i) / grid;
    const double gx = g(x);
    if ((prev_g > 0.0) != (gx > 0.0) || gx == 0.0) {
      lo = prev_x;
      hi = x;
      break;
    }
    prev_x = x;
    prev_g = gx;
  }
  if (hi == 0.0) {
    // no interior sign change; the fixed point sits at the right endpoint
    if (std::abs(g(1.0)) < 1e-12) return 1.0;
    throw std::runtime_error("protocol_threshold: bisection failed to bracket a root");
  }
  double glo = g(lo);
  for (int iter = 0; iter < 200 && hi - lo > tol; ++iter) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((glo > 0.0) == (gm > 0.0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

std::vector<double> protocol_trajectory(const ProtocolCone& pc, double beta0, int steps) {
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  double b = beta0;
  out.push_back(b);
  for (int i = 0; i < steps; ++i) {
    b = protocol_map(pc, b);
    out.push_back(b);
  }
  return out;
}

}  // namespace conelab::compalg
