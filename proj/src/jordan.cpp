#include "conelab/jordan.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace conelab::jordan {

namespace {

void require_same(const Element& a, const Element& b) {
  if (!(a.alg == b.alg)) throw std::invalid_argument("jordan: algebra mismatch");
}

double rel_tol(const Element& a, double tol) { return tol * a.coords.norm(); }

}  // namespace

Algebra Algebra::spin(int n) {
  if (n < 1) throw std::invalid_argument("spin algebra needs n >= 1");
  return Algebra{Kind::spin, n};
}

Algebra Algebra::hermitian(int d) {
  if (d < 1) throw std::invalid_argument("hermitian algebra needs d >= 1");
  return Algebra{Kind::hermitian, d};
}

Element make(const Algebra& alg, Eigen::VectorXd coords) {
  if (coords.size() != alg.ambient_dim()) throw std::invalid_argument("jordan: bad coordinate length");
  return Element{alg, std::move(coords)};
}

Element zero(const Algebra& alg) { return Element{alg, Eigen::VectorXd::Zero(alg.ambient_dim())}; }

Element identity(const Algebra& alg) {
  Eigen::VectorXd c = Eigen::VectorXd::Zero(alg.ambient_dim());
  if (alg.kind == Kind::spin) {
    c[0] = 1.0;
  } else {
    c[0] = std::sqrt(static_cast<double>(alg.param));  // I = sqrt(d) * (I/sqrt(d))
  }
  return Element{alg, std::move(c)};
}

double norm(const Element& a) { return a.coords.norm(); }

Element add(const Element& a, const Element& b) {
  require_same(a, b);
  return Element{a.alg, a.coords + b.coords};
}

Element sub(const Element& a, const Element& b) {
  require_same(a, b);
  return Element{a.alg, a.coords - b.coords};
}

Element scale(double c, const Element& a) { return Element{a.alg, c * a.coords}; }

const std::vector<Eigen::MatrixXcd>& hermitian_basis(int d) {
  static std::mutex mu;
  static std::map<int, std::vector<Eigen::MatrixXcd>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(d);
  if (it != cache.end()) return it->second;

  using namespace std::complex_literals;
  std::vector<Eigen::MatrixXcd> basis;
  basis.reserve(static_cast<std::size_t>(d) * d);
  basis.push_back(Eigen::MatrixXcd::Identity(d, d) / std::sqrt(static_cast<double>(d)));
  for (int l = 1; l < d; ++l) {
    Eigen::MatrixXcd D = Eigen::MatrixXcd::Zero(d, d);
    for (int i = 0; i < l; ++i) D(i, i) = 1.0;
    D(l, l) = -static_cast<double>(l);
    basis.push_back(D / std::sqrt(static_cast<double>(l) * (l + 1)));
  }
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i)
    for (int j = i + 1; j < d; ++j) {
      Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(d, d);
      S(i, j) = inv_sqrt2;
      S(j, i) = inv_sqrt2;
      basis.push_back(S);
      Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(d, d);
      A(i, j) = -1i * inv_sqrt2;
      A(j, i) = 1i * inv_sqrt2;
      basis.push_back(A);
    }
  return cache.emplace(d, std::move(basis)).first->second;
}

Eigen::MatrixXcd decode_hermitian(const Element& a) {
  if (a.alg.kind != Kind::hermitian) throw std::invalid_argument("decode_hermitian: wrong kind");
  const int d = a.alg.param;
  const auto& basis = hermitian_basis(d);
  Eigen::MatrixXcd X = Eigen::MatrixXcd::Zero(d, d);
  for (int i = 0; i < a.coords.size(); ++i) X += a.coords[i] * basis[i];
  return X;
}

Element encode_hermitian(int d, const Eigen::MatrixXcd& X) {
  const auto& basis = hermitian_basis(d);
  Eigen::VectorXd c(d * d);
  for (std::size_t i = 0; i < basis.size(); ++i)
    c[static_cast<Eigen::Index>(i)] = (basis[i].adjoint() * X).trace().real();
  return Element{Algebra::hermitian(d), std::move(c)};
}

Element product(const Element& a, const Element& b) {
  require_same(a, b);
  if (a.alg.kind == Kind::spin) {
    const int n = a.alg.param;
    const double s = a.coords[0];
    const double t = b.coords[0];
    Eigen::VectorXd out(n + 1);
    out[0] = s * t + a.coords.tail(n).dot(b.coords.tail(n));
    out.tail(n) = s * b.coords.tail(n) + t * a.coords.tail(n);
    return Element{a.alg, std::move(out)};
  }
  const Eigen::MatrixXcd A = decode_hermitian(a);
  const Eigen::MatrixXcd B = decode_hermitian(b);
  return encode_hermitian(a.alg.param, 0.5 * (A * B + B * A));
}

Spectral spectral_decompose(const Element& a) {
  Spectral out;
  if (a.alg.kind == Kind::spin) {
    const int n = a.alg.param;
    const double t = a.coords[0];
    Eigen::VectorXd x = a.coords.tail(n);
    const double r = x.norm();
    Eigen::VectorXd u;
    if (r > 0.0) {
      u = x / r;
    } else {
      u = Eigen::VectorXd::Zero(n);
      u[0] = 1.0;  // any unit vector: the eigenvalues tie
    }
    Eigen::VectorXd cp(n + 1), cm(n + 1);
    cp[0] = 0.5;
    cp.tail(n) = 0.5 * u;
    cm[0] = 0.5;
    cm.tail(n) = -0.5 * u;
    out.frame = {Element{a.alg, cp}, Element{a.alg, cm}};
    out.eigenvalues.resize(2);
    out.eigenvalues << t + r, t - r;
    return out;
  }
  const int d = a.alg.param;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(decode_hermitian(a));
  if (es.info() != Eigen::Success) throw std::runtime_error("jordan: hermitian eigensolver failed");
  out.eigenvalues.resize(d);
  out.frame.reserve(d);
  // Eigen returns ascending order; flip to descending
  for (int i = 0; i < d; ++i) {
    const int src = d - 1 - i;
    out.eigenvalues[i] = es.eigenvalues()[src];
    const Eigen::VectorXcd v = es.eigenvectors().col(src);
    out.frame.push_back(encode_hermitian(d, v * v.adjoint()));
  }
  return out;
}

double min_eigenvalue(const Element& a) {
  const Spectral s = spectral_decompose(a);
  return s.eigenvalues[s.eigenvalues.size() - 1];
}

DetInv det_inv(const Element& a, double tol) {
  const Spectral s = spectral_decompose(a);
  DetInv out;
  out.det = 1.0;
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) out.det *= s.eigenvalues[i];
  const double scale = std::max(1.0, a.coords.norm());
  double det_floor = tol;
  for (int i = 1; i < a.alg.rank(); ++i) det_floor *= scale;  // tol * scale^(rank-1)
  if (std::abs(out.det) <= det_floor) return out;
  Element inv = zero(a.alg);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i)
    inv.coords += (1.0 / s.eigenvalues[i]) * s.frame[static_cast<std::size_t>(i)].coords;
  out.inverse = std::move(inv);
  return out;
}

Element inverse_or_throw(const Element& a, double tol) {
  DetInv di = det_inv(a, tol);
  if (!di.inverse) throw std::runtime_error("jordan: element not invertible");
  return *std::move(di.inverse);
}

Eigen::MatrixXd left_mult_operator(const Element& x) {
  const int dim = x.alg.ambient_dim();
  Eigen::MatrixXd L(dim, dim);
  for (int j = 0; j < dim; ++j) {
    Element ej = zero(x.alg);
    ej.coords[j] = 1.0;
    L.col(j) = product(x, ej).coords;
  }
  return L;
}

Eigen::MatrixXd quadratic_rep(const Element& x) {
  const Eigen::MatrixXd L = left_mult_operator(x);
  const Eigen::MatrixXd L2 = left_mult_operator(product(x, x));
  return 2.0 * L * L - L2;
}

Parts parts(const Element& a, double tol) {
  const Spectral s = spectral_decompose(a);
  const double thr = rel_tol(a, tol);
  Element pos = zero(a.alg), neg = zero(a.alg);
  bool sqrt_ok = true;
  Element sq = zero(a.alg);
  for (Eigen::Index i = 0; i < s.eigenvalues.size(); ++i) {
    const double lam = s.eigenvalues[i];
    const auto& c = s.frame[static_cast<std::size_t>(i)].coords;
    if (lam >= 0.0)
      pos.coords += lam * c;
    else
      neg.coords += -lam * c;
    if (lam < -thr)
      sqrt_ok = false;
    else
      sq.coords += std::sqrt(std::max(lam, 0.0)) * c;
  }
  Parts out{pos, neg, add(pos, neg), std::nullopt};
  if (sqrt_ok) out.sqrt = std::move(sq);
  return out;
}

Element sqrt_or_throw(const Element& a, double tol) {
  Parts p = parts(a, tol);
  if (!p.sqrt) throw std::runtime_error("jordan: sqrt of element outside the cone");
  return *std::move(p.sqrt);
}

bool in_cone(const Element& a, double tol) { return min_eigenvalue(a) >= -rel_tol(a, tol); }

}  // namespace conelab::jordan
