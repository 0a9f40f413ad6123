#include "conelab/psdmaps.hpp"

#include <cmath>
#include <complex>
#include <functional>
#include <stdexcept>

#include "conelab/blockpos.hpp"

namespace conelab::psdmaps {

namespace {

using jordan::Algebra;
using jordan::decode_hermitian;
using jordan::encode_hermitian;
using jordan::hermitian_basis;

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

Eigen::VectorXd encode(int d, const Eigen::MatrixXcd& X) { return encode_hermitian(d, X).coords; }

Eigen::MatrixXcd decode(int d, const Eigen::VectorXd& coords) {
  return decode_hermitian(jordan::make(Algebra::hermitian(d), coords));
}

}  // namespace

HermMap make_herm_map(int d_in, int d_out, Eigen::MatrixXd mat) {
  if (mat.rows() != d_out * d_out || mat.cols() != d_in * d_in)
    throw std::invalid_argument("herm map: matrix shape mismatch");
  return HermMap{d_in, d_out, std::move(mat)};
}

HermMap identity_map(int d) {
  return HermMap{d, d, Eigen::MatrixXd::Identity(d * d, d * d)};
}

HermMap compose(const HermMap& a, const HermMap& b) {
  if (b.d_out != a.d_in) throw std::invalid_argument("herm map compose: dimension mismatch");
  return HermMap{b.d_in, a.d_out, a.mat * b.mat};
}

HermMap adjoint(const HermMap& p) { return HermMap{p.d_out, p.d_in, p.mat.transpose()}; }

Eigen::VectorXd apply(const HermMap& p, const Eigen::VectorXd& coords) {
  if (coords.size() != p.mat.cols()) throw std::invalid_argument("herm map apply: bad length");
  return p.mat * coords;
}

Eigen::MatrixXcd apply_matrix(const HermMap& p, const Eigen::MatrixXcd& X) {
  return decode(p.d_out, p.mat * encode(p.d_in, X));
}

HermMap from_action(int d_in, int d_out,
                    const std::function<Eigen::MatrixXcd(const Eigen::MatrixXcd&)>& action) {
  const auto& basis = hermitian_basis(d_in);
  Eigen::MatrixXd mat(d_out * d_out, d_in * d_in);
  for (std::size_t i = 0; i < basis.size(); ++i)
    mat.col(static_cast<Eigen::Index>(i)) = encode(d_out, action(basis[i]));
  return HermMap{d_in, d_out, std::move(mat)};
}

Eigen::MatrixXd transpose_coords(int d) {
  const auto& basis = hermitian_basis(d);
  Eigen::VectorXd diag(d * d);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    // each basis element is either symmetric (transpose +1) or antisymmetric
    const double s = (basis[i].transpose() - basis[i]).norm() < 1e-14 ? 1.0 : -1.0;
    diag[static_cast<Eigen::Index>(i)] = s;
  }
  return diag.asDiagonal();
}

HermMap transpose_map(int d) { return HermMap{d, d, transpose_coords(d)}; }

Eigen::MatrixXd choi(const HermMap& p) { return p.mat.transpose(); }

HermMap map_from_choi(const Eigen::MatrixXd& c, int d_in, int d_out) {
  if (c.rows() != d_in * d_in || c.cols() != d_out * d_out)
    throw std::invalid_argument("map_from_choi: shape mismatch");
  return HermMap{d_in, d_out, c.transpose()};
}

Eigen::MatrixXcd complex_choi(const HermMap& p) {
  using namespace std::complex_literals;
  const int di = p.d_in, dout = p.d_out;
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(di * dout, di * dout);
  for (int a = 0; a < di; ++a)
    for (int b = 0; b < di; ++b) {
      // E_ab = H1 + i H2 with both H's Hermitian
      Eigen::MatrixXcd H1 = Eigen::MatrixXcd::Zero(di, di);
      Eigen::MatrixXcd H2 = Eigen::MatrixXcd::Zero(di, di);
      H1(a, b) += 0.5;
      H1(b, a) += 0.5;
      H2(a, b) += -0.5i;
      H2(b, a) += 0.5i;
      const Eigen::MatrixXcd img = apply_matrix(p, H1) + 1i * apply_matrix(p, H2);
      for (int c = 0; c < dout; ++c)
        for (int e = 0; e < dout; ++e) C(a * dout + c, b * dout + e) = img(c, e);
    }
  return C;
}

std::variant<CanonicalForm, CanonicalFormError> canonical_form(const HermMap& p, double tol) {
  if (p.d_in != p.d_out) return CanonicalFormError{"canonical form needs a square map"};
  const int d = p.d_in;
  const Eigen::MatrixXd T = p.mat * transpose_coords(d);
  const double scale = std::max(1.0, T.norm());
  if ((T - T.transpose()).norm() > tol * scale)
    return CanonicalFormError{"P o theta is not selfadjoint"};
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (T + T.transpose()));
  const Eigen::VectorXd mu = es.eigenvalues();  // ascending
  const double rho = std::max(std::abs(mu[0]), std::abs(mu[mu.size() - 1]));
  if (rho <= tol * scale) return CanonicalFormError{"zero map"};
  if (mu[mu.size() - 1] < rho * (1.0 - tol))
    return CanonicalFormError{"spectral radius is not attained by a positive eigenvalue"};
  int top_count = 0;
  for (Eigen::Index i = 0; i < mu.size(); ++i)
    if (mu[i] >= rho * (1.0 - 1e-8)) ++top_count;
  if (top_count > 1)
    return CanonicalFormError{"degenerate spectral radius (multiplicity " +
                              std::to_string(top_count) + ")"};

  CanonicalForm cf;
  cf.spectral_radius = rho;
  Eigen::VectorXd x0 = es.eigenvectors().col(mu.size() - 1);
  if (x0.dot(encode(d, Eigen::MatrixXcd::Identity(d, d))) < 0.0) x0 = -x0;
  const double x0_min = jordan::min_eigenvalue(jordan::make(Algebra::hermitian(d), x0));
  if (x0_min < -tol) return CanonicalFormError{"top eigenvector is not positive semidefinite"};
  cf.X0 = x0;
  for (Eigen::Index i = 0; i < mu.size() - 1; ++i) {
    if (std::abs(mu[i]) <= tol * rho) continue;
    cf.Xs.push_back(es.eigenvectors().col(i));
    cf.lambdas.conservativeResize(cf.lambdas.size() + 1);
    cf.lambdas[cf.lambdas.size() - 1] = mu[i] / rho;
  }
  cf.rank = 1 + static_cast<int>(cf.Xs.size());
  const Eigen::EigenSolver<Eigen::MatrixXd> pes(p.mat);
  cf.map_eigenvalues = pes.eigenvalues();
  return cf;
}

HermMap factorization_to_map(const LorentzFactorization& f, int d) {
  Eigen::VectorXd signs = Eigen::VectorXd::Constant(f.k + 1, -1.0);
  signs[0] = 1.0;
  const Eigen::MatrixXd middle =
      f.alpha_map * signs.asDiagonal() * f.alpha_map.transpose() * transpose_coords(d);
  return HermMap{d, d, middle};
}

FactorizeResult lorentz_factorize(const HermMap& p, double tol, std::uint64_t seed) {
  auto cf_or = canonical_form(p, tol);
  if (std::holds_alternative<CanonicalFormError>(cf_or))
    return FactorizeRefusal{std::get<CanonicalFormError>(cf_or).reason, {}};
  const CanonicalForm& cf = std::get<CanonicalForm>(cf_or);

  Eigen::VectorXd positives;
  for (Eigen::Index i = 0; i < cf.lambdas.size(); ++i)
    if (cf.lambdas[i] > 0.0) {
      positives.conservativeResize(positives.size() + 1);
      positives[positives.size() - 1] = cf.lambdas[i] * cf.spectral_radius;
    }
  if (positives.size() > 0)
    return FactorizeRefusal{"positive eigenvalues besides the spectral radius", positives};

  const int d = p.d_in;
  LorentzFactorization f;
  f.k = cf.rank - 1;
  f.alpha_map.resize(d * d, f.k + 1);
  f.alpha_map.col(0) = std::sqrt(cf.spectral_radius) * cf.X0;
  for (int i = 0; i < f.k; ++i)
    f.alpha_map.col(i + 1) =
        std::sqrt(-cf.lambdas[i] * cf.spectral_radius) * cf.Xs[static_cast<std::size_t>(i)];

  const HermMap recon = factorization_to_map(f, d);
  f.residual = (recon.mat - p.mat).norm();
  if (f.residual > 1e-10 * std::max(1.0, p.mat.norm()))
    throw std::runtime_error("lorentz_factorize: reconstruction residual out of bounds");

  // sampled cone check: alpha maps Lorentz points to positive semidefinite
  Rng rng(seed, 303);
  double margin = std::numeric_limits<double>::infinity();
  for (int s = 0; s < 200; ++s) {
    Eigen::VectorXd x(f.k + 1);
    for (int i = 1; i <= f.k; ++i) x[i] = rng.gauss();
    x[0] = x.tail(f.k).norm();
    const Eigen::VectorXd img = f.alpha_map * x;
    margin = std::min(margin,
                      jordan::min_eigenvalue(jordan::make(Algebra::hermitian(d), img)) /
                          std::max(1.0, img.norm()));
  }
  f.cone_check_margin = margin;
  if (margin < -1e-9)
    throw std::runtime_error("lorentz_factorize: factor leaves the positive cone");
  return f;
}

SpinorFactorization reduction2_spinor_factorization() {
  // columns: images of e_0..e_3 under (t,x,y,z) -> t I + x sx + y sy + z sz
  Eigen::MatrixXd S(4, 4);
  S.col(0) = encode(2, pauli(0));
  S.col(1) = encode(2, pauli(1));
  S.col(2) = encode(2, pauli(2));
  S.col(3) = encode(2, pauli(3));
  Eigen::Vector4d a(1.0, -1.0, -1.0, -1.0);
  SpinorFactorization f;
  f.into_psd = S;
  f.onto_cone = a.asDiagonal() * S.inverse();
  f.residual = (reduction_map(2).mat - f.into_psd * f.onto_cone).norm();
  return f;
}

HermMap reduction_map(int d) {
  return from_action(d, d, [d](const Eigen::MatrixXcd& X) -> Eigen::MatrixXcd {
    return X.trace() * Eigen::MatrixXcd::Identity(d, d) - X;
  });
}

HermMap breuer_hall_map() {
  Eigen::MatrixXcd U = Eigen::MatrixXcd::Zero(4, 4);
  const Eigen::MatrixXcd sy = pauli(2);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c) U(a * 2 + c, b * 2 + c) = sy(a, b);
  return from_action(4, 4, [U](const Eigen::MatrixXcd& X) -> Eigen::MatrixXcd {
    return X.trace() * Eigen::MatrixXcd::Identity(4, 4) - X -
           U * X.transpose() * U.adjoint();
  });
}

HermMap spin_projection(const std::vector<Eigen::MatrixXcd>& spin_system) {
  if (spin_system.size() < 2)
    throw std::invalid_argument("spin system needs at least two elements");
  const int d = static_cast<int>(spin_system[0].rows());
  for (const auto& s : spin_system) {
    if (s.rows() != d || s.cols() != d)
      throw std::invalid_argument("spin system: dimension mismatch");
    if ((s - s.adjoint()).norm() > 1e-12 * std::max(1.0, s.norm()))
      throw std::invalid_argument("spin system: element is not Hermitian");
    if ((s * s - Eigen::MatrixXcd::Identity(d, d)).norm() > 1e-12 * std::max(1.0, s.norm()))
      throw std::invalid_argument("spin system: element is not unitary");
  }
  for (std::size_t i = 0; i < spin_system.size(); ++i)
    for (std::size_t j = i + 1; j < spin_system.size(); ++j)
      if ((spin_system[i] * spin_system[j] + spin_system[j] * spin_system[i]).norm() > 1e-12)
        throw std::invalid_argument("spin system: elements do not anticommute");

  // P_A = phi o phi^* under the normalized trace inner product (1/d) Tr(X Y)
  return from_action(d, d, [&spin_system, d](const Eigen::MatrixXcd& X) -> Eigen::MatrixXcd {
    Eigen::MatrixXcd out = (X.trace() / static_cast<double>(d)) *
                           Eigen::MatrixXcd::Identity(d, d);
    for (const auto& s : spin_system) out += ((s * X).trace().real() / d) * s;
    return out;
  });
}

BlockPositivity lorentz_psd_max_membership(const Eigen::VectorXd& X0,
                                           const std::vector<Eigen::VectorXd>& Xs, int d,
                                           double tol, std::uint64_t seed) {
  if (d > 4) throw std::invalid_argument("lorentz_psd_max_membership: d <= 4");
  BlockPositivity res;
  const double x0_min = jordan::min_eigenvalue(jordan::make(Algebra::hermitian(d), X0));
  if (x0_min < -tol * std::max(1.0, X0.norm())) {
    res.member = false;
    res.sound = true;
    res.attained_min = x0_min;
    return res;
  }
  const Eigen::MatrixXcd M0 = decode(d, X0);
  Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(d * d, d * d);
  auto add_kron = [&M, d](const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B, double w) {
    for (int a = 0; a < d; ++a)
      for (int b = 0; b < d; ++b)
        for (int c = 0; c < d; ++c)
          for (int e = 0; e < d; ++e) M(a * d + c, b * d + e) += w * A(a, b) * B(c, e);
  };
  add_kron(M0, M0, 1.0);
  for (const auto& x : Xs) {
    const Eigen::MatrixXcd Mi = decode(d, x);
    add_kron(Mi, Mi, -1.0);
  }
  Rng rng(seed, 404);
  Eigen::VectorXcd y, z;
  res.attained_min = product_vector_min(M, d, d, 1000, 200, rng, &y, &z);
  if (res.attained_min < -tol * std::max(1.0, M.norm())) {
    res.member = false;
    res.sound = true;
    res.y = y;
    res.z = z;
  } else {
    res.member = true;
    res.sound = false;  // heuristic one-sided conclusion
  }
  return res;
}

cones::Certificate generalized_reduction_check(const HermMap& p, const LorentzFactorization& q,
                                               double tol) {
  const int d_mid = static_cast<int>(std::lround(std::sqrt(double(q.alpha_map.rows()))));
  const HermMap qmap = factorization_to_map(q, d_mid);
  if (qmap.d_in != p.d_out)
    throw std::invalid_argument("generalized_reduction_check: dimension mismatch");
  const HermMap qp = compose(qmap, p);

  const Eigen::MatrixXcd C = complex_choi(qp);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C);
  const double choi_min = es.eigenvalues()[0];

  // partial transpose on the first factor
  const int di = qp.d_in, dout = qp.d_out;
  Eigen::MatrixXcd Cpt(di * dout, di * dout);
  for (int a = 0; a < di; ++a)
    for (int b = 0; b < di; ++b)
      for (int c = 0; c < dout; ++c)
        for (int e = 0; e < dout; ++e) Cpt(a * dout + c, b * dout + e) = C(b * dout + c, a * dout + e);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> espt(Cpt);
  const double ppt_min = espt.eigenvalues()[0];

  const double scale = std::max(1.0, C.norm());
  const bool choi_fails = choi_min < -tol * scale;
  const bool ppt_fails = ppt_min < -tol * scale;
  const Eigen::MatrixXcd& decisive = choi_fails ? C : Cpt;

  cones::Certificate cert;
  cert.kind = "eb_violation";
  Eigen::MatrixXd re = decisive.real(), im = decisive.imag();
  cert.payload = json{{"test", choi_fails ? "choi_psd" : (ppt_fails ? "choi_ppt" : "none_failed")},
                      {"choi_min_eigenvalue", choi_min},
                      {"ppt_min_eigenvalue", ppt_min},
                      {"min_eigenvalue", choi_fails ? choi_min : ppt_min},
                      {"choi_real", conelab::to_json(re)},
                      {"choi_imag", conelab::to_json(im)},
                      {"tol", tol * scale},
                      {"violated", choi_fails || ppt_fails},
                      {"conclusion",
                       choi_fails || ppt_fails ? "composition is not entanglement breaking; the "
                                                 "tested map is not entanglement annihilating"
                                               : "inconclusive"}};
  return cert;
}

}  // namespace conelab::psdmaps
