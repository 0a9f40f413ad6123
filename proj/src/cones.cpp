#include "conelab/cones.hpp"

#include <cmath>
#include <stdexcept>

#include "conelab/jordan.hpp"
#include "conelab/nnls.hpp"

namespace conelab::cones {

const char* to_string(Kind k) {
  switch (k) {
    case Kind::lorentz: return "lorentz";
    case Kind::psd: return "psd";
    case Kind::ell1: return "ell1";
    case Kind::ellinf: return "ellinf";
    case Kind::simplex: return "simplex";
  }
  return "?";
}

Kind kind_from_string(const std::string& s) {
  if (s == "lorentz") return Kind::lorentz;
  if (s == "psd") return Kind::psd;
  if (s == "ell1") return Kind::ell1;
  if (s == "ellinf") return Kind::ellinf;
  if (s == "simplex") return Kind::simplex;
  throw std::invalid_argument("unknown cone kind: " + s);
}

int Handle::ambient_dim() const {
  switch (kind) {
    case Kind::lorentz:
    case Kind::ell1:
    case Kind::ellinf: return param + 1;
    case Kind::psd: return param * param;
    case Kind::simplex: return param;
  }
  return 0;
}

Handle dual(const Handle& c) {
  switch (c.kind) {
    case Kind::ell1: return Handle::ellinf(c.param);
    case Kind::ellinf: return Handle::ell1(c.param);
    default: return c;  // lorentz, psd and simplex are self-dual here
  }
}

double dual_pairing(const Eigen::VectorXd& phi, const Eigen::VectorXd& x) {
  if (phi.size() != x.size()) throw std::invalid_argument("dual_pairing: length mismatch");
  return phi.dot(x);
}

double cone_margin(const Handle& c, const Eigen::VectorXd& x) {
  if (x.size() != c.ambient_dim()) throw std::invalid_argument("cone membership: bad dimension");
  switch (c.kind) {
    case Kind::lorentz: return x[0] - x.tail(x.size() - 1).norm();
    case Kind::ell1: return x[0] - x.tail(x.size() - 1).cwiseAbs().sum();
    case Kind::ellinf:
      return x[0] - (x.size() > 1 ? x.tail(x.size() - 1).cwiseAbs().maxCoeff() : 0.0);
    case Kind::simplex: return x.minCoeff();
    case Kind::psd:
      return jordan::min_eigenvalue(jordan::make(jordan::Algebra::hermitian(c.param), x));
  }
  return 0.0;
}

bool in_cone(const Handle& c, const Eigen::VectorXd& x, double tol) {
  return cone_margin(c, x) >= -tol * x.norm();
}

LinearMapDense make_map(Eigen::MatrixXd m, Handle domain, Handle codomain) {
  if (m.cols() != domain.ambient_dim() || m.rows() != codomain.ambient_dim())
    throw std::invalid_argument("make_map: matrix shape does not match cone handles");
  return LinearMapDense{std::move(m), domain, codomain};
}

Eigen::MatrixXd IsotropicMap::as_matrix() const {
  Eigen::VectorXd d = Eigen::VectorXd::Constant(n + 1, beta);
  d[0] = alpha;
  return d.asDiagonal();
}

IsotropicMap twirl(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols() || L.rows() < 2) throw std::invalid_argument("twirl: square map on R^{n+1}");
  const int n = static_cast<int>(L.rows()) - 1;
  IsotropicMap m;
  m.n = n;
  m.alpha = L(0, 0);
  m.beta = L.diagonal().tail(n).sum() / n;
  return m;
}

Eigen::MatrixXd haar_rotation(int n, Rng& rng) {
  // Haar on the full isometry group O(n) of the ball. Restricting to the
  // special orthogonal group would not average to an isotropic map at n = 2
  // (the rotation generator commutes with every rotation).
  Eigen::MatrixXd G(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) G(i, j) = rng.gauss();
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(G);
  Eigen::MatrixXd Q = qr.householderQ();
  const Eigen::MatrixXd R = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < n; ++j)
    if (R(j, j) < 0.0) Q.col(j) = -Q.col(j);
  return Q;
}

Eigen::MatrixXd twirl_monte_carlo(const Eigen::MatrixXd& L, int samples, Rng& rng) {
  const int n = static_cast<int>(L.rows()) - 1;
  Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(L.rows(), L.cols());
  Eigen::MatrixXd gt = Eigen::MatrixXd::Identity(L.rows(), L.cols());
  for (int s = 0; s < samples; ++s) {
    const Eigen::MatrixXd g = haar_rotation(n, rng);
    gt.bottomRightCorner(n, n) = g;
    acc += gt.transpose() * L * gt;  // g~^{-1} = g~^T for rotations
  }
  return acc / samples;
}

bool isotropic_positive(const IsotropicMap& m, double tol) {
  return m.alpha >= -tol && std::abs(m.beta) <= m.alpha + tol;
}

bool isotropic_eb(const IsotropicMap& m, double tol) {
  return m.alpha >= -tol && std::abs(m.beta) <= m.alpha / m.n + tol;
}

bool central_positive(double alpha, const Eigen::MatrixXd& P, const norms::Space& X,
                      const norms::Space& Y, double tol) {
  return norms::operator_norm(P, X, Y) <= alpha + tol;
}

CentralEbResult central_eb(double alpha, const Eigen::MatrixXd& P, const norms::Space& X,
                           const norms::Space& Y, double tol) {
  const norms::NormResult nr = norms::nuclear_norm(P, X, Y);
  CentralEbResult out;
  out.nuclear_lower = nr.exact ? nr.value : nr.lower;
  out.nuclear_upper = nr.exact ? nr.value : nr.upper;
  out.exact = nr.exact;
  // sound decision when possible; with a gap the upper endpoint decides and
  // the flagged result records the interval
  out.eb = (nr.exact ? nr.value : nr.upper) <= alpha + tol;
  if (!out.eb && !nr.exact && out.nuclear_lower <= alpha + tol) out.eb = false;
  return out;
}

Eigen::MatrixXd central_symmetrize(const Eigen::MatrixXd& L) {
  if (L.rows() != L.cols()) throw std::invalid_argument("central_symmetrize: square map");
  const Eigen::Index n = L.rows() - 1;
  Eigen::VectorXd a = Eigen::VectorXd::Constant(L.rows(), -1.0);
  a[0] = 1.0;
  const Eigen::MatrixXd A = a.asDiagonal();
  Eigen::MatrixXd S = 0.5 * (L + A * L * A);
  // the mixed blocks cancel exactly; zero them to kill roundoff
  S.block(0, 1, 1, n).setZero();
  S.block(1, 0, n, 1).setZero();
  return S;
}

MaxMembership max_membership_ell1_factor(const Handle& c, const Eigen::VectorXd& x0,
                                         const std::vector<Eigen::VectorXd>& xs, double tol) {
  const int k = static_cast<int>(xs.size());
  if (k > kMaxSignEnumeration)
    throw std::invalid_argument("max_membership_ell1_factor: too many factors for enumeration");
  for (const auto& x : xs)
    if (x.size() != x0.size())
      throw std::invalid_argument("max_membership_ell1_factor: dimension mismatch");
  MaxMembership out;
  const std::uint64_t total = 1ULL << k;
  for (std::uint64_t bits = 0; bits < total; ++bits) {
    Eigen::VectorXd v = x0;
    for (int i = 0; i < k; ++i) v += ((bits >> i) & 1 ? 1.0 : -1.0) * xs[static_cast<std::size_t>(i)];
    if (!in_cone(c, v, tol)) {
      Eigen::VectorXi s(k);
      for (int i = 0; i < k; ++i) s[i] = (bits >> i) & 1 ? 1 : -1;
      out.member = false;
      out.violating_sign = std::move(s);
      return out;
    }
  }
  out.member = true;
  return out;
}

MinDecompositionResult min_membership_by_generators(const Eigen::VectorXd& z,
                                                    const Eigen::MatrixXd& generators,
                                                    double tol) {
  const NnlsResult sol = nnls(generators, z);
  MinDecompositionResult out;
  out.coefficients = sol.x;
  out.residual = sol.residual;
  out.decomposed = sol.residual <= tol * std::max(1.0, z.norm());
  return out;
}

Eigen::MatrixXd ellinf_extreme_rays(int k) {
  const Eigen::Index cols = Eigen::Index(1) << k;
  Eigen::MatrixXd rays(k + 1, cols);
  for (Eigen::Index bits = 0; bits < cols; ++bits) {
    rays(0, bits) = 1.0;
    for (int i = 0; i < k; ++i) rays(i + 1, bits) = ((bits >> i) & 1) ? 1.0 : -1.0;
  }
  return rays;
}

Eigen::MatrixXd ell1_extreme_rays(int k) {
  Eigen::MatrixXd rays = Eigen::MatrixXd::Zero(k + 1, 2 * k);
  for (int i = 0; i < k; ++i) {
    rays(0, 2 * i) = 1.0;
    rays(i + 1, 2 * i) = 1.0;
    rays(0, 2 * i + 1) = 1.0;
    rays(i + 1, 2 * i + 1) = -1.0;
  }
  return rays;
}

namespace {

json handle_to_json(const Handle& c) { return json{{"kind", to_string(c.kind)}, {"param", c.param}}; }

Handle handle_from_json(const json& j) {
  return Handle{kind_from_string(j.at("kind").get<std::string>()), j.at("param").get<int>()};
}

// spot-check that a tensor pairs nonnegatively against sampled product
// functionals from the dual cone; a sound necessary test, not a decision
bool sampled_max_membership(const Handle& c, const Tensor& t, int samples, double tol,
                            Rng& rng) {
  const Handle cd = dual(c);
  const int dim = cd.ambient_dim();
  std::vector<Eigen::VectorXd> funcs(static_cast<std::size_t>(t.order()));
  for (int s = 0; s < samples; ++s) {
    for (auto& f : funcs) {
      // draw from the dual cone by kind
      switch (cd.kind) {
        case Kind::lorentz: {
          Eigen::VectorXd y(dim);
          for (int i = 1; i < dim; ++i) y[i] = rng.gauss();
          y[0] = y.tail(dim - 1).norm();
          f = y;
          break;
        }
        case Kind::ellinf: {
          Eigen::VectorXd y(dim);
          y[0] = 1.0;
          for (int i = 1; i < dim; ++i) y[i] = static_cast<double>(rng.sign());
          f = y;
          break;
        }
        case Kind::ell1: {
          Eigen::VectorXd y = Eigen::VectorXd::Zero(dim);
          y[0] = 1.0;
          y[1 + rng.uniform_int(dim - 1)] = static_cast<double>(rng.sign());
          f = y;
          break;
        }
        case Kind::simplex: {
          Eigen::VectorXd y(dim);
          for (int i = 0; i < dim; ++i) y[i] = rng.uniform();
          f = y;
          break;
        }
        case Kind::psd: {
          const int d = cd.param;
          const auto alg = jordan::Algebra::hermitian(d);
          Eigen::VectorXd y(dim);
          for (int i = 0; i < dim; ++i) y[i] = rng.gauss();
          auto el = jordan::make(alg, y);
          f = jordan::product(el, el).coords;
          break;
        }
      }
    }
    if (contract_product(t, funcs) < -tol * std::max(1.0, t.data.norm())) return false;
  }
  return true;
}

}  // namespace

Certificate certify_not_annihilating(const LinearMapDense& P, int k, const Tensor& x,
                                     const Tensor& w, double tol, std::uint64_t seed) {
  if (x.order() != k || w.order() != k)
    throw std::invalid_argument("certify_not_annihilating: tensor order != k");
  for (int d : x.dims)
    if (d != P.domain.ambient_dim())
      throw std::invalid_argument("certify_not_annihilating: x dimension mismatch");
  for (int d : w.dims)
    if (d != P.codomain.ambient_dim())
      throw std::invalid_argument("certify_not_annihilating: w dimension mismatch");

  Rng rng(seed, 101);
  const int samples = 256;
  const bool x_checked = sampled_max_membership(P.domain, x, samples, tol, rng);
  const bool w_checked = sampled_max_membership(dual(P.codomain), w, samples, tol, rng);

  const Tensor px = map_power_apply(x, P.matrix);
  const double v = dot(w, px);

  Certificate cert;
  cert.kind = v < -tol ? "not_annihilating" : "no_violation";
  cert.payload = json{{"k", k},
                      {"map", conelab::to_json(P.matrix)},
                      {"domain", handle_to_json(P.domain)},
                      {"codomain", handle_to_json(P.codomain)},
                      {"x", conelab::to_json(x)},
                      {"w", conelab::to_json(w)},
                      {"pairing_value", v},
                      {"tol", tol},
                      {"seed", seed},
                      {"membership_checks",
                       json{{"kind", "sampled_product_functionals"},
                            {"samples", samples},
                            {"x_passed", x_checked},
                            {"w_passed", w_checked},
                            {"note", "memberships asserted by sampling, not decided"}}}};
  return cert;
}

Certificate max_violation_certificate(const Handle& c, const Eigen::VectorXd& x0,
                                      const std::vector<Eigen::VectorXd>& xs,
                                      const Eigen::VectorXi& sign) {
  json xs_json = json::array();
  for (const auto& x : xs) xs_json.push_back(conelab::to_json(x));
  std::vector<int> s(sign.data(), sign.data() + sign.size());
  return Certificate{"membership_max_violation",
                     json{{"cone", handle_to_json(c)},
                          {"x0", conelab::to_json(x0)},
                          {"xs", xs_json},
                          {"sign", s}}};
}

CheckResult verify_certificate(const Certificate& cert) {
  CheckResult res;
  try {
    if (cert.kind == "not_annihilating" || cert.kind == "no_violation") {
      const json& p = cert.payload;
      const Eigen::MatrixXd m = matrix_from_json(p.at("map"));
      const Tensor x = tensor_from_json(p.at("x"));
      const Tensor w = tensor_from_json(p.at("w"));
      const double claimed = p.at("pairing_value").get<double>();
      const double tol = p.at("tol").get<double>();
      const double v = dot(w, map_power_apply(x, m));
      if (std::abs(v - claimed) > 1e-9 * std::max(1.0, std::abs(claimed))) {
        res.detail = "pairing value does not reproduce";
        return res;
      }
      const bool neg = v < -tol;
      if (neg != (cert.kind == "not_annihilating")) {
        res.detail = "kind inconsistent with pairing sign";
        return res;
      }
      res.ok = true;
      return res;
    }
    if (cert.kind == "membership_max_violation") {
      const json& p = cert.payload;
      const Handle c = handle_from_json(p.at("cone"));
      Eigen::VectorXd v = vector_from_json(p.at("x0"));
      const auto s = p.at("sign").get<std::vector<int>>();
      const json& xs = p.at("xs");
      for (std::size_t i = 0; i < xs.size(); ++i) v += s[i] * vector_from_json(xs[i]);
      if (in_cone(c, v, kDefaultTol)) {
        res.detail = "claimed violating sign vector lands inside the cone";
        return res;
      }
      res.ok = true;
      return res;
    }
    if (cert.kind == "membership_min") {
      const json& p = cert.payload;
      const auto alg = algebra_from_json(p.at("algebra"));
      const json& target = p.at("target");
      const json& terms = p.at("terms");
      const int kk = static_cast<int>(target.size()) - 1;
      std::vector<Eigen::VectorXd> sum(static_cast<std::size_t>(kk) + 1,
                                       Eigen::VectorXd::Zero(alg.ambient_dim()));
      double scale = 1.0;
      for (const auto& term : terms) {
        const Eigen::VectorXd ell1 = vector_from_json(term.at("ell1"));
        const Eigen::VectorXd jc = vector_from_json(term.at("jordan"));
        if (!in_cone(Handle::ell1(kk), ell1, kDefaultTol)) {
          res.detail = "an ell1 factor leaves its cone";
          return res;
        }
        const auto el = jordan::make(alg, jc);
        if (jordan::min_eigenvalue(el) < -kDefaultTol * std::max(1.0, jc.norm())) {
          res.detail = "a jordan factor leaves its cone";
          return res;
        }
        for (int i = 0; i <= kk; ++i) sum[static_cast<std::size_t>(i)] += ell1[i] * jc;
        scale = std::max(scale, jc.norm());
      }
      double err = 0.0;
      for (int i = 0; i <= kk; ++i)
        err = std::max(err, (sum[static_cast<std::size_t>(i)] -
                             vector_from_json(target[static_cast<std::size_t>(i)])).norm());
      if (err > 1e-10 * scale) {
        res.detail = "decomposition does not reconstruct the target";
        return res;
      }
      res.ok = true;
      return res;
    }
    if (cert.kind == "eb_violation") {
      const json& p = cert.payload;
      // recompute the reported eigenvalue from the stored complex matrix
      const Eigen::MatrixXd re = matrix_from_json(p.at("choi_real"));
      const Eigen::MatrixXd im = matrix_from_json(p.at("choi_imag"));
      Eigen::MatrixXcd C = re.cast<std::complex<double>>();
      C += std::complex<double>(0, 1) * im.cast<std::complex<double>>();
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(C);
      const double claimed = p.at("min_eigenvalue").get<double>();
      if (std::abs(es.eigenvalues()[0] - claimed) > 1e-8 * std::max(1.0, std::abs(claimed))) {
        res.detail = "stored eigenvalue does not reproduce";
        return res;
      }
      if (p.at("violated").get<bool>() != (claimed < -p.at("tol").get<double>())) {
        res.detail = "violation flag inconsistent with eigenvalue";
        return res;
      }
      res.ok = true;
      return res;
    }
    res.detail = "unknown certificate kind: " + cert.kind;
    return res;
  } catch (const std::exception& e) {
    res.detail = std::string("verification error: ") + e.what();
    return res;
  }
}

json to_json(const Certificate& cert) { return json{{"kind", cert.kind}, {"payload", cert.payload}}; }

Certificate certificate_from_json(const json& j) {
  return Certificate{j.at("kind").get<std::string>(), j.at("payload")};
}

}  // namespace conelab::cones
