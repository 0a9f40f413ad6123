#include "conelab/sinkhorn.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace conelab::sinkhorn {

using jordan::Algebra;
using jordan::Element;

cones::Handle cone_of(const Algebra& alg) {
  return alg.kind == jordan::Kind::spin ? cones::Handle::lorentz(alg.param)
                                        : cones::Handle::psd(alg.param);
}

namespace {

Element random_boundary_point(const Algebra& alg, Rng& rng) {
  Eigen::VectorXd v(alg.ambient_dim());
  for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = rng.gauss();
  Element x = jordan::make(alg, v);
  Element sq = jordan::product(x, x);
  const double lam = jordan::min_eigenvalue(sq);
  return jordan::sub(sq, jordan::scale(lam, jordan::identity(alg)));
}

double interiority_check(const Eigen::MatrixXd& P, const Algebra& dom, const Algebra& cod,
                         int samples, Rng& rng) {
  double margin = std::numeric_limits<double>::infinity();
  auto probe = [&](const Element& c) {
    const Eigen::VectorXd img = P * c.coords;
    const double m = jordan::min_eigenvalue(jordan::make(cod, img)) / std::max(1.0, img.norm());
    margin = std::min(margin, m);
  };
  for (const auto& c : jordan::spectral_decompose(jordan::identity(dom)).frame) probe(c);
  for (int s = 0; s < samples; ++s) probe(random_boundary_point(dom, rng));
  return margin;
}

}  // namespace

ScalingResult sinkhorn_scale(const Eigen::MatrixXd& P, const Algebra& dom, const Algebra& cod,
                             const SinkhornOptions& opts) {
  if (P.cols() != dom.ambient_dim() || P.rows() != cod.ambient_dim())
    throw std::invalid_argument("sinkhorn_scale: matrix shape mismatch");

  ScalingResult res;
  Rng rng(opts.seed, 505);
  res.interiority_margin = interiority_check(P, dom, cod, opts.boundary_samples, rng);
  if (res.interiority_margin < 1e-14)
    throw std::runtime_error("sinkhorn_scale: map does not send the cone strictly inside");

  const Element e1 = jordan::identity(dom);
  const Element e2 = jordan::identity(cod);
  res.lambda_expected = e2.coords.squaredNorm() / e1.coords.squaredNorm();

  auto iterate_map = [&](const Element& x) -> Element {
    const Element px = jordan::make(cod, P * x.coords);
    const Element inv_px = jordan::inverse_or_throw(px);
    const Element back = jordan::make(dom, P.transpose() * inv_px.coords);
    Element m = jordan::inverse_or_throw(back);
    const double denom = jordan::inner(e1, m);
    if (denom <= 0.0) throw std::runtime_error("sinkhorn_scale: iteration left the cone slice");
    return jordan::scale(1.0 / denom, m);
  };

  Element x = jordan::scale(1.0 / jordan::inner(e1, e1), e1);
  double prev_res = std::numeric_limits<double>::infinity();
  int non_monotone = 0;
  res.converged = false;
  int it = 0;
  for (; it < opts.max_iter; ++it) {
    const Element mx = iterate_map(x);
    const double fp_res = jordan::sub(mx, x).coords.norm();
    res.trajectory.push_back(fp_res);
    if (!res.damped) {
      x = mx;
    } else {
      x = jordan::scale(1.0, jordan::add(jordan::scale(0.5, x), jordan::scale(0.5, mx)));
    }
    if (fp_res > prev_res) {
      if (++non_monotone > 1000) res.damped = true;
    }
    prev_res = fp_res;
    if (fp_res <= 1e-14 * std::max(1.0, x.coords.norm())) {
      res.converged = true;
      ++it;
      break;
    }
  }
  res.iterations = it;

  // assemble the automorphisms from the fixed point
  const Element y = jordan::make(cod, P * x.coords);
  res.sqrt_x = jordan::sqrt_or_throw(x);
  const Element sqrt_y = jordan::sqrt_or_throw(y);
  res.inv_sqrt_y = jordan::inverse_or_throw(sqrt_y);
  res.A = jordan::quadratic_rep(res.sqrt_x);
  res.B = jordan::quadratic_rep(res.inv_sqrt_y);
  res.P_tilde = res.B * P * res.A;

  res.residual_unital = (res.P_tilde * e1.coords - e2.coords).norm();
  // lambda from the fixed-point relation P^* o inv2 o P (x) = lambda x^{-1}
  const Element inv_px = jordan::inverse_or_throw(y);
  const Eigen::VectorXd back = P.transpose() * inv_px.coords;
  res.lambda = jordan::inner(jordan::make(dom, back), x);
  res.residual_trace =
      (res.P_tilde.transpose() * e2.coords - res.lambda_expected * e1.coords).norm();
  if (res.converged &&
      (res.residual_unital > opts.tol || res.residual_trace > opts.tol))
    res.converged = false;
  return res;
}

MinDecomposition ell1_break_decompose(const std::vector<jordan::Element>& x, double tol) {
  if (x.size() < 2) throw std::invalid_argument("ell1_break_decompose: need (x0, x1..xk)");
  const int k = static_cast<int>(x.size()) - 1;
  const Algebra alg = x[0].alg;
  for (const auto& xi : x)
    if (!(xi.alg == alg)) throw std::invalid_argument("ell1_break_decompose: algebra mismatch");

  // maximal-tensor-product membership by sign enumeration
  std::vector<Eigen::VectorXd> tails;
  tails.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) tails.push_back(x[static_cast<std::size_t>(i)].coords);
  const auto mm = cones::max_membership_ell1_factor(cone_of(alg), x[0].coords, tails, tol);
  if (!mm.member) {
    std::ostringstream oss;
    oss << "ell1_break_decompose: input is outside the maximal cone; violating signs (";
    for (Eigen::Index i = 0; i < mm.violating_sign->size(); ++i)
      oss << (i ? "," : "") << (*mm.violating_sign)[i];
    oss << ")";
    throw std::runtime_error(oss.str());
  }

  MinDecomposition out;
  Element x0 = x[0];
  const double eps = 1e-8 * std::max(1.0, x0.coords.norm());
  if (jordan::min_eigenvalue(x0) < eps) {
    x0 = jordan::add(x0, jordan::scale(eps, jordan::identity(alg)));
    out.regularized = true;
  }

  // normalize by the cone automorphism sending e to x0
  const Element sqrt_x0 = jordan::sqrt_or_throw(x0);
  const Eigen::MatrixXd Q = jordan::quadratic_rep(sqrt_x0);
  const Eigen::MatrixXd Qinv = jordan::quadratic_rep(jordan::inverse_or_throw(sqrt_x0));

  const double rk = std::sqrt(static_cast<double>(k));
  Element middle = jordan::scale(rk, jordan::identity(alg));
  std::vector<jordan::Parts> split;
  split.reserve(static_cast<std::size_t>(k));
  for (int i = 1; i <= k; ++i) {
    const Element xi_n = jordan::make(alg, Qinv * x[static_cast<std::size_t>(i)].coords);
    split.push_back(jordan::parts(xi_n));
    middle = jordan::sub(middle, split.back().abs);
  }
  out.lemma_margin = jordan::min_eigenvalue(middle);

  auto unit = [&](int i) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(k + 1);
    v[i] = 1.0;
    return v;
  };
  auto pm = [&](int i, double s) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(k + 1);
    v[0] = 1.0;
    v[i] = s;
    return v;
  };

  out.terms.emplace_back(unit(0), jordan::make(alg, Q * middle.coords));
  for (int i = 1; i <= k; ++i) {
    const auto& p = split[static_cast<std::size_t>(i - 1)];
    out.terms.emplace_back(pm(i, 1.0), jordan::make(alg, Q * p.pos.coords));
    out.terms.emplace_back(pm(i, -1.0), jordan::make(alg, Q * p.neg.coords));
  }

  // target (sqrt(k) x0, x1, ..., xk), with the regularized x0
  out.target.push_back(jordan::scale(rk, x0));
  for (int i = 1; i <= k; ++i) out.target.push_back(x[static_cast<std::size_t>(i)]);

  double err = 0.0, scale = 1.0;
  for (int i = 0; i <= k; ++i) {
    Eigen::VectorXd acc = Eigen::VectorXd::Zero(alg.ambient_dim());
    for (const auto& [c, v] : out.terms) acc += c[i] * v.coords;
    err = std::max(err, (acc - out.target[static_cast<std::size_t>(i)].coords).norm());
    scale = std::max(scale, out.target[static_cast<std::size_t>(i)].coords.norm());
  }
  out.reconstruction_residual = err;
  if (err > 1e-10 * scale)
    throw std::runtime_error("ell1_break_decompose: reconstruction residual out of bounds");
  return out;
}

cones::Certificate decomposition_certificate(const MinDecomposition& d) {
  json target = json::array();
  for (const auto& t : d.target) target.push_back(conelab::to_json(t.coords));
  json terms = json::array();
  for (const auto& [c, v] : d.terms)
    terms.push_back(json{{"ell1", conelab::to_json(c)}, {"jordan", conelab::to_json(v.coords)}});
  return cones::Certificate{
      "membership_min",
      json{{"algebra", algebra_to_json(d.target[0].alg)},
           {"target", target},
           {"terms", terms},
           {"lemma_margin", d.lemma_margin},
           {"reconstruction_residual", d.reconstruction_residual}}};
}

IntervalReport lemma_interval_check(const jordan::Element& x, double tol) {
  IntervalReport r;
  const Element e = jordan::identity(x.alg);
  const double thr = tol * std::max(1.0, x.coords.norm());
  r.premise_both_sides = jordan::min_eigenvalue(jordan::add(e, x)) >= -thr &&
                         jordan::min_eigenvalue(jordan::sub(e, x)) >= -thr;
  const Element x2 = jordan::product(x, x);
  r.margin_square = jordan::min_eigenvalue(jordan::sub(e, x2));
  r.conclusion_square = r.margin_square >= -thr;
  r.premise_square = r.conclusion_square;
  r.margin_linear = jordan::min_eigenvalue(jordan::sub(e, x));
  r.conclusion_linear = r.margin_linear >= -thr;
  return r;
}

}  // namespace conelab::sinkhorn
