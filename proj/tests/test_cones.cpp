#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "conelab/cones.hpp"
#include "conelab/hurwitz.hpp"
#include "conelab/jordan.hpp"
#include "conelab/rng.hpp"
#include "test_util.hpp"

using namespace conelab;
using namespace conelab::cones;
using conelab::testutil::random_matrix;
using conelab::testutil::random_vector;

TEST_CASE("handles, duality, pairing") {
  CHECK(Handle::lorentz(3).ambient_dim() == 4);
  CHECK(Handle::psd(3).ambient_dim() == 9);
  CHECK(dual(Handle::ell1(4)) == Handle::ellinf(4));
  CHECK(dual(dual(Handle::ell1(4))) == Handle::ell1(4));
  CHECK(dual(Handle::lorentz(5)) == Handle::lorentz(5));
  CHECK(dual(Handle::simplex(4)) == Handle::simplex(4));

  Eigen::VectorXd e0 = Eigen::VectorXd::Zero(4);
  e0[0] = 1.0;
  CHECK(dual_pairing(e0, e0) == 1.0);

  Eigen::VectorXd a(4), b(4);
  a << 1, 0.3, -0.4, 0.1;
  b << 1, -0.3, 0.4, -0.1;
  CHECK(dual_pairing(a, b) == doctest::Approx(1.0 - a.tail(3).squaredNorm()));

  // psd(2) coordinates: identity and a traceless direction are orthogonal
  const auto I2 = jordan::identity(jordan::Algebra::hermitian(2));
  Eigen::MatrixXcd sx(2, 2);
  sx << 0, 1, 1, 0;
  const auto ex = jordan::encode_hermitian(2, sx);
  CHECK(dual_pairing(I2.coords, ex.coords) == doctest::Approx(0.0));

  CHECK_THROWS(dual_pairing(a, Eigen::VectorXd::Zero(3)));
}

TEST_CASE("per-kind membership") {
  Eigen::VectorXd x(4);
  x << 1, 0.6, 0.8, 0;
  CHECK(in_cone(Handle::lorentz(3), x));  // boundary point

  Eigen::VectorXd y(3);
  y << 1, 0.6, 0.6;
  CHECK_FALSE(in_cone(Handle::ell1(2), y));
  CHECK(in_cone(Handle::ellinf(2), y));

  Eigen::VectorXd s(3);
  s << 0.2, 0, 0.8;
  CHECK(in_cone(Handle::simplex(3), s));
  s[1] = -0.1;
  CHECK_FALSE(in_cone(Handle::simplex(3), s));

  Rng rng(211);
  const auto sq = jordan::product(jordan::make(jordan::Algebra::hermitian(3), random_vector(9, rng)),
                                  jordan::make(jordan::Algebra::hermitian(3), random_vector(9, rng)));
  // squares of a single element
  const auto el = jordan::make(jordan::Algebra::hermitian(3), random_vector(9, rng));
  CHECK(in_cone(Handle::psd(3), jordan::product(el, el).coords));
  (void)sq;

  // zero is in every cone
  for (const Handle h : {Handle::lorentz(2), Handle::ell1(2), Handle::psd(2), Handle::simplex(3)})
    CHECK(in_cone(h, Eigen::VectorXd::Zero(h.ambient_dim())));
}

TEST_CASE("sign-vector membership for an ell1 factor") {
  // x_i = 0: reduces to cone membership of x0
  Eigen::VectorXd e(4);
  e << 1, 0, 0, 0;
  const std::vector<Eigen::VectorXd> zeros(3, Eigen::VectorXd::Zero(4));
  CHECK(max_membership_ell1_factor(Handle::lorentz(3), e, zeros).member);

  // lorentz with a unit base direction: both e +- x1 are boundary points
  Eigen::VectorXd v(4);
  v << 0, 0.6, 0.8, 0;
  CHECK(max_membership_ell1_factor(Handle::lorentz(3), e, {v}).member);

  // simplex counterexample with the violating sign reported
  Eigen::VectorXd x0(2), x1(2);
  x0 << 1, 1;
  x1 << 1, -2;
  const auto mm = max_membership_ell1_factor(Handle::simplex(2), x0, {x1});
  CHECK_FALSE(mm.member);
  REQUIRE(mm.violating_sign.has_value());
  // (2,-1) = x0 + x1 is outside
  CHECK((*mm.violating_sign)[0] == 1);

  // a verifiable certificate
  const auto cert = max_violation_certificate(Handle::simplex(2), x0, {x1}, *mm.violating_sign);
  CHECK(verify_certificate(cert).ok);

  // invariance under permuting and flipping the x_i
  Rng rng(223);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd y0(4);
    Eigen::VectorXd g = random_vector(3, rng);
    y0[0] = g.norm() + rng.uniform();
    y0.tail(3) = g;
    std::vector<Eigen::VectorXd> xs = {0.3 * random_vector(4, rng), 0.3 * random_vector(4, rng),
                                       0.3 * random_vector(4, rng)};
    const bool base = max_membership_ell1_factor(Handle::lorentz(3), y0, xs).member;
    std::swap(xs[0], xs[2]);
    xs[1] = -xs[1];
    CHECK(max_membership_ell1_factor(Handle::lorentz(3), y0, xs).member == base);
  }

  CHECK_THROWS(max_membership_ell1_factor(Handle::lorentz(3), e,
                                          std::vector<Eigen::VectorXd>(21, v)));
}

TEST_CASE("twirl formula and Monte-Carlo oracle") {
  CHECK(twirl(Eigen::MatrixXd::Identity(4, 4)).alpha == doctest::Approx(1.0));
  CHECK(twirl(Eigen::MatrixXd::Identity(4, 4)).beta == doctest::Approx(1.0));

  Eigen::VectorXd d(4);
  d << 2, 3, 0, 0;
  const IsotropicMap t = twirl(Eigen::MatrixXd(d.asDiagonal()));
  CHECK(t.alpha == doctest::Approx(2.0));
  CHECK(t.beta == doctest::Approx(1.0));

  // idempotence: the twirl of an isotropic matrix is itself
  const IsotropicMap tt = twirl(t.as_matrix());
  CHECK(tt.alpha == doctest::Approx(t.alpha));
  CHECK(tt.beta == doctest::Approx(t.beta));

  // exact invariance under conjugation by base rotations
  Rng rng(227);
  for (int n : {2, 3, 5}) {
    const Eigen::MatrixXd L = random_matrix(n + 1, n + 1, rng);
    const IsotropicMap base = twirl(L);
    for (int trial = 0; trial < 20; ++trial) {
      Eigen::MatrixXd gt = Eigen::MatrixXd::Identity(n + 1, n + 1);
      gt.bottomRightCorner(n, n) = haar_rotation(n, rng);
      const IsotropicMap rot = twirl(gt.transpose() * L * gt);
      CHECK(rot.alpha == doctest::Approx(base.alpha).epsilon(1e-12));
      CHECK(rot.beta == doctest::Approx(base.beta).epsilon(1e-12));
    }
  }

  // Monte-Carlo sampling approaches the exact isotropic matrix
  for (int n : {2, 3}) {
    const Eigen::MatrixXd L = random_matrix(n + 1, n + 1, rng);
    const Eigen::MatrixXd mc = twirl_monte_carlo(L, 10000, rng);
    const Eigen::MatrixXd exact = twirl(L).as_matrix();
    CHECK((mc - exact).cwiseAbs().maxCoeff() <= 5e-2);
  }
}

TEST_CASE("isotropic positivity and entanglement breaking thresholds") {
  CHECK(isotropic_eb(IsotropicMap{1.0, 1.0 / 3.0, 3}));
  CHECK_FALSE(isotropic_eb(IsotropicMap{1.0, 0.34, 3}));
  CHECK(isotropic_positive(IsotropicMap{1.0, 0.34, 3}));
  CHECK_FALSE(isotropic_positive(IsotropicMap{1.0, 1.01, 3}));

  Rng rng(229);
  for (int t = 0; t < 500; ++t) {
    const IsotropicMap m{rng.uniform(0.0, 2.0), rng.uniform(-2.0, 2.0), 1 + rng.uniform_int(6)};
    if (isotropic_eb(m)) CHECK(isotropic_positive(m));
  }
}

TEST_CASE("central maps: positivity and entanglement breaking via norms") {
  const Eigen::MatrixXd id3 = Eigen::MatrixXd::Identity(3, 3);
  CHECK(central_positive(1.0, id3, norms::Space::l2(3), norms::Space::l2(3)));
  CHECK_FALSE(central_positive(0.99, id3, norms::Space::l2(3), norms::Space::l2(3)));
  CHECK(central_eb(3.0, id3, norms::Space::l2(3), norms::Space::l2(3)).eb);
  CHECK_FALSE(central_eb(2.99, id3, norms::Space::l2(3), norms::Space::l2(3)).eb);
  CHECK(central_eb(0.0, Eigen::MatrixXd::Zero(3, 3), norms::Space::l2(3), norms::Space::l2(3)).eb);
}

TEST_CASE("central symmetrization") {
  Rng rng(233);
  // central input passes through unchanged
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(4, 4);
  c(0, 0) = 2.0;
  c.bottomRightCorner(3, 3) = random_matrix(3, 3, rng);
  CHECK((central_symmetrize(c) - c).norm() == doctest::Approx(0.0));

  // pure off-diagonal blocks are annihilated
  Eigen::MatrixXd off = Eigen::MatrixXd::Zero(4, 4);
  off.block(0, 1, 1, 3) = random_matrix(1, 3, rng);
  off.block(1, 0, 3, 1) = random_matrix(3, 1, rng);
  CHECK(central_symmetrize(off).norm() == doctest::Approx(0.0));

  for (int t = 0; t < 100; ++t) {
    const Eigen::MatrixXd L = random_matrix(5, 5, rng);
    const Eigen::MatrixXd S = central_symmetrize(L);
    CHECK(std::abs(S.trace() - L.trace()) <= 1e-14 * std::max(1.0, std::abs(L.trace())));
    CHECK(S.block(0, 1, 1, 4).norm() == 0.0);
    CHECK(S.block(1, 0, 4, 1).norm() == 0.0);
  }
}

TEST_CASE("pairing certificates") {
  // identity on the Lorentz cone of the plane against the witness pair
  const auto wp = hurwitz::lorentz_witness_pair(2, 2);
  const LinearMapDense id = make_map(Eigen::MatrixXd::Identity(3, 3), Handle::lorentz(2),
                                     Handle::lorentz(2));
  const Certificate cert = certify_not_annihilating(id, 2, wp.z_plus, wp.z_minus);
  CHECK(cert.kind == "not_annihilating");
  CHECK(cert.payload.at("pairing_value").get<double>() == -1.0);
  CHECK(verify_certificate(cert).ok);

  // JSON round trip re-verifies; tampering is caught
  const Certificate back = certificate_from_json(to_json(cert));
  CHECK(verify_certificate(back).ok);
  Certificate bad = back;
  bad.payload["pairing_value"] = 0.5;
  CHECK_FALSE(verify_certificate(bad).ok);

  // isotropic maps: pairing 1 - 2 beta^2, negative beyond 1/sqrt(2)
  for (double beta : {0.3, 0.6, 0.75, 0.9}) {
    const IsotropicMap iso{1.0, beta, 2};
    const LinearMapDense m = make_map(iso.as_matrix(), Handle::lorentz(2), Handle::lorentz(2));
    const Certificate c = certify_not_annihilating(m, 2, wp.z_plus, wp.z_minus);
    CHECK(c.payload.at("pairing_value").get<double>() ==
          doctest::Approx(1.0 - 2.0 * beta * beta).epsilon(1e-12));
    CHECK((c.kind == "not_annihilating") == (beta > 1.0 / std::sqrt(2.0)));
    CHECK(verify_certificate(c).ok);
  }

  // rank-one breaking maps never produce a negative pairing on valid inputs
  Rng rng(239);
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd dir = random_vector(2, rng);
    Eigen::VectorXd xcone(3), phi(3);
    xcone[0] = dir.norm() * (1.0 + rng.uniform());
    xcone.tail(2) = dir;
    Eigen::VectorXd dir2 = random_vector(2, rng);
    phi[0] = dir2.norm() * (1.0 + rng.uniform());
    phi.tail(2) = dir2;
    const Eigen::MatrixXd rank_one = xcone * phi.transpose();
    const LinearMapDense eb = make_map(rank_one, Handle::lorentz(2), Handle::lorentz(2));
    const Certificate c = certify_not_annihilating(eb, 2, wp.z_plus, wp.z_minus);
    CHECK(c.kind == "no_violation");
    CHECK(c.payload.at("pairing_value").get<double>() >= -1e-9);
  }
}

TEST_CASE("minimal-cone decomposition by generators") {
  // ell1(2) (x) ell1(2) minimal cone from the 16 products of extreme rays
  const Eigen::MatrixXd rays = ell1_extreme_rays(2);
  Eigen::MatrixXd gens(9, 16);
  int col = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Eigen::VectorXd g(9);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) g[a * 3 + b] = rays(a, i) * rays(b, j);
      gens.col(col++) = g;
    }

  Rng rng(241);
  // nonnegative combinations decompose with tiny residual
  for (int t = 0; t < 50; ++t) {
    Eigen::VectorXd c(16);
    for (int i = 0; i < 16; ++i) c[i] = std::max(0.0, rng.gauss());
    const Eigen::VectorXd z = gens * c;
    const auto r = min_membership_by_generators(z, gens);
    CHECK(r.decomposed);
    CHECK(r.residual <= 1e-10 * std::max(1.0, z.norm()));
  }

  // the entangled corner tensor is not decomposable
  Eigen::VectorXd ent = Eigen::VectorXd::Zero(9);
  ent[0] = 1.0;   // e0 (x) e0
  ent[4] = 1.0;   // e1 (x) e1 coefficient exceeding the separable reach
  ent[8] = -1.0;  // e2 (x) e2
  const auto r = min_membership_by_generators(ent, gens);
  CHECK_FALSE(r.decomposed);
}
