#include "doctest.h"

#include <Eigen/Dense>
#include <cmath>

#include "conelab/compalg.hpp"
#include "conelab/rng.hpp"
#include "test_util.hpp"

using namespace conelab;
using namespace conelab::compalg;
using conelab::testutil::random_vector;

namespace {
const AlgKind kAllKinds[] = {AlgKind::R, AlgKind::C, AlgKind::Csplit, AlgKind::H, AlgKind::O};
const AlgKind kDivision[] = {AlgKind::R, AlgKind::C, AlgKind::H, AlgKind::O};

std::vector<ProtocolCone> all_protocol_cones() {
  std::vector<ProtocolCone> out;
  for (AlgKind a1 : {AlgKind::R, AlgKind::Csplit})
    for (AlgKind a2 : kDivision) out.push_back(ProtocolCone::make(a1, a2));
  return out;
}
}  // namespace

TEST_CASE("hand-checked products") {
  const auto& H = algebra(AlgKind::H);
  Eigen::VectorXd x(4), y(4);
  x << 1, 1, 0, 0;  // 1 + i
  y << 0, 0, 1, 0;  // j
  const Eigen::VectorXd xy = H.multiply(x, y);
  Eigen::VectorXd expect(4);
  expect << 0, 0, 1, 1;  // j + k
  CHECK((xy - expect).norm() == 0.0);
  CHECK(H.q(xy) == doctest::Approx(2.0));
  CHECK(H.q(x) * H.q(y) == doctest::Approx(2.0));

  const auto& Cs = algebra(AlgKind::Csplit);
  Eigen::VectorXd u(2), v(2);
  u << 1, 0;
  v << 0, 1;
  CHECK((Cs.multiply(u, v) - v).norm() == 0.0);
  CHECK(Cs.q(u) == doctest::Approx(1.0));
  CHECK(Cs.q(v) == doctest::Approx(-1.0));
}

TEST_CASE("unit element") {
  Rng rng(41);
  for (AlgKind k : kAllKinds) {
    const auto& A = algebra(k);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(A.dim);
    e[0] = 1.0;
    const Eigen::VectorXd y = random_vector(A.dim, rng);
    CHECK((A.multiply(e, y) - y).norm() < 1e-14);
    CHECK((A.multiply(y, e) - y).norm() < 1e-14);
  }
}

TEST_CASE("composition law: |q(x*y) - q(x)q(y)| <= 1e-12 over 1e3 random pairs") {
  Rng rng(43);
  for (AlgKind k : kAllKinds) {
    const auto& A = algebra(k);
    for (int trial = 0; trial < 1000; ++trial) {
      Eigen::VectorXd x = random_vector(A.dim, rng);
      Eigen::VectorXd y = random_vector(A.dim, rng);
      x /= std::max(1.0, x.norm());
      y /= std::max(1.0, y.norm());
      CHECK(std::abs(A.q(A.multiply(x, y)) - A.q(x) * A.q(y)) <= 1e-12);
    }
  }
}

TEST_CASE("m m^T = dim * id exactly for the division algebras") {
  for (AlgKind k : kDivision) {
    const auto& A = algebra(k);
    const Eigen::MatrixXd m = A.mult_matrix();
    const Eigen::MatrixXd gram = m * m.transpose();
    const Eigen::MatrixXd expect = A.dim * Eigen::MatrixXd::Identity(A.dim, A.dim);
    CHECK((gram - expect).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("direct sum map: units, scalar case, boundary rays") {
  for (const auto& pc : all_protocol_cones()) {
    const int D = pc.N + 1;
    const Eigen::MatrixXd M = direct_sum_map(pc);
    Eigen::VectorXd e = Eigen::VectorXd::Zero(D);
    e[0] = 1.0;
    Eigen::VectorXd ee = Eigen::VectorXd::Zero(D * D);
    ee[0] = 1.0;  // e (x) e
    CHECK((M * ee - e).norm() == 0.0);
  }

  // (R, R): plain scalar multiplication on each coordinate pair
  const auto rr = ProtocolCone::make(AlgKind::R, AlgKind::R);
  const Eigen::MatrixXd M = direct_sum_map(rr);
  Eigen::VectorXd u(2), v(2);
  u << 2, 1;
  v << 3, -1;
  Eigen::VectorXd uv(4);
  uv << 6, -2, 3, -1;  // u (x) v flattened row-major
  Eigen::VectorXd w = M * uv;
  CHECK(w[0] == doctest::Approx(6.0));
  CHECK(w[1] == doctest::Approx(-1.0));

  // products of cone points stay in the cone (sampled)
  Rng rng(47);
  for (const auto& pc : all_protocol_cones()) {
    const int D = pc.N + 1;
    const Eigen::MatrixXd Mp = direct_sum_map(pc);
    for (int trial = 0; trial < 200; ++trial) {
      // boundary rays: (t, x) with |x| = t
      Eigen::VectorXd x = random_vector(D - 1, rng), y = random_vector(D - 1, rng);
      Eigen::VectorXd a(D), b(D);
      a[0] = x.norm();
      a.tail(D - 1) = x;
      b[0] = y.norm();
      b.tail(D - 1) = y;
      Eigen::VectorXd ab(D * D);
      for (int i = 0; i < D; ++i)
        for (int j = 0; j < D; ++j) ab[i * D + j] = a[i] * b[j];
      const Eigen::VectorXd z = Mp * ab;
      CHECK(z[0] >= z.tail(D - 1).norm() - 1e-9 * std::max(1.0, z.norm()));
    }
  }
}

TEST_CASE("protocol step closed form") {
  const auto rh = ProtocolCone::make(AlgKind::R, AlgKind::H);
  const auto [a1, b1] = protocol_step(rh, 1.0, 0.3);
  CHECK(a1 == doctest::Approx(1.0));
  CHECK(b1 == doctest::Approx(4.0 * 0.09));

  const auto cc = ProtocolCone::make(AlgKind::Csplit, AlgKind::C);
  const auto [a2, b2] = protocol_step(cc, 1.0, 0.0);
  CHECK(a2 == doctest::Approx(1.0));
  CHECK(b2 == doctest::Approx(0.0));

  const auto ch = ProtocolCone::make(AlgKind::Csplit, AlgKind::H);
  CHECK(protocol_map(ch, 0.1) == doctest::Approx(0.36 / 5.05).epsilon(1e-12));
}

TEST_CASE("closed form matches the twirled matrix construction, 20 random points per cone") {
  Rng rng(53);
  for (const auto& pc : all_protocol_cones()) {
    for (int trial = 0; trial < 20; ++trial) {
      const double alpha = rng.uniform(0.1, 2.0);
      const double beta = rng.uniform(-1.0, 1.0);
      const auto [ac, bc] = protocol_step(pc, alpha, beta);
      const auto [at, bt] = protocol_step_via_twirl(pc, alpha, beta);
      CHECK(std::abs(ac - at) <= 1e-10);
      CHECK(std::abs(bc - bt) <= 1e-10);
    }
  }
}

TEST_CASE("thresholds: closed-form roots and the EB threshold 1/N") {
  CHECK(protocol_threshold(ProtocolCone::make(AlgKind::R, AlgKind::R)) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(protocol_threshold(ProtocolCone::make(AlgKind::R, AlgKind::O)) == doctest::Approx(0.125).epsilon(1e-9));
  // smallest positive root of (n+1) b^2 - n^2 b + (n-1), i.e. 1/(n+1)
  CHECK(protocol_threshold(ProtocolCone::make(AlgKind::Csplit, AlgKind::H)) == doctest::Approx(0.2).epsilon(1e-9));

  for (const auto& pc : all_protocol_cones()) {
    const double th = protocol_threshold(pc);
    CHECK(th <= 1.0 / pc.N + 1e-9);
    CHECK(th == doctest::Approx(1.0 / pc.N).epsilon(1e-9));
  }
}

TEST_CASE("iteration trapping at threshold +- 1e-3") {
  for (const auto& pc : all_protocol_cones()) {
    const double th = protocol_threshold(pc);
    const bool split_scalar = (pc.alg1 == AlgKind::Csplit && pc.alg2 == AlgKind::R);
    const double below = th - 1e-3;
    const double above = th + 1e-3;

    if (!split_scalar) {
      // below the threshold the ratio is driven to zero
      auto traj = protocol_trajectory(pc, below, 200);
      CHECK(traj.back() < 1e-8);
      // above it is driven upward
      auto up = protocol_trajectory(pc, above, 5);
      for (int i = 0; i < 5; ++i) CHECK(up[i + 1] > up[i]);
    } else {
      // (Csplit, R): the root beta = 1/2 of the iteration map attracts from
      // both sides, so the trajectory is trapped at the threshold rather
      // than pushed to zero; it still never crosses to the other side
      auto traj = protocol_trajectory(pc, below, 200);
      for (double b : traj) CHECK(b <= th + 1e-12);
      CHECK(traj.back() > traj.front());
      auto upper = protocol_trajectory(pc, above, 200);
      for (double b : upper) CHECK(b >= th - 1e-12);
      CHECK(upper.back() < upper.front());
    }
  }
}
