// Extremum-seeking gradient estimator: dither geometry, high-pass/low-pass
// update, averaged-system gradient scale, bearing normalisation.
#include <cmath>
#include <cstdint>
#include <numbers>

#include "artva/es_gradient.hpp"
#include "doctest.h"

using namespace artva;

namespace {

DitherParams params(double amplitude, double omega, double kappa,
                    bool planar) {
  DitherParams p;
  p.amplitude = amplitude;
  p.omega = omega;
  p.kappa = kappa;
  p.planar = planar;
  return p;
}

}  // namespace

TEST_CASE("dither: closed-form samples at omega = pi/2") {
  const double pi = std::numbers::pi;
  const auto p0 = params(1.0, pi / 2.0, 0.0, true);

  const Eigen::Vector3d g1 = dither(p0, 1);
  CHECK(g1.x() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g1.y() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(g1.z() == 0.0);

  const Eigen::Vector3d g4 = dither(p0, 4);
  CHECK(g4.x() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(g4.y() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(g4.z() == 0.0);

  // Non-planar with kappa: third axis = sin(kappa * omega * t).
  const auto p3d = params(1.0, pi / 2.0, 0.5, false);
  CHECK(dither(p3d, 1).z() == doctest::Approx(std::sin(0.5 * pi / 2.0)));
}

TEST_CASE("dither: planar components always jointly unit norm") {
  const auto p = params(2.0, 1.1, 0.7, false);
  for (std::uint64_t t = 1; t <= 500; ++t) {
    const Eigen::Vector3d g = dither(p, t);
    CHECK(g.head<2>().norm() == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("dither: discrete orthogonality over one period") {
  // omega = pi/2: the planar components are orthogonal over period 4.
  const auto p2d = params(1.0, std::numbers::pi / 2.0, 0.0, true);
  Eigen::Matrix3d gram2d = Eigen::Matrix3d::Zero();
  for (std::uint64_t t = 1; t <= 4; ++t) {
    const Eigen::Vector3d g = dither(p2d, t);
    gram2d += g * g.transpose();
  }
  CHECK((gram2d / 2.0 - Eigen::DiagonalMatrix<double, 3>(1, 1, 0).toDenseMatrix())
            .cwiseAbs()
            .maxCoeff() <= 1e-12);

  // kappa = 0.7, omega = pi/2: all three axes decorrelate over 40 steps
  // (common period of sin(pi t/2) and sin(0.35 pi t)).
  const auto p3d = params(1.0, std::numbers::pi / 2.0, 0.7, false);
  Eigen::Matrix3d gram3d = Eigen::Matrix3d::Zero();
  const int period = 40;
  for (std::uint64_t t = 1; t <= period; ++t) {
    const Eigen::Vector3d g = dither(p3d, t);
    gram3d += g * g.transpose();
  }
  gram3d /= period;
  const Eigen::Matrix3d off = gram3d - gram3d.diagonal().asDiagonal().toDenseMatrix();
  CHECK(off.cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(gram3d(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gram3d(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(gram3d(2, 2) > 0.1);  // third axis genuinely excited
}

TEST_CASE("agent_position: base plus scaled dither") {
  const Eigen::Vector3d base(25, 25, 0);
  CHECK(agent_position(base, params(0.0, 1.0, 0.0, true), 17) == base);

  const Eigen::Vector3d p =
      agent_position(Eigen::Vector3d::Zero(),
                     params(1.0, std::numbers::pi / 2.0, 0.0, true), 1);
  CHECK(p.x() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(p.y() == doctest::Approx(0.0).scale(1.0).epsilon(1e-15));
  CHECK(p.z() == 0.0);

  // Planar offset bound: |delta * Gamma| <= delta * sqrt(2).
  const auto pl = params(2.0, 1.3, 0.0, true);
  for (std::uint64_t t = 1; t <= 200; ++t) {
    CHECK((agent_position(base, pl, t) - base).norm() <=
          pl.amplitude * std::sqrt(2.0) + 1e-12);
  }
}

TEST_CASE("es_update: update order and closed-form step") {
  EsState s;
  s.grad_hat = {1.0, -2.0, 0.5};
  s.z = 3.0;
  s.alpha = 0.25;
  const Eigen::Vector3d gamma(0.6, 0.8, 0.0);
  const double y = 5.0;

  const EsState next = es_update(s, y, gamma);
  const double eps = y - s.z;  // pre-update z: 2.0
  CHECK(next.z == doctest::Approx(s.z + s.alpha * eps).epsilon(1e-15));
  CHECK((next.grad_hat -
         ((1 - s.alpha) * s.grad_hat + s.alpha * eps * gamma))
            .norm() <= 1e-15);
  CHECK(next.alpha == s.alpha);
}

TEST_CASE("es_update: equilibrium at z = y, decay of grad_hat") {
  EsState s;
  s.grad_hat = {1.0, 0.0, 0.0};
  s.z = 7.0;
  s.alpha = 0.1;
  const double y = 7.0;  // constant measurement equal to z

  for (int i = 0; i < 10; ++i) {
    const EsState next = es_update(s, y, {1, 0, 0});
    CHECK(next.z == s.z);  // eps = 0 exactly
    CHECK(next.grad_hat.x() ==
          doctest::Approx((1 - s.alpha) * s.grad_hat.x()).epsilon(1e-15));
    s = next;
  }
}

TEST_CASE("es_update: DC rejection of constant input") {
  EsState s;
  s.grad_hat = {0.5, 0.5, 0.0};
  s.z = 0.0;
  s.alpha = 0.01;
  const double y = 10.0;
  const double peak = s.grad_hat.norm();

  double eps = y;  // first high-pass output
  for (int i = 0; i < 5000; ++i) {  // T >> 1/alpha
    eps = y - s.z;
    s = es_update(s, y, dither(params(1, std::numbers::pi / 2, 0, true),
                               std::uint64_t(i + 1)));
  }
  CHECK(std::abs(eps) <= 1e-3 * std::abs(y));
  CHECK(s.grad_hat.norm() <= 1e-3 * std::max(peak, 1.0));
}

TEST_CASE("es_update: alpha -> 0 freezes the filter") {
  EsState s;
  s.grad_hat = {1.0, 2.0, 3.0};
  s.z = 4.0;
  s.alpha = 0.0;
  const EsState next = es_update(s, 100.0, {1, 1, 1});
  CHECK(next.grad_hat == s.grad_hat);
  CHECK(next.z == s.z);
}

TEST_CASE("quadratic field: averaged gradient scale (delta/2) grad y") {
  // Static intensity y(p) = |p|^2 probed around base (1,0,0): the averaged
  // system predicts grad_hat -> (delta/2) * grad y = (delta, 0, 0).
  auto run = [](double delta) {
    const auto prm = params(delta, std::numbers::pi / 2.0, 0.0, true);
    EsState s;
    s.alpha = 0.01;
    const Eigen::Vector3d base(1, 0, 0);
    s.z = (agent_position(base, prm, 1)).squaredNorm();  // seed from first y
    for (std::uint64_t t = 1; t <= 100000; ++t) {
      const Eigen::Vector3d pos = agent_position(base, prm, t);
      s = es_update(s, pos.squaredNorm(), dither(prm, t));
    }
    return s;
  };

  const EsState s1 = run(0.1);
  const Eigen::Vector3d expected(0.1, 0.0, 0.0);  // (delta/2) * (2, 0, 0)
  CHECK((s1.grad_hat - expected).norm() <= 0.10 * expected.norm());
  const double angle = std::acos(
      s1.grad_hat.normalized().dot(Eigen::Vector3d(1, 0, 0)));
  CHECK(angle <= 5.0 * std::numbers::pi / 180.0);

  // Halving delta halves the asymptotic magnitude (within slack), never
  // increases it.
  const EsState s2 = run(0.05);
  CHECK(s2.grad_hat.norm() <= s1.grad_hat.norm());
  CHECK(s1.grad_hat.norm() / s2.grad_hat.norm() ==
        doctest::Approx(2.0).epsilon(0.15));
}

TEST_CASE("bearing: regularised normalisation and sign convention") {
  CHECK(bearing(Eigen::Vector3d::Zero(), 1e-6, -1.0) ==
        Eigen::Vector3d::Zero());

  const Eigen::Vector3d big = bearing({1e3, 0, 0}, 1e-6, +1.0);
  CHECK(big.norm() == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(big.norm() < 1.0);  // strictly capped

  const Eigen::Vector3d b = bearing({1, 0, 0}, 1.0, +1.0);
  CHECK(b.x() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  // sign = -1 flips the direction exactly.
  const Eigen::Vector3d g(0.3, -0.4, 0.1);
  CHECK((bearing(g, 1e-6, -1.0) + bearing(g, 1e-6, +1.0)).norm() <= 1e-15);

  // |b| < 1 until the regulariser drowns in rounding (then exactly 1).
  for (double mag : {1e-9, 1e-3, 1.0, 1e3}) {
    CHECK(bearing({mag, mag, mag}, 1e-6, -1.0).norm() < 1.0);
  }
  CHECK(bearing({1e9, 1e9, 1e9}, 1e-6, -1.0).norm() <= 1.0);
}
