// Formation controller: reliability blend, fleet directions, centroid
// update, rigid offsets.
#include <cmath>
#include <vector>

#include "artva/formation.hpp"
#include "artva/rng.hpp"
#include "doctest.h"

using namespace artva;

TEST_CASE("sigma_blend: zero residual, antipodal maximum, midpoint") {
  Eigen::VectorXd b(12),
      f(12);  // n = 4 agents
  b.setRandom();
  f = b;
  CHECK(sigma_blend(b, f) == 0.0);

  // Antipodal unit blocks: |b - f| = 2 sqrt(n) exactly -> sigma = 1.
  const Eigen::Vector3d axes[4] = {
      {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {-1, 0, 0}};
  for (int i = 0; i < 4; ++i) {
    b.segment<3>(3 * i) = axes[i];
    f.segment<3>(3 * i) = -axes[i];
  }
  CHECK(sigma_blend(b, f) == 1.0);

  // n = 4, |b - f| = 2 -> 2 / (2 sqrt(4)) = 0.5.
  f = b;
  f(0) -= 2.0;
  CHECK(sigma_blend(b, f) == doctest::Approx(0.5).epsilon(1e-15));

  CHECK(sigma_from_residual(2.0, 4) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(sigma_from_residual(0.0, 4) == 0.0);
  CHECK(sigma_from_residual(100.0, 4) == 1.0);  // clamped
}

TEST_CASE("fleet_directions: degenerate, 3-4-5, colinear") {
  const std::vector<Eigen::Vector3d> zeros(4, Eigen::Vector3d::Zero());
  const Eigen::Vector3d c(25, 25, 0);
  const FleetDirections rest = fleet_directions(zeros, c, c, 1e-6, -1.0);
  CHECK(rest.es == Eigen::Vector3d::Zero());
  CHECK(rest.ls == Eigen::Vector3d::Zero());

  const FleetDirections d345 = fleet_directions(
      zeros, c + Eigen::Vector3d(30, 40, 0), c, 1e-15, -1.0);
  CHECK(d345.ls.x() == doctest::Approx(0.6).epsilon(1e-9));
  CHECK(d345.ls.y() == doctest::Approx(0.8).epsilon(1e-9));

  const Eigen::Vector3d g(0.2, -0.1, 0.0);
  const std::vector<Eigen::Vector3d> grads(4, g);
  const FleetDirections dg = fleet_directions(grads, c, c, 1e-9, -1.0);
  // b_ES parallel to sign * g, unit-capped.
  CHECK((dg.es.normalized() + g.normalized()).norm() <= 1e-9);
  CHECK(dg.es.norm() < 1.0);

  const FleetDirections dg_pos = fleet_directions(grads, c, c, 1e-9, +1.0);
  CHECK((dg.es + dg_pos.es).norm() <= 1e-15);
}

TEST_CASE("centroid_update: blend arithmetic and bounded speed") {
  FormationState fs;
  fs.centroid = {25, 25, 0};
  fs.gain = 1e-2;
  const Eigen::Vector3d es(1, 0, 0), ls(0, 1, 0);

  const FormationState pure_es = centroid_update(fs, es, ls, 1.0);
  CHECK((pure_es.centroid - (fs.centroid + fs.gain * es)).norm() <= 1e-15);
  CHECK(pure_es.sigma == 1.0);

  const FormationState pure_ls = centroid_update(fs, es, ls, 0.0);
  CHECK((pure_ls.centroid - (fs.centroid + fs.gain * ls)).norm() <= 1e-15);
  CHECK(pure_ls.sigma == 0.0);

  // Equal directions: any sigma gives the same step.
  const Eigen::Vector3d u(0.6, 0.8, 0.0);
  for (double s : {0.0, 0.25, 0.5, 1.0}) {
    const FormationState next = centroid_update(fs, u, u, s);
    CHECK((next.centroid - (fs.centroid + fs.gain * u)).norm() <= 1e-15);
  }

  // Step length never exceeds the gain for unit-capped directions.
  RngStream rng(31);
  for (int i = 0; i < 200; ++i) {
    Eigen::Vector3d a = rng.normal3(1.0);
    Eigen::Vector3d b = rng.normal3(1.0);
    if (a.norm() > 1.0) a.normalize();
    if (b.norm() > 1.0) b.normalize();
    const double sig = rng.uniform();
    const FormationState next = centroid_update(fs, a, b, sig);
    CHECK((next.centroid - fs.centroid).norm() <= fs.gain + 1e-15);
  }
}

TEST_CASE("agent_bases: translation of rigid offsets") {
  FormationState fs;
  fs.offsets = square_offsets(10.0);
  fs.centroid = Eigen::Vector3d::Zero();
  const auto at_origin = agent_bases(fs);
  for (size_t i = 0; i < at_origin.size(); ++i) {
    CHECK(at_origin[i] == fs.offsets[i]);
  }

  fs.centroid = {25, 25, 0};
  const auto bases = agent_bases(fs);
  REQUIRE(bases.size() == 4);
  // Corners of the 10 m square centered at (25, 25).
  std::vector<Eigen::Vector3d> expected = {
      {20, 20, 0}, {20, 30, 0}, {30, 20, 0}, {30, 30, 0}};
  for (const auto& e : expected) {
    bool found = false;
    for (const auto& b : bases) found = found || (b - e).norm() <= 1e-12;
    CHECK(found);
  }

  // Pairwise distances are preserved under any centroid motion.
  FormationState moved = fs;
  moved.centroid += Eigen::Vector3d(-3.7, 12.9, 0.0);
  const auto moved_bases = agent_bases(moved);
  for (size_t i = 0; i < bases.size(); ++i) {
    for (size_t j = i + 1; j < bases.size(); ++j) {
      CHECK(std::abs((bases[i] - bases[j]).norm() -
                     (moved_bases[i] - moved_bases[j]).norm()) <= 1e-12);
    }
  }
}

TEST_CASE("square_offsets: zero mean, right edge length") {
  const auto off = square_offsets(10.0);
  REQUIRE(off.size() == 4);
  Eigen::Vector3d mean = Eigen::Vector3d::Zero();
  for (const auto& o : off) {
    mean += o;
    CHECK(o.z() == 0.0);
    CHECK(std::abs(o.x()) == doctest::Approx(5.0));
    CHECK(std::abs(o.y()) == doctest::Approx(5.0));
  }
  CHECK(mean.norm() <= 1e-12);
}
