#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <random>

#include "kakeya/config.hpp"
#include "kakeya/direction.hpp"
#include "test_helpers.hpp"

using namespace kakeya;

TEST_CASE("unoriented directions canonicalize idempotently") {
  auto d = UnorientedDirection::from_angle(4.0);  // wraps into [0, pi)
  REQUIRE(d.angle() >= 0.0);
  REQUIRE(d.angle() < kPi);
  auto d2 = UnorientedDirection::from_angle(d.angle());
  REQUIRE(d2.angle() == Catch::Approx(d.angle()).margin(1e-15));

  Eigen::VectorXd v(3);
  v << -0.3, 0.2, 0.9;
  auto u = UnorientedDirection::from_vector(v);
  REQUIRE(u.vector()[0] > 0);  // first nonzero coordinate positive
  REQUIRE(std::abs(u.vector().norm() - 1.0) < 1e-12);
  auto u2 = UnorientedDirection::from_vector(u.vector());
  REQUIRE((u.vector() - u2.vector()).norm() < 1e-15);

  Eigen::VectorXd w(4);
  w << 0.0, -2.0, 1.0, 0.5;
  auto c = UnorientedDirection::from_vector(w);
  REQUIRE(c.vector()[0] == 0.0);
  REQUIRE(c.vector()[1] > 0);
}

TEST_CASE("constant spec evaluates to its point") {
  Eigen::VectorXd c(2);
  c << 1, 0;
  auto s = ConfigSpec::constant(c);
  for (double th : {0.0, 0.7, 2.9})
    REQUIRE((eval_config(s, UnorientedDirection::from_angle(th)) - c).norm() == 0.0);
}

TEST_CASE("trig polynomial evaluates exactly") {
  // sigma(theta) = (cos 2theta, sin 2theta)
  std::vector<TrigCoeffs> coords(2);
  coords[0].cos_k = {0, 0, 1};
  coords[0].sin_k = {0, 0, 0};
  coords[1].cos_k = {0, 0, 0};
  coords[1].sin_k = {0, 0, 1};
  auto s = ConfigSpec::trig(coords, true);
  Eigen::VectorXd v = eval_config(s, UnorientedDirection::from_angle(kPi / 4));
  REQUIRE(v[0] == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(v[1] == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("tangent circle base point and direction") {
  auto s = tangent_circle_config(1.0, true);
  Eigen::VectorXd v = eval_config(s, OrientedDirection::from_angle(0.0));
  REQUIRE(v[0] == Catch::Approx(0.0).margin(1e-15));
  REQUIRE(v[1] == Catch::Approx(1.0).margin(1e-15));
  REQUIRE_THROWS_AS(tangent_circle_config(0.0), input_error);
  REQUIRE_THROWS_AS(tangent_circle_config(-1.0), input_error);
}

TEST_CASE("validate_spec flags odd harmonics under the unoriented flag") {
  std::vector<TrigCoeffs> coords(2);
  coords[0].cos_k = {0, 1};  // cos(theta): odd harmonic
  coords[0].sin_k = {0, 0};
  coords[1].cos_k = {0};
  coords[1].sin_k = {0};
  auto bad = ConfigSpec::trig(coords, true);
  auto rep = validate_spec(bad);
  REQUIRE_FALSE(rep.pass);
  REQUIRE(rep.issues.size() >= 1);
  // defect is the measured sup of the antipodal mismatch: |2 cos(theta)| -> 2
  bool found = false;
  for (const auto& v : rep.issues)
    if (v.defect > 1.9 && v.defect < 2.1) found = true;
  REQUIRE(found);

  // eval through the unoriented interface must refuse
  REQUIRE_THROWS_AS(eval_config(bad, UnorientedDirection::from_angle(0.3)), input_error);
}

TEST_CASE("validate_spec flags open sampled loops") {
  GridPayload p;
  p.theta = {0.0, kPi / 2, kPi};
  Eigen::VectorXd a(2), b(2), c(2);
  a << 0, 0;
  b << 1, 0;
  c << 2, 0;  // does not close
  p.values = {a, b, c};
  ConfigSpec s;
  s.dim = 2;
  s.unoriented = true;
  s.payload = p;
  auto rep = validate_spec(s);
  REQUIRE_FALSE(rep.pass);

  p.values = {a, b, a};
  s.payload = p;
  REQUIRE(validate_spec(s).pass);
}

TEST_CASE("translation is equivariant and invertible") {
  auto g = testutil::rng(7);
  auto s = testutil::random_trig2(g, 8, -2, 2, true);
  Eigen::VectorXd x(2);
  x << 1.25, -0.5;
  auto t = translate_config(s, x);
  auto tt = translate_config(t, Eigen::VectorXd(-x));
  for (int k = 0; k < 100; ++k) {
    double th = testutil::runif(g, 0, kPi);
    auto d = UnorientedDirection::from_angle(th);
    Eigen::VectorXd a = eval_config(s, d);
    Eigen::VectorXd b = eval_config(t, d);
    REQUIRE((b + x - a).norm() <= 1e-12 * (1.0 + a.norm()));
    REQUIRE((eval_config(tt, d) - a).norm() <= 1e-12 * (1.0 + a.norm()));
  }

  // translate by zero is the identity
  Eigen::VectorXd z = Eigen::VectorXd::Zero(2);
  auto tz = translate_config(s, z);
  for (double th : {0.1, 1.0, 2.5})
    REQUIRE((eval_config(tz, UnorientedDirection::from_angle(th)) -
             eval_config(s, UnorientedDirection::from_angle(th)))
                .norm() == 0.0);
}

TEST_CASE("antipodal evenness holds for random unoriented specs") {
  auto g = testutil::rng(11);
  for (int rep = 0; rep < 10; ++rep) {
    auto s = testutil::random_trig2(g, 12, -2, 2, true);
    for (int k = 0; k < 100; ++k) {
      double th = testutil::runif(g, 0, kTwoPi);
      REQUIRE((eval_angle(s, th + kPi) - eval_angle(s, th)).norm() <= 1e-9);
    }
  }
  // and for even polynomial fields on S^2
  for (int rep = 0; rep < 5; ++rep) {
    auto s = testutil::random_poly_field(g, 3, true);
    for (int k = 0; k < 100; ++k) {
      Eigen::VectorXd u(3);
      u << testutil::runif(g, -1, 1), testutil::runif(g, -1, 1), testutil::runif(g, -1, 1);
      if (u.norm() < 1e-6) continue;
      u.normalize();
      REQUIRE((eval_unit(s, u) - eval_unit(s, Eigen::VectorXd(-u))).norm() <= 1e-9);
    }
  }
}

TEST_CASE("trig polynomial resampled onto a 4096-point grid interpolates to 1e-6") {
  auto g = testutil::rng(23);
  auto s = testutil::random_trig2(g, 3, -0.5, 0.5, true);
  GridPayload grid;
  const int n = 4096;
  for (int k = 0; k <= n; ++k) {
    double th = kPi * k / n;
    grid.theta.push_back(th);
    Eigen::Vector2d v = eval_angle(s, k == n ? 0.0 : th);  // close exactly
    grid.values.push_back(Eigen::VectorXd(v));
  }
  ConfigSpec gs;
  gs.dim = 2;
  gs.unoriented = true;
  gs.payload = grid;
  REQUIRE(validate_spec(gs).pass);
  for (int k = 0; k < 500; ++k) {
    double th = testutil::runif(g, 0, kPi);
    REQUIRE((eval_angle(gs, th) - eval_angle(s, th)).norm() <= 1e-6);
  }
}

TEST_CASE("spec JSON round-trips") {
  auto g = testutil::rng(5);
  auto s = testutil::random_trig2(g, 6, -2, 2, true);
  auto j = spec_to_json(s);
  auto s2 = spec_from_json(j);
  for (double th : {0.0, 0.3, 1.1, 2.9})
    REQUIRE((eval_angle(s, th) - eval_angle(s2, th)).norm() == 0.0);

  auto tc = tangent_circle_config(2.5, false);
  auto tc2 = spec_from_json(spec_to_json(tc));
  for (double th : {0.0, 1.0, 4.0})
    REQUIRE((eval_angle(tc, th) - eval_angle(tc2, th)).norm() == 0.0);

  auto poly = testutil::random_poly_field(g, 4, true);
  auto poly2 = spec_from_json(spec_to_json(poly));
  Eigen::VectorXd u(4);
  u << 0.5, -0.5, 0.5, 0.5;
  REQUIRE((eval_unit(poly, u) - eval_unit(poly2, u)).norm() == 0.0);

  Eigen::VectorXd x(2);
  x << 3, -4;
  auto tr = translate_config(s, x);
  auto tr2 = spec_from_json(spec_to_json(tr));
  REQUIRE((eval_angle(tr, 0.4) - eval_angle(tr2, 0.4)).norm() == 0.0);

  REQUIRE_THROWS_AS(spec_from_json(json{{"kind", "nope"}}), input_error);
}

TEST_CASE("dimension mismatches are rejected") {
  Eigen::VectorXd c(3);
  c << 0, 0, 1;
  auto s = ConfigSpec::constant(c);
  REQUIRE_THROWS_AS(eval_config(s, UnorientedDirection::from_angle(0.1)), input_error);
  Eigen::VectorXd off(2);
  off << 1, 2;
  REQUIRE_THROWS_AS(translate_config(s, off), input_error);
}
