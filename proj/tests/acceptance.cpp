// Acceptance suite: every criterion below runs at its stated tolerance and
// prints a single PASS/FAIL line. The process exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "kakeya/discrete.hpp"
#include "kakeya/euclid.hpp"
#include "kakeya/homog.hpp"
#include "kakeya/lie_certify.hpp"
#include "kakeya/liegroups.hpp"
#include "kakeya/topo_zero.hpp"
#include "test_helpers.hpp"

using namespace kakeya;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %-46s %s\n", pass ? "PASS" : "FAIL", index, name.c_str(), detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void criterion(int index, const std::string& name, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    auto [pass, detail] = body();
    report(index, name, pass, detail);
  } catch (const std::exception& e) {
    report(index, name, false, std::string("exception: ") + e.what());
  }
}

Eigen::Matrix3d heisenberg_matrix_exp(const Eigen::Vector3d& v) {
  // nilpotent of order 2: I + X + X^2/2 is exact
  Eigen::Matrix3d X = Eigen::Matrix3d::Zero();
  X(0, 1) = v[0];
  X(1, 2) = v[1];
  X(0, 2) = v[2];
  return Eigen::Matrix3d::Identity() + X + 0.5 * (X * X);
}

}  // namespace

int main() {
  // 1. Planar coverage certification at scale -------------------------------
  criterion(1, "planar coverage: 100 configs x 20 targets", [] {
    auto g = testutil::rng(10001);
    auto t0 = std::chrono::steady_clock::now();
    int runs = 0;
    double worst = 0;
    for (int c = 0; c < 100; ++c) {
      auto spec = testutil::random_trig2(g, 16, -2, 2, true);
      for (int t = 0; t < 20; ++t) {
        Eigen::VectorXd x(2);
        x << testutil::runif(g, -10, 10), testutil::runif(g, -10, 10);
        auto cert = certify_cover_unoriented(spec, x, 1e-9);
        ++runs;
        if (!cert.covered) return std::make_pair(false, "uncovered target at run " + std::to_string(runs));
        worst = std::max(worst, cert.residual);
      }
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    bool pass = worst <= 1e-9 && secs < 10.0;
    char buf[128];
    std::snprintf(buf, sizeof buf, "2000/2000 covered, worst residual %.2e, %.2f s", worst, secs);
    return std::make_pair(pass, std::string(buf));
  });

  // 2. Oriented coverage on S^2 with index-sum checks ------------------------
  criterion(2, "oriented coverage on S^2: 50 configs x 10 targets", [] {
    auto g = testutil::rng(10007);
    double worst = 0;
    int meshes = 0;
    for (int c = 0; c < 50; ++c) {
      auto spec = testutil::random_poly_field(g, 3, false);
      for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd x(3);
        x << testutil::runif(g, -5, 5), testutil::runif(g, -5, 5), testutil::runif(g, -5, 5);
        auto cert = certify_cover_oriented(spec, x, 1e-6);
        if (!cert.covered) return std::make_pair(false, std::string("uncovered oriented target"));
        worst = std::max(worst, cert.residual);
        if (cert.index_sum) {
          ++meshes;
          if (*cert.index_sum != 2)
            return std::make_pair(false, "index sum " + std::to_string(*cert.index_sum) + " != 2");
        }
      }
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "500/500 covered, worst residual %.2e, %d meshes sum to 2",
                  worst, meshes);
    return std::make_pair(worst <= 1e-6, std::string(buf));
  });

  // 3. Even-dimensional counterexample ---------------------------------------
  criterion(3, "tangent circle: inside excluded, outside covered", [] {
    auto spec = tangent_circle_config(1.0);
    auto scan = make_direction_scan(spec);
    auto g = testutil::rng(10009);
    double worst = 0;
    for (int k = 0; k < 1000; ++k) {
      double ang = testutil::runif(g, 0, kTwoPi);
      double rin = testutil::runif(g, 0, 0.99);
      auto in = membership_test_2d(spec, Eigen::Vector2d(rin * std::cos(ang), rin * std::sin(ang)),
                                   std::numeric_limits<double>::infinity(), 1e-9, &scan);
      if (in.covered) return std::make_pair(false, std::string("interior point covered"));
      double rout = testutil::runif(g, 1.01, 10.0);
      auto out = membership_test_2d(spec, Eigen::Vector2d(rout * std::cos(ang), rout * std::sin(ang)),
                                    std::numeric_limits<double>::infinity(), 1e-9, &scan);
      if (!out.covered) return std::make_pair(false, std::string("exterior point uncovered"));
      worst = std::max(worst, out.witnesses.front().residual);
    }
    double inf_dist = line_origin_distance_infimum(spec);
    bool pass = worst <= 1e-9 && std::abs(inf_dist - 1.0) <= 1e-9;
    char buf[128];
    std::snprintf(buf, sizeof buf, "1000+1000 targets, worst residual %.2e, inf distance %.12f",
                  worst, inf_dist);
    return std::make_pair(pass, std::string(buf));
  });

  // 4. Needle measure ----------------------------------------------------------
  criterion(4, "needle area: pi/4 disk and monotonicity in R", [] {
    auto spec = ConfigSpec::constant(Eigen::VectorXd::Zero(2));
    auto rep = needle_area_2d(spec, 1.0, 100000, 424242);
    double target = kPi / 4;
    bool in_ci = std::abs(rep.area - target) <= rep.ci95;
    bool in_2pct = std::abs(rep.area - target) <= 0.02 * target;
    Box2 box{Eigen::Vector2d(-2.5, -2.5), Eigen::Vector2d(2.5, 2.5)};
    double prev = -1, prev_ci = 0;
    bool monotone = true;
    for (double R : {0.5, 1.0, 2.0, 4.0}) {
      auto r = needle_area_2d(spec, R, 100000, 424242, 1e-9, box);
      if (prev >= 0 && r.area + r.ci95 + prev_ci < prev) monotone = false;
      prev = r.area;
      prev_ci = r.ci95;
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "area %.5f vs pi/4 %.5f (ci %.4f), monotone %s", rep.area,
                  target, rep.ci95, monotone ? "yes" : "no");
    return std::make_pair(in_ci && in_2pct && monotone, std::string(buf));
  });

  // 5. Lie exponentials and group coverage -------------------------------------
  criterion(5, "Heisenberg/affine exp-log and group coverage", [] {
    auto g = testutil::rng(10037);
    double worst_rt = 0, worst_mx = 0;
    for (int k = 0; k < 1000; ++k) {
      Eigen::Vector3d h(testutil::runif(g, -5, 5), testutil::runif(g, -5, 5),
                        testutil::runif(g, -5, 5));
      worst_rt = std::max(worst_rt, (log_map(exp_map({Group::Heisenberg, h})).coords - h).norm());
      Eigen::Vector2d a(testutil::runif(g, -5, 5), testutil::runif(g, -5, 5));
      worst_rt = std::max(worst_rt, (log_map(exp_map({Group::Affine, a})).coords - a).norm());
      GroupElement e = exp_map({Group::Heisenberg, h});
      Eigen::Matrix3d M = heisenberg_matrix_exp(h);
      double scale = 1.0 + M.cwiseAbs().maxCoeff();
      worst_mx = std::max(worst_mx, std::abs(M(0, 1) - e.coords[0]) / scale);
      worst_mx = std::max(worst_mx, std::abs(M(1, 2) - e.coords[1]) / scale);
      worst_mx = std::max(worst_mx, std::abs(M(0, 2) - e.coords[2]) / scale);
    }
    if (worst_rt > 1e-10) return std::make_pair(false, "roundtrip " + std::to_string(worst_rt));
    if (worst_mx > 1e-12) return std::make_pair(false, std::string("matrix-exp mismatch"));

    double worst_res = 0;
    for (int c = 0; c < 50; ++c) {
      GroupConfig conf;
      conf.group = Group::Heisenberg;
      conf.algebra = testutil::random_poly_field(g, 3, true);
      for (int t = 0; t < 10; ++t) {
        GroupElement target = GroupElement::heisenberg(
            testutil::runif(g, -2, 2), testutil::runif(g, -2, 2), testutil::runif(g, -2, 2));
        auto cert = certify_cover_group(conf, target, 1e-8);
        if (!cert.covered) return std::make_pair(false, std::string("group target uncovered"));
        worst_res = std::max(worst_res, cert.residual);
      }
    }
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "roundtrip %.1e, matrix-exp %.1e, 500/500 covered, worst residual %.2e",
                  worst_rt, worst_mx, worst_res);
    return std::make_pair(worst_res <= 1e-8, std::string(buf));
  });

  // 6. Cylinder identity coverage ------------------------------------------------
  criterion(6, "cylinder identity: closed forms and 100 random configs", [] {
    GroupConfig one;
    one.group = Group::Cylinder;
    one.algebra = ConfigSpec::constant(Eigen::VectorXd::Zero(2), true);
    auto r1 = certify_identity_cylinder(one);
    if (!(r1.found && r1.lift.kernel_index == 0 && std::abs(r1.line_angle) <= 1e-12 &&
          r1.plane_residual <= 1e-12))
      return std::make_pair(false, std::string("sigma=1 certificate mismatch"));

    GroupConfig rot;
    rot.group = Group::Cylinder;
    Eigen::VectorXd half(2);
    half << 0, 0.5;
    rot.algebra = ConfigSpec::constant(half, true);
    auto r2 = certify_identity_cylinder(rot);
    if (!(r2.found && r2.lift.kernel_index == 0 && std::abs(r2.line_angle - kPi / 2) <= 1e-9 &&
          std::abs(r2.line_time + 0.5) <= 1e-9))
      return std::make_pair(false, std::string("sigma=exp(0.5i) certificate mismatch"));

    auto g = testutil::rng(10061);
    double worst = 0, sup_p = 0;
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<TrigCoeffs> coords(2);
      auto base = testutil::random_trig2(g, 8, -1, 1, true);
      coords[0] = std::get<TrigPayload>(base.payload).coords[0];
      coords[1] = std::get<TrigPayload>(base.payload).coords[1];
      double rs = 0, is = 0;
      for (double v : coords[0].cos_k) rs += std::abs(v);
      for (double v : coords[0].sin_k) rs += std::abs(v);
      for (double v : coords[1].cos_k) is += std::abs(v);
      for (double v : coords[1].sin_k) is += std::abs(v);
      for (auto& v : coords[0].cos_k) v *= 9.0 / std::max(rs, 9.0);
      for (auto& v : coords[0].sin_k) v *= 9.0 / std::max(rs, 9.0);
      for (auto& v : coords[1].cos_k) v *= 3.0 / std::max(is, 3.0);
      for (auto& v : coords[1].sin_k) v *= 3.0 / std::max(is, 3.0);
      GroupConfig conf;
      conf.group = Group::Cylinder;
      conf.algebra = ConfigSpec::trig(coords, true);
      auto res = certify_identity_cylinder(conf, 2048, 1e-9);
      if (!res.found) return std::make_pair(false, std::string("random cylinder config not certified"));
      worst = std::max(worst, res.certificate.residual);
      sup_p = std::max(sup_p, res.lift.sup_p);
    }
    char buf[160];
    std::snprintf(buf, sizeof buf, "closed forms exact, 100/100 found, worst residual %.2e, sup|p| %.2f",
                  worst, sup_p);
    return std::make_pair(worst <= 1e-8 && sup_p <= 10.0, std::string(buf));
  });

  // 7. Discrete Kakeya exactness ----------------------------------------------
  criterion(7, "discrete minima: known values and oracle agreement", [] {
    using namespace kakeya::discrete;
    struct Known {
      const char* spec;
      int expect;
    };
    for (Known k : {Known{"Z2xZ2", 3}, Known{"Z3xZ3", 7}, Known{"Z2", 2}, Known{"Z3", 3},
                    Known{"Z5", 5}, Known{"Z7", 7}, Known{"Z11", 11}}) {
      auto rep = min_kakeya_exact(build_group(k.spec));
      if (!rep.optimal || rep.min_size != k.expect)
        return std::make_pair(false, std::string(k.spec) + " minimum mismatch");
    }
    double slowest = 0;
    for (const char* spec : {"Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ2xZ2",
                             "Z4xZ2", "D4", "Q8", "Z9", "Z3xZ3", "D5", "Z10", "Z11", "Z12", "Z13",
                             "Z14", "Z15", "UT3_2", "Z6xZ2"}) {
      auto g = build_group(spec);
      auto t0 = std::chrono::steady_clock::now();
      auto exact = min_kakeya_exact(g, 60000);
      auto oracle = min_kakeya_oracle(g);
      double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      slowest = std::max(slowest, secs);
      if (secs >= 60.0) return std::make_pair(false, std::string(spec) + " exceeded 60 s");
      if (!exact.optimal || exact.min_size != oracle.min_size)
        return std::make_pair(false, std::string(spec) + " disagrees with the oracle");
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "24 groups agree with the oracle, slowest %.2f s", slowest);
    return std::make_pair(true, std::string(buf));
  });

  // 8. Degree and explicit lifting ----------------------------------------------
  criterion(8, "sphere-map degree and cap lifting", [] {
    auto identity = [](const Eigen::Vector3d& x) { return x; };
    auto anti = [](const Eigen::Vector3d& x) { return Eigen::Vector3d(-x); };
    auto constant = [](const Eigen::Vector3d&) { return Eigen::Vector3d(0, 0, 1); };
    for (int depth = 4; depth <= 6; depth += 2) {
      auto d1 = map_degree_s2(identity, depth);
      auto d2 = map_degree_s2(anti, depth);
      auto d3 = map_degree_s2(constant, depth);
      if (!(d1.degree == 1 && d1.status == "certified")) return std::make_pair(false, std::string("identity degree"));
      if (!(d2.degree == -1 && d2.status == "certified")) return std::make_pair(false, std::string("antipodal degree"));
      if (!(d3.degree == 0 && d3.status == "certified")) return std::make_pair(false, std::string("constant degree"));
    }
    auto g = testutil::rng(10067);
    double worst = 0;
    for (int rep = 0; rep < 5; ++rep) {
      std::vector<std::vector<PolyTerm>> coords(3);
      double s = testutil::runif(g, 0.1, 0.4);
      coords[0].push_back({s, {1, 0, 0}});
      coords[1].push_back({s, {0, 1, 0}});
      coords[2].push_back({1.0, {0, 0, 0}});
      SphereMap cap(ConfigSpec::polynomial(3, coords, false));
      auto lift = lift_omitting_point(cap, Eigen::Vector3d(0, 0, -1));
      IcoMesh mesh = IcoMesh::subdivided(4);
      for (const auto& x : mesh.verts)
        worst = std::max(worst, (lift.project(x) - cap(x)).norm());
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "degrees certified at depths 4 and 6, lift residual %.2e", worst);
    return std::make_pair(worst <= 1e-9, std::string(buf));
  });

  // 9. Translation-trick invariance ----------------------------------------------
  criterion(9, "translation invariance of certificates", [] {
    auto g = testutil::rng(10079);
    double worst_plane = 0;
    for (int rep = 0; rep < 100; ++rep) {
      auto spec = testutil::random_trig2(g, 10, -2, 2, true);
      Eigen::VectorXd x(2), h(2);
      x << testutil::runif(g, -5, 5), testutil::runif(g, -5, 5);
      h << testutil::runif(g, -5, 5), testutil::runif(g, -5, 5);
      auto direct = certify_cover_unoriented(spec, x, 1e-10);
      auto moved = certify_cover_unoriented(translate_config(spec, Eigen::VectorXd(-h)),
                                            Eigen::VectorXd(x + h), 1e-10);
      if (!direct.covered || !moved.covered) return std::make_pair(false, std::string("planar triple uncovered"));
      worst_plane = std::max(worst_plane, std::abs(direct.theta - moved.theta));
    }
    double worst_group = 0;
    for (int rep = 0; rep < 100; ++rep) {
      GroupConfig conf;
      conf.group = Group::Heisenberg;
      conf.algebra = testutil::random_poly_field(g, 3, true);
      GroupElement target = GroupElement::heisenberg(
          testutil::runif(g, -1, 1), testutil::runif(g, -1, 1), testutil::runif(g, -1, 1));
      GroupElement h = GroupElement::heisenberg(testutil::runif(g, -1, 1),
                                                testutil::runif(g, -1, 1), testutil::runif(g, -1, 1));
      auto direct = certify_cover_group(conf, target, 1e-8);
      GroupConfig moved = conf;
      moved.left = h;
      auto translated = certify_cover_group(moved, multiply(h, target), 1e-8);
      if (!direct.covered || !translated.covered)
        return std::make_pair(false, std::string("group triple uncovered"));
      worst_group = std::max(worst_group, (direct.direction - translated.direction).norm());
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "worst planar gap %.2e, worst group gap %.2e", worst_plane,
                  worst_group);
    return std::make_pair(worst_plane <= 1e-9 && worst_group <= 1e-9, std::string(buf));
  });

  if (g_failures == 0)
    std::printf("all acceptance criteria passed\n");
  else
    std::printf("%d acceptance criteria FAILED\n", g_failures);
  return g_failures == 0 ? 0 : 1;
}
