#pragma once

// Coverage certification in R^n and needle-set measure estimation.
//
// The certification mechanism is translation: x lies in |sigma| iff the
// translated configuration sigma - x has a line through the origin, i.e.
// the perpendicular section of sigma - x has a zero. In the plane and in
// R^3 the zero finders are guaranteed; higher dimensions fall back to the
// honest heuristic.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"
#include "kakeya/numerics.hpp"
#include "kakeya/topo_zero.hpp"

namespace kakeya {

struct CoverCertificate {
  bool covered = false;
  Eigen::VectorXd target;
  Eigen::VectorXd direction;   // unit vector of L*
  double theta = 0;            // planar parameter when dim == 2
  double t = 0;                // signed line parameter
  double residual = 0;         // |x - sigma(L*) - t*e(L*)|
  std::string method;
  std::string note;
  std::optional<int> index_sum;
};

struct ElongationReport {
  // Either a minimal elongation for a target point...
  bool has_r_min = false;
  double r_min = 0;
  // ...or a Monte Carlo area estimate.
  bool has_area = false;
  double area = 0;
  double ci95 = 0;
  long samples = 0;
  std::uint64_t seed = 0;
  Eigen::Vector2d box_lo{0, 0}, box_hi{0, 0};
};

// --- cover certificates ---------------------------------------------------

inline CoverCertificate certify_cover_unoriented(const ConfigSpec& spec, const Eigen::VectorXd& x,
                                                 double tol = 1e-9, std::uint64_t seed = 0) {
  if (static_cast<int>(x.size()) != spec.dim) throw input_error("target/spec dimension mismatch");
  if (!spec.unoriented) throw input_error("certify_cover_unoriented needs an unoriented spec");
  ConfigSpec shifted = translate_config(spec, x);
  ZeroCertificate z;
  if (spec.dim == 2) {
    z = find_zero_unoriented_2d(shifted, tol);
  } else if (spec.dim == 3) {
    z = find_zero_unoriented_3d(shifted, tol);
  } else {
    z = find_zero_highdim(shifted, tol, 64, seed);
  }
  CoverCertificate c;
  c.target = x;
  c.method = z.method;
  c.note = z.note;
  c.index_sum = z.index_sum;
  c.direction = z.direction;
  c.theta = z.dim == 2 ? z.theta : 0.0;
  c.covered = z.found;
  if (z.found) {
    Eigen::VectorXd e = z.direction;
    Eigen::VectorXd sigma;
    if (spec.dim == 2)
      sigma = Eigen::VectorXd(eval_angle(spec, z.theta));
    else
      sigma = eval_unit(spec, e);
    c.t = (x - sigma).dot(e);
    c.residual = (x - sigma - c.t * e).norm();
  }
  return c;
}

inline CoverCertificate certify_cover_oriented(const ConfigSpec& spec, const Eigen::VectorXd& x,
                                               double tol = 1e-6, std::uint64_t seed = 0) {
  if (static_cast<int>(x.size()) != spec.dim) throw input_error("target/spec dimension mismatch");
  if (spec.unoriented) throw input_error("certify_cover_oriented needs an oriented spec");
  if (spec.dim % 2 == 0)
    throw input_error("oriented coverage is only guaranteed in odd dimension; use membership_test_2d in the plane");
  ConfigSpec shifted = translate_config(spec, x);
  ZeroCertificate z;
  if (spec.dim == 3) {
    z = find_zero_oriented_s2(shifted, tol);
  } else {
    z = find_zero_highdim(shifted, tol, 64, seed);
  }
  CoverCertificate c;
  c.target = x;
  c.method = z.method;
  c.note = z.note;
  c.index_sum = z.index_sum;
  c.direction = z.direction;
  c.covered = z.found;
  if (z.found) {
    Eigen::VectorXd e = z.direction;
    Eigen::VectorXd sigma = eval_unit(spec, e);
    c.t = (x - sigma).dot(e);
    c.residual = (x - sigma - c.t * e).norm();
  }
  return c;
}

// --- membership scanning --------------------------------------------------

// Cached uniform evaluation of a planar spec over its direction space; the
// membership scan reuses it across many targets.
struct DirectionScan {
  bool oriented = false;
  int cells = 4096;
  double period = kPi;
  std::vector<double> theta;            // cells+1 samples, inclusive
  std::vector<Eigen::Vector2d> sigma;
};

inline DirectionScan make_direction_scan(const ConfigSpec& spec, int cells = 4096) {
  if (spec.dim != 2) throw input_error("direction scans are planar");
  DirectionScan s;
  s.oriented = !spec.unoriented;
  s.cells = cells;
  s.period = spec.period();
  s.theta.resize(static_cast<size_t>(cells) + 1);
  s.sigma.resize(static_cast<size_t>(cells) + 1);
  for (int k = 0; k <= cells; ++k) {
    double th = s.period * k / cells;
    s.theta[static_cast<size_t>(k)] = th;
    s.sigma[static_cast<size_t>(k)] = eval_angle(spec, th);
  }
  return s;
}

struct MembershipWitness {
  double theta = 0;
  double t = 0;         // signed parameter along the line
  double residual = 0;  // |s(theta)| at the zero
};

struct MembershipResult {
  bool covered = false;
  int grid_cells = 0;
  double r = std::numeric_limits<double>::infinity();
  std::vector<MembershipWitness> witnesses;  // zeros satisfying |t| <= R/2
  double min_abs_t = std::numeric_limits<double>::infinity();  // over all zeros found
};

namespace detail {

// All zeros of s(theta) = (x - sigma(theta)).n(theta) over one period:
// sign-change bisection plus a tangential-minimum polish so boundary lines
// that merely touch a target are still witnessed.
template <class SigmaF>
inline void scan_zeros(const SigmaF& sigma_at, const DirectionScan& scan, const Eigen::Vector2d& x,
                       double tol, std::vector<MembershipWitness>& out) {
  auto s_at = [&](double th) {
    Eigen::Vector2d s = sigma_at(th);
    return (x - s).dot(Eigen::Vector2d(-std::sin(th), std::cos(th)));
  };
  auto push = [&](double th, double sval) {
    Eigen::Vector2d e(std::cos(th), std::sin(th));
    MembershipWitness w;
    w.theta = th;
    w.t = (x - sigma_at(th)).dot(e);
    w.residual = std::abs(sval);
    out.push_back(w);
  };

  const int n = scan.cells;
  std::vector<double> sv(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) {
    const Eigen::Vector2d& sg = scan.sigma[static_cast<size_t>(k)];
    double th = scan.theta[static_cast<size_t>(k)];
    sv[static_cast<size_t>(k)] = (x - sg).dot(Eigen::Vector2d(-std::sin(th), std::cos(th)));
  }
  bool all_small = true;
  for (int k = 0; k < n; ++k) {
    double sa = sv[static_cast<size_t>(k)], sb = sv[static_cast<size_t>(k) + 1];
    if (std::abs(sa) > tol) all_small = false;
    if (sa == 0) {
      push(scan.theta[static_cast<size_t>(k)], 0.0);
      continue;
    }
    if ((sa < 0) != (sb < 0)) {
      auto r = bisect_to_tol(s_at, scan.theta[static_cast<size_t>(k)],
                             scan.theta[static_cast<size_t>(k) + 1], sa, sb, tol);
      push(r.x, r.fx);
    }
  }
  if (all_small && std::abs(sv[static_cast<size_t>(n)]) <= tol) {
    // s vanishes along the whole scan: every direction is a witness
    for (int k = 0; k < n; k += std::max(1, n / 64)) push(scan.theta[static_cast<size_t>(k)], sv[static_cast<size_t>(k)]);
    return;
  }
  // tangential zeros: local minima of |s| that dip near zero without a sign
  // change; screen by the local second difference
  for (int k = 1; k < n; ++k) {
    double a = std::abs(sv[static_cast<size_t>(k) - 1]);
    double b = std::abs(sv[static_cast<size_t>(k)]);
    double c = std::abs(sv[static_cast<size_t>(k) + 1]);
    if (b > a || b > c) continue;
    if ((sv[static_cast<size_t>(k) - 1] < 0) != (sv[static_cast<size_t>(k)] < 0)) continue;  // handled above
    double second = std::abs(sv[static_cast<size_t>(k) + 1] - 2 * sv[static_cast<size_t>(k)] +
                             sv[static_cast<size_t>(k) - 1]);
    if (b > std::max(100 * tol, 4 * second)) continue;
    auto gm = golden_min([&](double th) { return std::abs(s_at(th)); },
                         scan.theta[static_cast<size_t>(k) - 1], scan.theta[static_cast<size_t>(k) + 1],
                         1e-14);
    if (std::abs(gm.fx) <= tol) push(gm.x, gm.fx);
  }
}

}  // namespace detail

inline MembershipResult membership_test_2d(const ConfigSpec& spec, const Eigen::Vector2d& x,
                                           double R, double tol = 1e-9,
                                           const DirectionScan* cached = nullptr) {
  if (spec.dim != 2) throw input_error("membership_test_2d requires a planar spec");
  DirectionScan local;
  const DirectionScan* scan = cached;
  if (!scan) {
    local = make_direction_scan(spec);
    scan = &local;
  }
  MembershipResult res;
  res.grid_cells = scan->cells;
  res.r = R;
  std::vector<MembershipWitness> zeros;
  auto sigma_at = [&](double th) { return eval_angle(spec, th); };
  detail::scan_zeros(sigma_at, *scan, x, tol, zeros);
  for (const auto& z : zeros) {
    res.min_abs_t = std::min(res.min_abs_t, std::abs(z.t));
    if (std::isinf(R) || std::abs(z.t) <= R / 2) res.witnesses.push_back(z);
  }
  res.covered = !res.witnesses.empty();
  return res;
}

// Minimal elongation R for which the needle set reaches x: twice the
// smallest |t| over the witnesses of the full-line membership test.
inline ElongationReport elongation_required(const ConfigSpec& spec, const Eigen::Vector2d& x,
                                            double tol = 1e-9,
                                            const DirectionScan* cached = nullptr) {
  if (!spec.unoriented) throw input_error("elongation_required expects an unoriented spec");
  auto mem = membership_test_2d(spec, x, std::numeric_limits<double>::infinity(), tol, cached);
  if (!mem.covered) throw numeric_error("no section zero found; invalid unoriented configuration");
  ElongationReport rep;
  rep.has_r_min = true;
  rep.r_min = 2.0 * mem.min_abs_t;
  return rep;
}

// Infimum over directions of the distance from the origin to the line of
// the configuration; grid scan plus golden-section polish.
inline double line_origin_distance_infimum(const ConfigSpec& spec, int cells = 8192) {
  auto scan = make_direction_scan(spec, cells);
  auto dist_at = [&](double th) {
    Eigen::Vector2d s = eval_angle(spec, th);
    return std::abs(s.dot(Eigen::Vector2d(-std::sin(th), std::cos(th))));
  };
  double best = std::numeric_limits<double>::infinity();
  int best_k = 0;
  for (int k = 0; k <= cells; ++k) {
    double d = std::abs((scan.sigma[static_cast<size_t>(k)])
                            .dot(Eigen::Vector2d(-std::sin(scan.theta[static_cast<size_t>(k)]),
                                                 std::cos(scan.theta[static_cast<size_t>(k)]))));
    if (d < best) {
      best = d;
      best_k = k;
    }
  }
  double lo = scan.theta[static_cast<size_t>(std::max(0, best_k - 1))];
  double hi = scan.theta[static_cast<size_t>(std::min(cells, best_k + 1))];
  auto gm = golden_min(dist_at, lo, hi, 1e-13);
  return std::min(best, gm.fx);
}

// --- Monte Carlo needle area -----------------------------------------------

struct Box2 {
  Eigen::Vector2d lo, hi;
  double area() const { return (hi.x() - lo.x()) * (hi.y() - lo.y()); }
};

// Hull of the needle-segment endpoints, inflated by 1%.
inline Box2 needle_bounding_box(const ConfigSpec& spec, double R, const DirectionScan& scan) {
  if (std::isinf(R)) throw input_error("needle_bounding_box needs finite R; pass a clip box instead");
  Eigen::Vector2d lo(std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity());
  Eigen::Vector2d hi = -lo;
  for (int k = 0; k <= scan.cells; ++k) {
    double th = scan.theta[static_cast<size_t>(k)];
    Eigen::Vector2d e(std::cos(th), std::sin(th));
    for (double sgn : {-1.0, 1.0}) {
      Eigen::Vector2d p = scan.sigma[static_cast<size_t>(k)] + sgn * (R / 2) * e;
      lo = lo.cwiseMin(p);
      hi = hi.cwiseMax(p);
    }
  }
  Eigen::Vector2d c = 0.5 * (lo + hi);
  Eigen::Vector2d h = 0.5 * (hi - lo) * 1.01;
  // keep a nonzero extent even for degenerate configurations
  h = h.cwiseMax(Eigen::Vector2d(1e-9, 1e-9));
  return {c - h, c + h};
}

inline int env_thread_count() {
  if (const char* env = std::getenv("KAKEYA_LAB_THREADS")) {
    int n = std::atoi(env);
    if (n >= 1) return std::min(n, 256);
  }
  return 1;
}

// Monte Carlo area of the R-elongated needle set over `box` (defaults to the
// endpoint hull). Sample i is derived from (seed, i), so the estimate is
// identical no matter how the samples are split across threads.
inline ElongationReport needle_area_2d(const ConfigSpec& spec, double R, long samples,
                                       std::uint64_t seed, double tol = 1e-9,
                                       std::optional<Box2> clip_box = std::nullopt) {
  if (samples < 100) throw input_error("needle_area_2d needs at least 100 samples");
  if (spec.dim != 2) throw input_error("needle_area_2d requires a planar spec");
  DirectionScan scan = make_direction_scan(spec);
  Box2 box = clip_box ? *clip_box : needle_bounding_box(spec, R, scan);

  const int threads = env_thread_count();
  std::vector<long> hits_per(static_cast<size_t>(threads), 0);
  auto worker = [&](int tid) {
    long hits = 0;
    for (long i = tid; i < samples; i += threads) {
      double ux = sample_uniform(seed, static_cast<std::uint64_t>(i), 0);
      double uy = sample_uniform(seed, static_cast<std::uint64_t>(i), 1);
      Eigen::Vector2d p(box.lo.x() + ux * (box.hi.x() - box.lo.x()),
                        box.lo.y() + uy * (box.hi.y() - box.lo.y()));
      auto mem = membership_test_2d(spec, p, R, tol, &scan);
      if (mem.covered) ++hits;
    }
    hits_per[static_cast<size_t>(tid)] = hits;
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }
  long hits = 0;
  for (long h : hits_per) hits += h;

  double p_hat = static_cast<double>(hits) / static_cast<double>(samples);
  ElongationReport rep;
  rep.has_area = true;
  rep.area = p_hat * box.area();
  rep.ci95 = 1.96 * std::sqrt(std::max(p_hat * (1 - p_hat), 0.0) / static_cast<double>(samples)) *
             box.area();
  rep.samples = samples;
  rep.seed = seed;
  rep.box_lo = box.lo;
  rep.box_hi = box.hi;
  return rep;
}

}  // namespace kakeya
