#pragma once

// The SO(3) -> S^2 quotient: great-circle curves swept by one-parameter
// subgroups, degree-based liftability of sphere-valued configurations, and
// explicit lifting when the image misses a point (the contractible case).

#include <Eigen/Core>
#include <Eigen/Geometry>
#include <Eigen/Dense>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"
#include "kakeya/icosphere.hpp"
#include "kakeya/liegroups.hpp"
#include "kakeya/topo_zero.hpp"

namespace kakeya {

// A sphere-valued configuration: a dim-3 spec whose values are normalized
// onto S^2. Raw values must stay away from zero.
struct SphereMap {
  ConfigSpec spec;

  explicit SphereMap(ConfigSpec s) : spec(std::move(s)) {
    if (spec.dim != 3) throw input_error("sphere maps need a dim-3 spec");
  }

  Eigen::Vector3d operator()(const Eigen::Vector3d& x) const {
    Eigen::VectorXd v = eval_unit(spec, Eigen::VectorXd(x));
    Eigen::Vector3d w(v[0], v[1], v[2]);
    double n = w.norm();
    if (n < 1e-12) throw numeric_error("sphere map value vanishes; cannot normalize");
    return w / n;
  }

  double min_raw_norm(int depth = 4) const {
    IcoMesh mesh = IcoMesh::subdivided(depth);
    double m = std::numeric_limits<double>::infinity();
    for (const auto& x : mesh.verts) {
      Eigen::VectorXd v = eval_unit(spec, Eigen::VectorXd(x));
      m = std::min(m, Eigen::Vector3d(v[0], v[1], v[2]).norm());
    }
    return m;
  }
};

// The curve t -> exp(t * axis) * base: a latitude circle about the axis,
// degenerating to a point when base = +-axis.
struct GreatCircleCurve {
  Eigen::Vector3d base;
  Eigen::Vector3d axis;  // unit
  bool constant = false;

  Eigen::Vector3d at(double t) const { return rodrigues(t * axis) * base; }

  std::vector<Eigen::Vector3d> samples(int n = 256) const {
    std::vector<Eigen::Vector3d> out;
    out.reserve(static_cast<size_t>(n) + 1);
    for (int k = 0; k <= n; ++k) out.push_back(at(kTwoPi * k / n));
    return out;
  }
};

inline GreatCircleCurve quotient_curve(const Eigen::Vector3d& axis, const Eigen::Vector3d& base) {
  if (std::abs(axis.norm() - 1.0) > 1e-9 || std::abs(base.norm() - 1.0) > 1e-9)
    throw input_error("quotient_curve expects unit axis and base");
  GreatCircleCurve c;
  c.axis = axis;
  c.base = base;
  c.constant = (base - axis).norm() < 1e-12 || (base + axis).norm() < 1e-12;
  return c;
}

// --- liftability -------------------------------------------------------------

struct Liftability {
  DegreeReport degree;
  bool liftable = false;
  bool undecided = false;
};

// A sphere-valued configuration lifts through SO(3) -> S^2 exactly when its
// degree vanishes.
inline Liftability liftability_s2(const SphereMap& map, int depth = 4) {
  Liftability out;
  out.degree = map_degree_s2([&](const Eigen::Vector3d& x) { return map(x); }, depth);
  if (out.degree.status != "certified") {
    out.undecided = true;
    return out;
  }
  out.liftable = out.degree.degree == 0;
  return out;
}

// --- explicit lift when a point is omitted -----------------------------------

// Rotation with R * from = to along the geodesic; antipodal pairs take a
// deterministic half-turn.
inline Eigen::Matrix3d minimal_rotation(const Eigen::Vector3d& from, const Eigen::Vector3d& to) {
  Eigen::Vector3d axis = from.cross(to);
  double s = axis.norm();
  double c = std::clamp(from.dot(to), -1.0, 1.0);
  if (s < 1e-14) {
    if (c > 0) return Eigen::Matrix3d::Identity();
    Eigen::Vector3d ref = std::abs(from.x()) < 0.9 ? Eigen::Vector3d(1, 0, 0) : Eigen::Vector3d(0, 1, 0);
    Eigen::Vector3d perp = (ref - ref.dot(from) * from).normalized();
    return rodrigues(kPi * perp);
  }
  return rodrigues(std::atan2(s, c) * (axis / s));
}

// Continuous SO(3)-valued lift of `map` over S^2 when the image omits a
// neighborhood of `omitted`: the geodesic section of the quotient over the
// complement of the omitted point, conjugated so the puncture sits at the
// antipode of the reference base point.
struct LiftedConfig {
  SphereMap map;
  Eigen::Vector3d omitted;
  Eigen::Matrix3d pre;                                 // sends omitted to -base_point
  Eigen::Vector3d base_point{0, 0, 1};

  Eigen::Matrix3d at(const Eigen::Vector3d& x) const {
    Eigen::Vector3d y = pre * map(x);
    Eigen::Matrix3d r = pre.transpose() * minimal_rotation(base_point, y);
    if ((r * r.transpose() - Eigen::Matrix3d::Identity()).norm() > 1e-10) r = reorthonormalize(r);
    return r;
  }

  Eigen::Vector3d project(const Eigen::Vector3d& x) const { return at(x) * base_point; }
};

inline LiftedConfig lift_omitting_point(const SphereMap& map, const Eigen::Vector3d& omitted,
                                        int depth = 4) {
  if (std::abs(omitted.norm() - 1.0) > 1e-9) throw input_error("omitted point must be on the sphere");
  // precondition: the image keeps clear of the omitted point
  IcoMesh mesh = IcoMesh::subdivided(depth);
  double worst = -1;
  for (const auto& x : mesh.verts) worst = std::max(worst, map(x).dot(omitted));
  if (worst > 1.0 - 1e-6)
    throw input_error("configuration image approaches the omitted point; no section applies");
  LiftedConfig lift{map, omitted, Eigen::Matrix3d::Identity()};
  lift.pre = minimal_rotation(omitted, -lift.base_point);
  return lift;
}

// --- swept membership ---------------------------------------------------------

struct SweptWitness {
  Eigen::Vector3d direction;
  double t = 0;         // curve parameter of the closest approach
  double distance = 0;  // chordal distance of the curve to the target
};

struct SweptResult {
  bool covered = false;
  int mesh_depth = 0;
  long directions = 0;
  std::vector<SweptWitness> witnesses;
  double min_distance = std::numeric_limits<double>::infinity();
};

// For each sampled direction v, the curve through sigma(v) with axis v is
// the latitude circle at height sigma(v).v; its distance to the target has
// a closed form. "Uncovered" is only meaningful at the sampled resolution.
inline SweptResult swept_membership_s2(const SphereMap& config, const Eigen::Vector3d& target,
                                       double tol = 1e-6, int depth = 4) {
  SweptResult res;
  res.mesh_depth = depth;
  IcoMesh mesh = IcoMesh::subdivided(depth);
  res.directions = static_cast<long>(mesh.verts.size());
  for (const auto& v : mesh.verts) {
    Eigen::Vector3d s = config(v);
    double c = s.dot(v);
    double r2 = std::max(0.0, 1.0 - c * c);
    double r = std::sqrt(r2);
    double dist;
    double t_par = 0;
    if (r < 1e-9) {
      // constant curve: the point sigma(v) itself
      dist = (target - s).norm();
    } else {
      Eigen::Vector3d p_perp = target - target.dot(v) * v;
      double rho = p_perp.norm();
      double ax = target.dot(v);
      if (rho < 1e-15) {
        dist = std::sqrt((ax - c) * (ax - c) + r2);
      } else {
        dist = std::sqrt((ax - c) * (ax - c) + (rho - r) * (rho - r));
        // angle of the nearest point in the circle frame anchored at sigma(v)
        Eigen::Vector3d e1 = (s - c * v) / r;
        Eigen::Vector3d e2 = v.cross(e1);
        t_par = std::atan2(p_perp.dot(e2), p_perp.dot(e1));
      }
    }
    res.min_distance = std::min(res.min_distance, dist);
    if (dist <= tol) res.witnesses.push_back({v, t_par, dist});
  }
  res.covered = !res.witnesses.empty();
  return res;
}

// CSV polyline export for plotting.
inline std::string curve_to_csv(const GreatCircleCurve& curve, int n = 256) {
  std::string out = "t,x,y,z\n";
  for (int k = 0; k <= n; ++k) {
    double t = kTwoPi * k / n;
    Eigen::Vector3d p = curve.at(t);
    out += std::to_string(t) + "," + std::to_string(p.x()) + "," + std::to_string(p.y()) + "," +
           std::to_string(p.z()) + "\n";
  }
  return out;
}

}  // namespace kakeya
