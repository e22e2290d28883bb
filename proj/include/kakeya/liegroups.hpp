#pragma once

// Concrete Lie groups with closed-form exponential and logarithm:
//
//   Euclidean   (R^n, +)                      exp = id
//   Heisenberg  unipotent upper-triangular    exp(p,q,r) = (p, q, r + pq/2)
//   Affine      [[a,b],[0,1]], a > 0          exp(u,v) = (e^u, v(e^u-1)/u)
//   Cylinder    C^*                           complex exp
//   Torus       (R/2piZ)^2                    coordinatewise mod
//   Rotation    SO(3)                         Rodrigues / principal branch
//
// Elements are stored in group coordinates; rotations as 3x3 matrices with
// re-orthonormalization when drift exceeds 1e-10.

#include <Eigen/Core>
#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <string>
#include <vector>

#include <json.hpp>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"

namespace kakeya {

enum class Group { Euclidean, Heisenberg, Affine, Cylinder, Torus, Rotation };

inline const char* to_string(Group g) {
  switch (g) {
    case Group::Euclidean: return "euclidean";
    case Group::Heisenberg: return "heisenberg";
    case Group::Affine: return "affine";
    case Group::Cylinder: return "cylinder";
    case Group::Torus: return "torus";
    case Group::Rotation: return "rotation";
  }
  return "?";
}

inline Group group_from_string(const std::string& s) {
  if (s == "euclidean") return Group::Euclidean;
  if (s == "heisenberg") return Group::Heisenberg;
  if (s == "affine") return Group::Affine;
  if (s == "cylinder") return Group::Cylinder;
  if (s == "torus") return Group::Torus;
  if (s == "rotation") return Group::Rotation;
  throw input_error("unknown group tag '" + s + "'");
}

// Algebra dimension; Euclidean needs the ambient dimension.
inline int algebra_dim(Group g, int euclidean_dim = 0) {
  switch (g) {
    case Group::Euclidean: return euclidean_dim;
    case Group::Heisenberg: return 3;
    case Group::Affine: return 2;
    case Group::Cylinder: return 2;
    case Group::Torus: return 2;
    case Group::Rotation: return 3;
  }
  return 0;
}

inline Eigen::Matrix3d reorthonormalize(Eigen::Matrix3d m) {
  // Gram-Schmidt on the columns
  Eigen::Vector3d c0 = m.col(0).normalized();
  Eigen::Vector3d c1 = (m.col(1) - m.col(1).dot(c0) * c0).normalized();
  Eigen::Vector3d c2 = c0.cross(c1);
  m.col(0) = c0;
  m.col(1) = c1;
  m.col(2) = c2;
  return m;
}

class GroupElement {
 public:
  Group tag = Group::Euclidean;
  Eigen::VectorXd coords;   // all groups except Rotation
  Eigen::Matrix3d rot = Eigen::Matrix3d::Identity();

  GroupElement() = default;

  static GroupElement euclidean(Eigen::VectorXd v) {
    GroupElement g;
    g.tag = Group::Euclidean;
    g.coords = std::move(v);
    return g;
  }
  static GroupElement heisenberg(double x, double y, double z) {
    GroupElement g;
    g.tag = Group::Heisenberg;
    g.coords = Eigen::Vector3d(x, y, z);
    return g;
  }
  static GroupElement affine(double a, double b) {
    if (!(a > 0)) throw input_error("affine element requires a > 0");
    GroupElement g;
    g.tag = Group::Affine;
    g.coords = Eigen::Vector2d(a, b);
    return g;
  }
  static GroupElement cylinder(std::complex<double> w) {
    if (std::abs(w) <= 1e-300) throw input_error("cylinder element must be a nonzero complex number");
    GroupElement g;
    g.tag = Group::Cylinder;
    g.coords = Eigen::Vector2d(w.real(), w.imag());
    return g;
  }
  static GroupElement torus(double phi1, double phi2) {
    GroupElement g;
    g.tag = Group::Torus;
    g.coords = Eigen::Vector2d(wrap_angle_2pi(phi1), wrap_angle_2pi(phi2));
    return g;
  }
  static GroupElement rotation(Eigen::Matrix3d m) {
    if ((m * m.transpose() - Eigen::Matrix3d::Identity()).norm() > 1e-10) m = reorthonormalize(m);
    if (m.determinant() < 0) throw input_error("rotation must have determinant +1");
    GroupElement g;
    g.tag = Group::Rotation;
    g.rot = m;
    return g;
  }

  static GroupElement identity(Group tag, int euclidean_dim = 0) {
    switch (tag) {
      case Group::Euclidean: return euclidean(Eigen::VectorXd::Zero(euclidean_dim));
      case Group::Heisenberg: return heisenberg(0, 0, 0);
      case Group::Affine: return affine(1, 0);
      case Group::Cylinder: return cylinder({1, 0});
      case Group::Torus: return torus(0, 0);
      case Group::Rotation: return rotation(Eigen::Matrix3d::Identity());
    }
    throw input_error("bad group tag");
  }

  std::complex<double> as_complex() const { return {coords[0], coords[1]}; }
};

struct AlgebraVector {
  Group tag = Group::Euclidean;
  Eigen::VectorXd coords;
};

// --- arithmetic -----------------------------------------------------------

inline GroupElement multiply(const GroupElement& a, const GroupElement& b) {
  if (a.tag != b.tag) throw input_error("group tags differ in multiply");
  switch (a.tag) {
    case Group::Euclidean:
      return GroupElement::euclidean(a.coords + b.coords);
    case Group::Heisenberg:
      return GroupElement::heisenberg(a.coords[0] + b.coords[0], a.coords[1] + b.coords[1],
                                      a.coords[2] + b.coords[2] + a.coords[0] * b.coords[1]);
    case Group::Affine:
      return GroupElement::affine(a.coords[0] * b.coords[0], a.coords[0] * b.coords[1] + a.coords[1]);
    case Group::Cylinder:
      return GroupElement::cylinder(a.as_complex() * b.as_complex());
    case Group::Torus:
      return GroupElement::torus(a.coords[0] + b.coords[0], a.coords[1] + b.coords[1]);
    case Group::Rotation:
      return GroupElement::rotation(a.rot * b.rot);
  }
  throw input_error("bad group tag");
}

inline GroupElement inverse(const GroupElement& a) {
  switch (a.tag) {
    case Group::Euclidean:
      return GroupElement::euclidean(-a.coords);
    case Group::Heisenberg:
      return GroupElement::heisenberg(-a.coords[0], -a.coords[1],
                                      -a.coords[2] + a.coords[0] * a.coords[1]);
    case Group::Affine:
      return GroupElement::affine(1.0 / a.coords[0], -a.coords[1] / a.coords[0]);
    case Group::Cylinder:
      return GroupElement::cylinder(1.0 / a.as_complex());
    case Group::Torus:
      return GroupElement::torus(-a.coords[0], -a.coords[1]);
    case Group::Rotation:
      return GroupElement::rotation(a.rot.transpose());
  }
  throw input_error("bad group tag");
}

// --- exp / log ------------------------------------------------------------

inline Eigen::Matrix3d rodrigues(const Eigen::Vector3d& axis_angle) {
  double angle = axis_angle.norm();
  if (angle < 1e-14) return Eigen::Matrix3d::Identity();
  Eigen::Vector3d u = axis_angle / angle;
  Eigen::Matrix3d k;
  k << 0, -u.z(), u.y(), u.z(), 0, -u.x(), -u.y(), u.x(), 0;
  return Eigen::Matrix3d::Identity() + std::sin(angle) * k + (1 - std::cos(angle)) * (k * k);
}

inline GroupElement exp_map(const AlgebraVector& X) {
  switch (X.tag) {
    case Group::Euclidean:
      return GroupElement::euclidean(X.coords);
    case Group::Heisenberg: {
      double p = X.coords[0], q = X.coords[1], r = X.coords[2];
      return GroupElement::heisenberg(p, q, r + 0.5 * p * q);
    }
    case Group::Affine: {
      double u = X.coords[0], v = X.coords[1];
      double a = std::exp(u);
      double b = std::abs(u) < 1e-8 ? v * (1.0 + 0.5 * u + u * u / 6.0) : v * std::expm1(u) / u;
      return GroupElement::affine(a, b);
    }
    case Group::Cylinder: {
      std::complex<double> z(X.coords[0], X.coords[1]);
      return GroupElement::cylinder(std::exp(z));
    }
    case Group::Torus:
      return GroupElement::torus(X.coords[0], X.coords[1]);
    case Group::Rotation:
      return GroupElement::rotation(rodrigues(Eigen::Vector3d(X.coords[0], X.coords[1], X.coords[2])));
  }
  throw input_error("bad group tag");
}

inline AlgebraVector log_map(const GroupElement& g) {
  AlgebraVector X;
  X.tag = g.tag;
  switch (g.tag) {
    case Group::Euclidean:
      X.coords = g.coords;
      return X;
    case Group::Heisenberg: {
      double x = g.coords[0], y = g.coords[1], z = g.coords[2];
      X.coords = Eigen::Vector3d(x, y, z - 0.5 * x * y);
      return X;
    }
    case Group::Affine: {
      double a = g.coords[0], b = g.coords[1];
      double u = std::log(a);
      double v = std::abs(u) < 1e-8 ? b / (1.0 + 0.5 * u + u * u / 6.0) : b * u / std::expm1(u);
      X.coords = Eigen::Vector2d(u, v);
      return X;
    }
    case Group::Cylinder: {
      std::complex<double> w = g.as_complex();
      if (std::abs(w) <= 1e-300) throw numeric_error("log of cylinder zero");
      std::complex<double> z = std::log(w);  // principal branch
      X.coords = Eigen::Vector2d(z.real(), z.imag());
      return X;
    }
    case Group::Torus: {
      X.coords = Eigen::Vector2d(wrap_to_pi(g.coords[0]), wrap_to_pi(g.coords[1]));
      return X;
    }
    case Group::Rotation: {
      double tr = g.rot.trace();
      double angle = std::acos(std::clamp((tr - 1.0) / 2.0, -1.0, 1.0));
      if (angle < 1e-12) {
        X.coords = Eigen::Vector3d::Zero();
        return X;
      }
      if (kPi - angle < 1e-9)
        throw branch_ambiguity("rotation log at the angle-pi branch is ambiguous");
      Eigen::Vector3d w(g.rot(2, 1) - g.rot(1, 2), g.rot(0, 2) - g.rot(2, 0),
                        g.rot(1, 0) - g.rot(0, 1));
      X.coords = (angle / (2.0 * std::sin(angle))) * w;
      return X;
    }
  }
  throw input_error("bad group tag");
}

// exp(t * X_L) for the unit algebra vector spanning L.
inline GroupElement one_param(Group tag, const Eigen::VectorXd& direction, double t) {
  double n = direction.norm();
  if (n < 1e-300) throw input_error("one_param needs a nonzero direction");
  AlgebraVector X;
  X.tag = tag;
  X.coords = (t / n) * direction;
  return exp_map(X);
}

// Left-invariant residual metric: |log(a^{-1} b)| where the log is defined;
// rotation pairs near the angle-pi branch fall back to coordinate distance.
inline double intrinsic_distance(const GroupElement& a, const GroupElement& b) {
  try {
    return log_map(multiply(inverse(a), b)).coords.norm();
  } catch (const branch_ambiguity&) {
    return (a.rot - b.rot).norm();
  }
}

// --- json -----------------------------------------------------------------

inline json element_to_json(const GroupElement& g) {
  json j;
  j["group"] = to_string(g.tag);
  switch (g.tag) {
    case Group::Euclidean: j["v"] = to_json_vec(g.coords); break;
    case Group::Heisenberg:
      j["x"] = g.coords[0];
      j["y"] = g.coords[1];
      j["z"] = g.coords[2];
      break;
    case Group::Affine:
      j["a"] = g.coords[0];
      j["b"] = g.coords[1];
      break;
    case Group::Cylinder:
      j["re"] = g.coords[0];
      j["im"] = g.coords[1];
      break;
    case Group::Torus: j["phi"] = std::vector<double>{g.coords[0], g.coords[1]}; break;
    case Group::Rotation: {
      std::vector<double> m;
      for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) m.push_back(g.rot(r, c));
      j["m"] = m;
      break;
    }
  }
  return j;
}

inline GroupElement element_from_json(const json& j) {
  Group tag = group_from_string(j.at("group").get<std::string>());
  switch (tag) {
    case Group::Euclidean: return GroupElement::euclidean(vec_from_json(j.at("v")));
    case Group::Heisenberg:
      return GroupElement::heisenberg(j.at("x").get<double>(), j.at("y").get<double>(),
                                      j.at("z").get<double>());
    case Group::Affine: return GroupElement::affine(j.at("a").get<double>(), j.at("b").get<double>());
    case Group::Cylinder:
      return GroupElement::cylinder({j.at("re").get<double>(), j.at("im").get<double>()});
    case Group::Torus: {
      auto phi = j.at("phi").get<std::vector<double>>();
      if (phi.size() != 2) throw input_error("torus element needs two angles");
      return GroupElement::torus(phi[0], phi[1]);
    }
    case Group::Rotation: {
      auto m = j.at("m").get<std::vector<double>>();
      if (m.size() != 9) throw input_error("rotation element needs 9 entries");
      Eigen::Matrix3d r;
      for (int i = 0; i < 9; ++i) r(i / 3, i % 3) = m[static_cast<size_t>(i)];
      return GroupElement::rotation(r);
    }
  }
  throw input_error("bad group tag");
}

inline json algebra_to_json(const AlgebraVector& X) {
  return json{{"group", to_string(X.tag)}, {"coords", to_json_vec(X.coords)}};
}

}  // namespace kakeya
