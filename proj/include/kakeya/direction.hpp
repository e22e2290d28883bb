#pragma once

// Direction spaces: lines through the origin (unoriented) and unit vectors
// (oriented). Unoriented directions in the plane are angles in [0,pi); in
// higher dimension they are canonical antipodal representatives whose first
// coordinate above the zero tolerance is positive.

#include <Eigen/Core>

#include <cmath>

#include "kakeya/common.hpp"

namespace kakeya {

inline Eigen::VectorXd canonical_antipodal(Eigen::VectorXd v) {
  double n = v.norm();
  if (n < kCanonicalZeroTol) throw input_error("direction vector has zero norm");
  v /= n;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v[i]) > kCanonicalZeroTol) {
      if (v[i] < 0) v = -v;
      break;
    }
  }
  return v;
}

class UnorientedDirection {
 public:
  static UnorientedDirection from_angle(double theta) {
    UnorientedDirection d;
    d.dim_ = 2;
    d.theta_ = wrap_angle_pi(theta);
    return d;
  }

  static UnorientedDirection from_vector(const Eigen::VectorXd& v) {
    if (v.size() < 2) throw input_error("direction needs dimension >= 2");
    if (v.size() == 2) return from_angle(std::atan2(v[1], v[0]));
    UnorientedDirection d;
    d.dim_ = static_cast<int>(v.size());
    d.vec_ = canonical_antipodal(v);
    return d;
  }

  int dim() const { return dim_; }

  double angle() const {
    if (dim_ != 2) throw input_error("angle() only defined in dimension 2");
    return theta_;
  }

  // Unit representative spanning the line.
  Eigen::VectorXd vector() const {
    if (dim_ == 2) {
      Eigen::VectorXd v(2);
      v << std::cos(theta_), std::sin(theta_);
      return v;
    }
    return vec_;
  }

 private:
  int dim_ = 2;
  double theta_ = 0;
  Eigen::VectorXd vec_;
};

class OrientedDirection {
 public:
  static OrientedDirection from_angle(double theta) {
    Eigen::VectorXd v(2);
    v << std::cos(theta), std::sin(theta);
    return from_vector(v);
  }

  static OrientedDirection from_vector(const Eigen::VectorXd& v) {
    if (v.size() < 2) throw input_error("direction needs dimension >= 2");
    double n = v.norm();
    if (n < kCanonicalZeroTol) throw input_error("direction vector has zero norm");
    OrientedDirection d;
    d.v_ = v / n;
    return d;
  }

  int dim() const { return static_cast<int>(v_.size()); }
  const Eigen::VectorXd& vector() const { return v_; }

  double angle() const {
    if (dim() != 2) throw input_error("angle() only defined in dimension 2");
    return wrap_angle_2pi(std::atan2(v_[1], v_[0]));
  }

 private:
  Eigen::VectorXd v_;
};

}  // namespace kakeya
