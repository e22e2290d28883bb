#pragma once

// Winding numbers of sampled planar loops about the origin.

#include <Eigen/Core>

#include <cmath>
#include <vector>

#include "kakeya/common.hpp"

namespace kakeya {

// Turn-angle sum of the closed loop through the samples (implicitly closed
// back to the first sample), divided by 2*pi. Errors if a sample sits on the
// origin or two consecutive samples subtend an angle >= pi, which would make
// the turn direction ambiguous; the caller should refine the loop.
inline int winding_number(const std::vector<Eigen::Vector2d>& loop) {
  if (loop.size() < 3) throw input_error("winding_number needs at least 3 samples");
  double total = 0;
  const size_t n = loop.size();
  for (size_t i = 0; i < n; ++i) {
    const Eigen::Vector2d& a = loop[i];
    const Eigen::Vector2d& b = loop[(i + 1) % n];
    if (a.norm() == 0 || b.norm() == 0) throw numeric_error("loop sample passes through the origin");
    double cross = a.x() * b.y() - a.y() * b.x();
    double dot = a.dot(b);
    double step = std::atan2(cross, dot);
    if (std::abs(step) >= kPi * (1.0 - 1e-9))
      throw numeric_error("consecutive samples subtend an angle >= pi; refine the loop");
    total += step;
  }
  double w = total / kTwoPi;
  long r = std::lround(w);
  if (std::abs(w - static_cast<double>(r)) > 0.25)
    throw numeric_error("turn-angle sum is not close to an integer multiple of 2*pi");
  return static_cast<int>(r);
}

// Continuous unwrap of a sampled angle sequence; steps must stay below pi.
inline std::vector<double> unwrap_angles(const std::vector<double>& raw) {
  std::vector<double> out;
  out.reserve(raw.size());
  if (raw.empty()) return out;
  out.push_back(raw[0]);
  for (size_t i = 1; i < raw.size(); ++i) {
    double step = wrap_to_pi(raw[i] - raw[i - 1]);
    out.push_back(out.back() + step);
  }
  return out;
}

}  // namespace kakeya
