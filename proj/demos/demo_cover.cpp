// Walks through the planar coverage pipeline: build a configuration, pick
// targets, certify coverage and re-check every witness by hand.

#include <iostream>

#include "kakeya/euclid.hpp"

using namespace kakeya;

int main() {
  // sigma(theta) = (cos 2theta, sin 2theta): a figure-eight-ish loop on the
  // projective line
  std::vector<TrigCoeffs> coords(2);
  coords[0].cos_k = {0, 0, 1};
  coords[0].sin_k = {0, 0, 0};
  coords[1].cos_k = {0, 0, 0};
  coords[1].sin_k = {0, 0, 1};
  ConfigSpec spec = ConfigSpec::trig(coords, true);

  for (double tx : {0.0, 2.0, -7.5}) {
    Eigen::VectorXd target(2);
    target << tx, 0.5 * tx - 1.0;
    CoverCertificate cert = certify_cover_unoriented(spec, target);
    Eigen::Vector2d sigma = eval_angle(spec, cert.theta);
    Eigen::Vector2d e(std::cos(cert.theta), std::sin(cert.theta));
    double recheck = (Eigen::Vector2d(target) - sigma - cert.t * e).norm();
    std::cout << "target (" << target[0] << ", " << target[1] << ")  theta* = " << cert.theta
              << "  t* = " << cert.t << "  residual = " << cert.residual
              << "  recheck = " << recheck << "\n";
  }

  // the even-dimensional counterexample: tangent lines of the unit circle
  ConfigSpec circle = tangent_circle_config(1.0);
  std::cout << "tangent-circle line distance to origin: "
            << line_origin_distance_infimum(circle) << "\n";
  auto inside = membership_test_2d(circle, {0.0, 0.0}, std::numeric_limits<double>::infinity());
  std::cout << "origin covered by tangent lines? " << (inside.covered ? "yes" : "no") << "\n";
  return 0;
}
