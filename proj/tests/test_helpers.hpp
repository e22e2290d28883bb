#pragma once

// Shared generators and independent oracles for the test suites. Oracles
// here must stay independent of the library code paths they check.

#include <Eigen/Core>
#include <Eigen/Dense>

#include <cmath>
#include <random>
#include <vector>

#include "kakeya/config.hpp"

namespace testutil {

using kakeya::ConfigSpec;
using kakeya::TrigCoeffs;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double runif(std::mt19937_64& g, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(g);
}

// Random planar trig polynomial; even harmonics only when unoriented.
inline ConfigSpec random_trig2(std::mt19937_64& g, int max_harmonic, double coeff_lo,
                               double coeff_hi, bool unoriented) {
  std::vector<TrigCoeffs> coords(2);
  for (auto& c : coords) {
    c.cos_k.assign(static_cast<size_t>(max_harmonic) + 1, 0.0);
    c.sin_k.assign(static_cast<size_t>(max_harmonic) + 1, 0.0);
    for (int k = 0; k <= max_harmonic; ++k) {
      if (unoriented && k % 2 != 0) continue;
      c.cos_k[static_cast<size_t>(k)] = runif(g, coeff_lo, coeff_hi);
      if (k >= 1) c.sin_k[static_cast<size_t>(k)] = runif(g, coeff_lo, coeff_hi);
    }
  }
  return ConfigSpec::trig(std::move(coords), unoriented);
}

// Random polynomial field R^n restricted to the direction sphere, degree <= 2.
// Even (degree 0 and 2 terms) when `even`, else degrees 0..2.
inline ConfigSpec random_poly_field(std::mt19937_64& g, int dim, bool even, double scale = 1.0) {
  std::vector<std::vector<kakeya::PolyTerm>> coords(static_cast<size_t>(dim));
  for (auto& terms : coords) {
    {
      kakeya::PolyTerm t;
      t.coeff = runif(g, -scale, scale);
      t.exponents.assign(static_cast<size_t>(dim), 0);
      terms.push_back(t);
    }
    if (!even) {
      for (int i = 0; i < dim; ++i) {
        kakeya::PolyTerm t;
        t.coeff = runif(g, -scale, scale);
        t.exponents.assign(static_cast<size_t>(dim), 0);
        t.exponents[static_cast<size_t>(i)] = 1;
        terms.push_back(t);
      }
    }
    for (int i = 0; i < dim; ++i) {
      for (int j = i; j < dim; ++j) {
        kakeya::PolyTerm t;
        t.coeff = runif(g, -scale, scale);
        t.exponents.assign(static_cast<size_t>(dim), 0);
        t.exponents[static_cast<size_t>(i)] += 1;
        t.exponents[static_cast<size_t>(j)] += 1;
        terms.push_back(t);
      }
    }
  }
  return ConfigSpec::polynomial(dim, std::move(coords), even);
}

// Brute-force argmin of the tangent-field norm over a dense latitude and
// longitude grid on S^2. Independent of the subdivision machinery.
template <class F>
inline std::pair<Eigen::Vector3d, double> brute_min_s2(F&& field_norm, int n_theta = 1000,
                                                       int n_phi = 1000) {
  double best = std::numeric_limits<double>::infinity();
  Eigen::Vector3d arg(0, 0, 1);
  for (int i = 0; i <= n_theta; ++i) {
    double th = M_PI * i / n_theta;
    for (int j = 0; j < n_phi; ++j) {
      double ph = 2 * M_PI * j / n_phi;
      Eigen::Vector3d x(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th));
      double v = field_norm(x);
      if (v < best) {
        best = v;
        arg = x;
      }
    }
  }
  return {arg, best};
}

}  // namespace testutil
