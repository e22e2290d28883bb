#pragma once

// Small derivative-free building blocks: sign-change bisection, golden
// section minimization, and a plain Nelder-Mead simplex. These back the
// certificate searches; none of them assume smoothness beyond continuity.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "kakeya/common.hpp"

namespace kakeya {

struct BisectResult {
  double x = 0;
  double fx = 0;
  int iterations = 0;
};

// Bisect f on [a,b] with sign(f(a)) != sign(f(b)) until |f| <= ftol or the
// interval collapses to machine width. Returns the best endpoint seen.
template <class F>
BisectResult bisect_to_tol(F&& f, double a, double b, double fa, double fb, double ftol) {
  BisectResult r;
  if (fa == 0) return {a, 0.0, 0};
  if (fb == 0) return {b, 0.0, 0};
  double best_x = std::abs(fa) < std::abs(fb) ? a : b;
  double best_f = std::abs(fa) < std::abs(fb) ? fa : fb;
  int it = 0;
  while (std::abs(best_f) > ftol) {
    double m = 0.5 * (a + b);
    if (m == a || m == b) break;  // one ulp left
    double fm = f(m);
    ++it;
    if (std::abs(fm) < std::abs(best_f)) {
      best_f = fm;
      best_x = m;
    }
    if (fm == 0) break;
    if ((fa < 0) == (fm < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
      fb = fm;
    }
  }
  r.x = best_x;
  r.fx = best_f;
  r.iterations = it;
  return r;
}

// Golden-section minimization of f on [a,b]; xtol on the bracket width.
template <class F>
BisectResult golden_min(F&& f, double a, double b, double xtol, int max_iter = 200) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  int it = 0;
  while (b - a > xtol && it < max_iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
    ++it;
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm), it};
}

struct NelderMeadResult {
  std::vector<double> x;
  double fx = 0;
  int iterations = 0;
};

// Standard Nelder-Mead on R^d. `scale` sets the initial simplex radius.
inline NelderMeadResult nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                                    std::vector<double> x0, double scale, double ftarget,
                                    int max_iter = 600) {
  const size_t d = x0.size();
  const double alpha = 1.0, gamma = 2.0, rho = 0.5, shrink = 0.5;
  std::vector<std::vector<double>> pts(d + 1, x0);
  std::vector<double> fv(d + 1);
  for (size_t i = 0; i < d; ++i) pts[i + 1][i] += scale;
  for (size_t i = 0; i <= d; ++i) fv[i] = f(pts[i]);

  auto order = [&] {
    std::vector<size_t> idx(d + 1);
    for (size_t i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](size_t a, size_t b) { return fv[a] < fv[b]; });
    std::vector<std::vector<double>> p2(d + 1);
    std::vector<double> f2(d + 1);
    for (size_t i = 0; i <= d; ++i) {
      p2[i] = pts[idx[i]];
      f2[i] = fv[idx[i]];
    }
    pts.swap(p2);
    fv.swap(f2);
  };

  int it = 0;
  for (; it < max_iter; ++it) {
    order();
    if (fv[0] <= ftarget) break;
    // simplex collapse check
    double spread = 0;
    for (size_t i = 0; i < d; ++i)
      spread = std::max(spread, std::abs(pts[d][i] - pts[0][i]));
    if (spread < 1e-17 && fv[d] - fv[0] < 1e-30) break;

    std::vector<double> centroid(d, 0.0);
    for (size_t i = 0; i < d; ++i) {
      for (size_t j = 0; j < d; ++j) centroid[j] += pts[i][j];
    }
    for (size_t j = 0; j < d; ++j) centroid[j] /= static_cast<double>(d);

    auto combine = [&](double t) {
      std::vector<double> p(d);
      for (size_t j = 0; j < d; ++j) p[j] = centroid[j] + t * (pts[d][j] - centroid[j]);
      return p;
    };

    auto xr = combine(-alpha);
    double fr = f(xr);
    if (fr < fv[0]) {
      auto xe = combine(-gamma);
      double fe = f(xe);
      if (fe < fr) {
        pts[d] = xe;
        fv[d] = fe;
      } else {
        pts[d] = xr;
        fv[d] = fr;
      }
    } else if (fr < fv[d - 1]) {
      pts[d] = xr;
      fv[d] = fr;
    } else {
      auto xc = combine(fr < fv[d] ? -rho : rho);
      double fc = f(xc);
      if (fc < std::min(fr, fv[d])) {
        pts[d] = xc;
        fv[d] = fc;
      } else {
        for (size_t i = 1; i <= d; ++i) {
          for (size_t j = 0; j < d; ++j)
            pts[i][j] = pts[0][j] + shrink * (pts[i][j] - pts[0][j]);
          fv[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return {pts[0], fv[0], it};
}

}  // namespace kakeya
