#pragma once

// Constructive zero localization for perpendicular sections and tangent
// fields, plus sphere-map degree computation.
//
// In the plane the section reduces to a scalar sign-change problem: with the
// moving frame e(t)=(cos t, sin t), n(t)=(-sin t, cos t), the function
// g(t) = sigma(t).n(t) satisfies g(0) = -g(pi) for any loop with
// sigma(pi)=sigma(0), so a zero exists and bisection finds it.
//
// On S^2 the finder localizes a zero of a tangent field by Poincare-Hopf
// index subdivision: the winding of the field around a face boundary,
// computed in a chart at the face centroid, equals the total index of the
// zeros inside, and the face indices of a closed mesh sum to 2. Some face
// therefore carries a nonzero index; recursing into it traps a zero, and a
// simplex polish drives the residual below tolerance.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"
#include "kakeya/direction.hpp"
#include "kakeya/icosphere.hpp"
#include "kakeya/numerics.hpp"

namespace kakeya {

struct ZeroCertificate {
  bool found = false;
  int dim = 2;
  bool oriented = false;
  double theta = 0;               // dim-2 direction parameter
  Eigen::VectorXd direction;      // unit representative
  double residual = 0;
  long iterations = 0;
  std::string method;             // bisection-2d | index-subdivision-s2 | heuristic-highdim
  std::string note;
  std::optional<int> index_sum;   // Poincare-Hopf diagnostic from the full mesh pass
  int mesh_depth = 0;
};

struct DegreeReport {
  int degree = 0;
  int depth = 0;
  double min_magnitude = 0;       // min raw field/map magnitude over the mesh
  double pre_round = 0;           // area sum / 4pi before rounding
  double max_image_edge = 0;      // largest image edge arc, a mesh-quality proxy
  std::string status;             // certified | low-confidence
};

// P_{L-perp}(sigma(L)): the component of sigma(L) orthogonal to the line L.
inline Eigen::VectorXd perp_section(const ConfigSpec& spec, const UnorientedDirection& L) {
  Eigen::VectorXd sigma = eval_config(spec, L);
  Eigen::VectorXd e = L.vector();
  return sigma - sigma.dot(e) * e;
}

// Signed planar version: sigma(t).n(t) for the frame above.
template <class F>
double signed_perp_2d(F&& sigma, double theta) {
  Eigen::Vector2d s = sigma(theta);
  return -s.x() * std::sin(theta) + s.y() * std::cos(theta);
}

// --- planar finder -------------------------------------------------------

// sigma: double -> Vector2d, any continuous loop with sigma(pi) = sigma(0).
template <class F>
ZeroCertificate find_zero_2d_loop(F&& sigma, double tol = 1e-9, int grid_cells = 256) {
  if (!(tol > 0)) throw input_error("tolerance must be positive");
  ZeroCertificate cert;
  cert.dim = 2;
  cert.oriented = false;
  cert.method = "bisection-2d";

  auto g = [&](double t) { return signed_perp_2d(sigma, t); };
  std::vector<double> gv(static_cast<size_t>(grid_cells) + 1);
  double best_abs = std::numeric_limits<double>::infinity();
  double best_theta = 0;
  for (int k = 0; k <= grid_cells; ++k) {
    double t = kPi * k / grid_cells;
    gv[static_cast<size_t>(k)] = g(t);
    if (std::abs(gv[static_cast<size_t>(k)]) < best_abs) {
      best_abs = std::abs(gv[static_cast<size_t>(k)]);
      best_theta = t;
    }
  }
  cert.iterations = grid_cells + 1;

  for (int k = 0; k < grid_cells; ++k) {
    double ga = gv[static_cast<size_t>(k)];
    double gb = gv[static_cast<size_t>(k) + 1];
    double ta = kPi * k / grid_cells;
    double tb = kPi * (k + 1) / grid_cells;
    if (ga == 0) {
      cert.found = true;
      cert.theta = wrap_angle_pi(ta);
      cert.residual = 0;
      break;
    }
    if ((ga < 0) != (gb < 0)) {
      auto r = bisect_to_tol(g, ta, tb, ga, gb, tol);
      cert.iterations += r.iterations;
      cert.found = true;
      cert.theta = wrap_angle_pi(r.x);
      cert.residual = std::abs(r.fx);
      break;
    }
  }
  if (!cert.found) {
    // No strict sign change: either g is flat below tolerance or the input
    // violates the loop identity.
    if (best_abs <= tol) {
      cert.found = true;
      cert.theta = wrap_angle_pi(best_theta);
      cert.residual = best_abs;
      cert.note = "no sign change; g below tolerance on the whole grid";
    } else {
      throw numeric_error("no sign change of the perpendicular section; input is not a valid loop");
    }
  }
  Eigen::VectorXd dir(2);
  dir << std::cos(cert.theta), std::sin(cert.theta);
  cert.direction = dir;
  return cert;
}

inline ZeroCertificate find_zero_unoriented_2d(const ConfigSpec& spec, double tol = 1e-9,
                                               int grid_cells = 256) {
  if (spec.dim != 2) throw input_error("find_zero_unoriented_2d requires dim 2");
  if (!spec.unoriented || !structurally_even(spec))
    throw input_error("find_zero_unoriented_2d requires a valid unoriented spec");
  return find_zero_2d_loop([&](double t) { return eval_angle(spec, t); }, tol, grid_cells);
}

// --- S^2 finder ----------------------------------------------------------

struct S2Options {
  double tol = 1e-6;
  int start_depth = 4;
  int max_depth = 12;
  int edge_samples = 16;
  int max_edge_samples = 2048;
  int polish_iters = 800;
};

namespace detail {

struct S2Search {
  std::function<Eigen::Vector3d(const Eigen::Vector3d&)> field;
  S2Options opt;
  long evals = 0;
  bool degenerate_hit = false;
  Eigen::Vector3d degenerate_point{0, 0, 0};
  double degenerate_norm = 0;

  Eigen::Vector3d eval(const Eigen::Vector3d& x) {
    ++evals;
    return field(x);
  }

  // Sample the arc a->b at m points (excluding b), check for boundary
  // degeneracy, and return field values with their positions.
  bool sample_edge(const Eigen::Vector3d& a, const Eigen::Vector3d& b, int m,
                   std::vector<Eigen::Vector3d>& pts, std::vector<Eigen::Vector3d>& vals) {
    for (int k = 0; k < m; ++k) {
      double t = static_cast<double>(k) / m;
      Eigen::Vector3d p = ((1 - t) * a + t * b).normalized();
      Eigen::Vector3d v = eval(p);
      if (v.norm() <= opt.tol) {
        degenerate_hit = true;
        degenerate_point = p;
        degenerate_norm = v.norm();
        return false;
      }
      pts.push_back(p);
      vals.push_back(v);
    }
    return true;
  }

  // Winding of the field around the triangle boundary, computed in the
  // tangent chart at the centroid. Doubles the sampling density until all
  // turn steps are < pi/2. Returns nullopt on boundary degeneracy.
  std::optional<int> face_winding(const std::array<Eigen::Vector3d, 3>& tri) {
    Eigen::Vector3d c = (tri[0] + tri[1] + tri[2]).normalized();
    Eigen::Vector3d e1 = (std::abs(c.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1) : Eigen::Vector3d(1, 0, 0))
                             .cross(c)
                             .normalized();
    Eigen::Vector3d e2 = c.cross(e1);
    int m = opt.edge_samples;
    while (true) {
      std::vector<Eigen::Vector3d> pts, vals;
      pts.reserve(static_cast<size_t>(3 * m));
      vals.reserve(static_cast<size_t>(3 * m));
      for (int e = 0; e < 3; ++e) {
        if (!sample_edge(tri[static_cast<size_t>(e)], tri[static_cast<size_t>((e + 1) % 3)], m, pts, vals))
          return std::nullopt;
      }
      double total = 0;
      bool ok = true;
      const size_t n = vals.size();
      for (size_t i = 0; i < n && ok; ++i) {
        const Eigen::Vector3d& va = vals[i];
        const Eigen::Vector3d& vb = vals[(i + 1) % n];
        Eigen::Vector2d ua(va.dot(e1), va.dot(e2));
        Eigen::Vector2d ub(vb.dot(e1), vb.dot(e2));
        if (ua.norm() == 0 || ub.norm() == 0) {
          ok = false;
          break;
        }
        double step = std::atan2(ua.x() * ub.y() - ua.y() * ub.x(), ua.dot(ub));
        if (std::abs(step) > kPi / 2) {
          ok = false;
          break;
        }
        total += step;
      }
      if (ok) return static_cast<int>(std::lround(total / kTwoPi));
      if (2 * m > opt.max_edge_samples) {
        // Cannot resolve the boundary: treat the point of smallest field
        // norm on it as a near-degeneracy.
        double best = std::numeric_limits<double>::infinity();
        Eigen::Vector3d bp = tri[0];
        for (size_t i = 0; i < vals.size(); ++i) {
          if (vals[i].norm() < best) {
            best = vals[i].norm();
            bp = pts[i];
          }
        }
        degenerate_hit = true;
        degenerate_point = bp;
        degenerate_norm = best;
        return std::nullopt;
      }
      m *= 2;
    }
  }
};

}  // namespace detail

// field: unit Vector3d -> Vector3d; values are projected to the tangent
// plane internally, so callers may pass the ambient value.
inline ZeroCertificate find_zero_s2_field(
    const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>& raw_field, const S2Options& opt) {
  if (!(opt.tol > 0)) throw input_error("tolerance must be positive");
  detail::S2Search search;
  search.opt = opt;
  search.field = [&raw_field](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    Eigen::Vector3d v = raw_field(x);
    return v - v.dot(x) * x;
  };

  ZeroCertificate cert;
  cert.dim = 3;
  cert.oriented = true;
  cert.method = "index-subdivision-s2";
  cert.mesh_depth = opt.start_depth;

  auto finish_point = [&](const Eigen::Vector3d& p, double rnorm, const std::string& note) {
    cert.found = rnorm <= opt.tol;
    cert.direction = Eigen::VectorXd(p);
    cert.residual = rnorm;
    cert.iterations = search.evals;
    cert.note = note;
    return cert;
  };

  // Simplex polish of |v|^2 in the tangent chart at `center`, tried at a few
  // simplex radii around `scale`.
  auto polish_at = [&](const Eigen::Vector3d& center, double scale) {
    Eigen::Vector3d c = center;
    Eigen::Vector3d e1 = (std::abs(c.z()) < 0.9 ? Eigen::Vector3d(0, 0, 1) : Eigen::Vector3d(1, 0, 0))
                             .cross(c)
                             .normalized();
    Eigen::Vector3d e2 = c.cross(e1);
    auto embed = [&](const std::vector<double>& u) {
      return Eigen::Vector3d((c + u[0] * e1 + u[1] * e2).normalized());
    };
    auto objective = [&](const std::vector<double>& u) { return search.field(embed(u)).squaredNorm(); };
    Eigen::Vector3d best_x = center;
    double best = search.field(center).squaredNorm();
    for (double sc : {scale, scale / 16, scale * 4}) {
      auto nm = nelder_mead(objective, {0.0, 0.0}, std::max(sc, 1e-12), opt.tol * opt.tol * 0.01,
                            opt.polish_iters);
      search.evals += nm.iterations;
      if (nm.fx < best) {
        best = nm.fx;
        best_x = embed(nm.x);
      }
      if (best <= opt.tol * opt.tol * 0.01) break;
    }
    return std::make_pair(best_x, std::sqrt(std::max(best, 0.0)));
  };

  // Degenerate boundary handling: an exact hit is a certificate; a
  // near-miss (sampling could not resolve the boundary winding) is polished.
  auto resolve_degenerate = [&]() {
    if (search.degenerate_norm <= opt.tol)
      return finish_point(search.degenerate_point, search.degenerate_norm, "near-zero on a mesh edge");
    auto [p, r] = polish_at(search.degenerate_point, 1e-3);
    return finish_point(p, r, "polished a near-degenerate boundary point");
  };

  IcoMesh mesh = IcoMesh::subdivided(opt.start_depth);
  std::vector<int> windings(mesh.faces.size(), 0);
  int sum = 0;
  int pick = -1;
  for (size_t f = 0; f < mesh.faces.size(); ++f) {
    std::array<Eigen::Vector3d, 3> tri = {mesh.verts[static_cast<size_t>(mesh.faces[f][0])],
                                          mesh.verts[static_cast<size_t>(mesh.faces[f][1])],
                                          mesh.verts[static_cast<size_t>(mesh.faces[f][2])]};
    auto w = search.face_winding(tri);
    if (!w) return resolve_degenerate();
    windings[f] = *w;
    sum += *w;
    if (pick < 0 && *w != 0) pick = static_cast<int>(f);
  }
  cert.index_sum = sum;
  if (pick < 0)
    throw numeric_error("no face carries a nonzero index although the index sum must be 2");

  std::array<Eigen::Vector3d, 3> tri = {mesh.verts[static_cast<size_t>(mesh.faces[static_cast<size_t>(pick)][0])],
                                        mesh.verts[static_cast<size_t>(mesh.faces[static_cast<size_t>(pick)][1])],
                                        mesh.verts[static_cast<size_t>(mesh.faces[static_cast<size_t>(pick)][2])]};
  int depth = opt.start_depth;
  while (depth < opt.max_depth) {
    auto children = split_triangle(tri);
    bool descended = false;
    for (const auto& child : children) {
      auto w = search.face_winding(child);
      if (search.degenerate_hit) {
        ZeroCertificate out = resolve_degenerate();
        out.index_sum = cert.index_sum;
        return out;
      }
      if (w && *w != 0) {
        tri = child;
        descended = true;
        break;
      }
    }
    ++depth;
    if (!descended) break;  // indices cancelled numerically; polish from here
  }

  // Simplex polish in the chart at the final triangle centroid.
  Eigen::Vector3d c = (tri[0] + tri[1] + tri[2]).normalized();
  double scale = std::max({(tri[0] - c).norm(), (tri[1] - c).norm(), (tri[2] - c).norm()});
  auto [x, rnorm] = polish_at(c, std::max(scale, 1e-9));
  ZeroCertificate out = finish_point(x, rnorm, "");
  out.index_sum = cert.index_sum;
  if (!out.found) out.note = "polish did not reach tolerance";
  return out;
}

inline ZeroCertificate find_zero_oriented_s2(const ConfigSpec& spec, double tol = 1e-6,
                                             int max_depth = 12) {
  if (spec.dim != 3) throw input_error("find_zero_oriented_s2 requires dim 3");
  S2Options opt;
  opt.tol = tol;
  opt.max_depth = max_depth;
  auto field = [&spec](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    Eigen::VectorXd s = eval_unit(spec, Eigen::VectorXd(x));
    return Eigen::Vector3d(s[0], s[1], s[2]);
  };
  return find_zero_s2_field(field, opt);
}

// Unoriented 3-D sections lift to even tangent fields on S^2; the direction
// is reported as a canonical antipodal representative.
inline ZeroCertificate find_zero_unoriented_3d(const ConfigSpec& spec, double tol = 1e-6,
                                               int max_depth = 12) {
  if (spec.dim != 3) throw input_error("find_zero_unoriented_3d requires dim 3");
  if (!spec.unoriented || !structurally_even(spec))
    throw input_error("find_zero_unoriented_3d requires a valid unoriented spec");
  S2Options opt;
  opt.tol = tol;
  opt.max_depth = max_depth;
  auto field = [&spec](const Eigen::Vector3d& x) -> Eigen::Vector3d {
    Eigen::VectorXd s = eval_unit(spec, Eigen::VectorXd(x));
    return Eigen::Vector3d(s[0], s[1], s[2]);
  };
  ZeroCertificate cert = find_zero_s2_field(field, opt);
  cert.oriented = false;
  if (cert.direction.size() == 3)
    cert.direction = canonical_antipodal(cert.direction);
  return cert;
}

// --- high-dimensional heuristic ------------------------------------------

// Multi-start minimization of the squared perpendicular component over the
// direction sphere. A miss is an honest "not found", never a disproof.
inline ZeroCertificate find_zero_highdim(const ConfigSpec& spec, double tol = 1e-8,
                                         int restarts = 64, std::uint64_t seed = 0) {
  if (spec.dim < 4) throw input_error("find_zero_highdim is for dim >= 4");
  const int n = spec.dim;
  ZeroCertificate cert;
  cert.dim = n;
  cert.oriented = !spec.unoriented;
  cert.method = "heuristic-highdim";

  auto objective_at = [&](const Eigen::VectorXd& u) {
    Eigen::VectorXd s = eval_unit(spec, u);
    Eigen::VectorXd perp = s - s.dot(u) * u;
    return perp.squaredNorm();
  };

  double best = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_u = Eigen::VectorXd::Unit(n, 0);
  long evals = 0;
  for (int r = 0; r < restarts; ++r) {
    Eigen::VectorXd u(n);
    for (int i = 0; i < n; ++i) {
      double a = sample_uniform(seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(2 * i));
      double b = sample_uniform(seed, static_cast<std::uint64_t>(r), static_cast<std::uint64_t>(2 * i + 1));
      u[i] = std::sqrt(-2 * std::log(std::max(a, 1e-300))) * std::cos(kTwoPi * b);
    }
    if (u.norm() < 1e-9) u = Eigen::VectorXd::Unit(n, 0);
    u.normalize();
    std::vector<double> x0(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) x0[static_cast<size_t>(i)] = u[i];
    auto f = [&](const std::vector<double>& x) {
      Eigen::VectorXd v(n);
      for (int i = 0; i < n; ++i) v[i] = x[static_cast<size_t>(i)];
      double nv = v.norm();
      if (nv < 1e-12) return 1e100;
      return objective_at(Eigen::VectorXd(v / nv));
    };
    auto nm = nelder_mead(f, x0, 0.3, tol * tol * 0.01, 400);
    evals += nm.iterations;
    Eigen::VectorXd v(n);
    for (int i = 0; i < n; ++i) v[i] = nm.x[static_cast<size_t>(i)];
    if (v.norm() < 1e-12) continue;
    v.normalize();
    double val = objective_at(v);
    if (val < best) {
      best = val;
      best_u = v;
    }
  }
  cert.iterations = evals;
  double rnorm = std::sqrt(std::max(best, 0.0));
  cert.residual = rnorm;
  cert.found = rnorm <= tol;
  if (spec.unoriented) {
    cert.direction = canonical_antipodal(best_u);
  } else {
    cert.direction = best_u;
  }
  if (!cert.found) cert.note = "heuristic search exhausted restarts; existence undecided";
  return cert;
}

// --- degree of a sphere map ----------------------------------------------

// map: unit Vector3d -> Vector3d (normalized inside). Degree via the sum of
// signed spherical areas of image triangles over an icosphere, divided by
// 4*pi (Van Oosterom-Strackee solid angle per triangle).
inline DegreeReport map_degree_s2(const std::function<Eigen::Vector3d(const Eigen::Vector3d&)>& map,
                                  int depth = 4) {
  IcoMesh mesh = IcoMesh::subdivided(depth);
  DegreeReport rep;
  rep.depth = depth;
  std::vector<Eigen::Vector3d> img(mesh.verts.size());
  double min_mag = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < mesh.verts.size(); ++i) {
    Eigen::Vector3d v = map(mesh.verts[i]);
    double nv = v.norm();
    min_mag = std::min(min_mag, nv);
    img[i] = nv > 0 ? Eigen::Vector3d(v / nv) : Eigen::Vector3d(0, 0, 1);
  }
  rep.min_magnitude = min_mag;

  double total = 0;
  double max_edge = 0;
  for (const auto& f : mesh.faces) {
    const Eigen::Vector3d& p = img[static_cast<size_t>(f[0])];
    const Eigen::Vector3d& q = img[static_cast<size_t>(f[1])];
    const Eigen::Vector3d& r = img[static_cast<size_t>(f[2])];
    double det = p.dot(q.cross(r));
    double den = 1.0 + p.dot(q) + q.dot(r) + r.dot(p);
    total += 2.0 * std::atan2(det, den);
    max_edge = std::max({max_edge, std::acos(std::clamp(p.dot(q), -1.0, 1.0)),
                         std::acos(std::clamp(q.dot(r), -1.0, 1.0)),
                         std::acos(std::clamp(r.dot(p), -1.0, 1.0))});
  }
  rep.pre_round = total / (4.0 * kPi);
  rep.degree = static_cast<int>(std::lround(rep.pre_round));
  rep.max_image_edge = max_edge;
  bool ok = std::abs(rep.pre_round - rep.degree) <= 0.1 && min_mag >= 1e-8 && max_edge <= kPi / 2;
  rep.status = ok ? "certified" : "low-confidence";
  return rep;
}

inline DegreeReport map_degree_s2(const ConfigSpec& spec, int depth = 4) {
  if (spec.dim != 3) throw input_error("map_degree_s2 requires a dim-3 spec");
  return map_degree_s2(
      [&spec](const Eigen::Vector3d& x) -> Eigen::Vector3d {
        Eigen::VectorXd s = eval_unit(spec, Eigen::VectorXd(x));
        return Eigen::Vector3d(s[0], s[1], s[2]);
      },
      depth);
}

}  // namespace kakeya
