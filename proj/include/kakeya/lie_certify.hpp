#pragma once

// Coverage certification in concrete Lie groups.
//
// For groups whose exponential is a global diffeomorphism (Euclidean braces,
// Heisenberg, Affine) every configuration lifts through log to an
// algebra-valued configuration, where the Euclidean zero finders apply; the
// witness line then maps back to a one-parameter coset through the target.
//
// For the cylinder C^* the identity is certified by lifting the
// configuration along the complex exponential to a path p(t) carrying a
// line of angle t, and locating a parameter where that line meets the
// kernel lattice {2*pi*i*n}. Torus configurations reduce to the planar or
// the cylinder case according to their winding pair.

#include <Eigen/Core>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"
#include "kakeya/icosphere.hpp"
#include "kakeya/liegroups.hpp"
#include "kakeya/topo_zero.hpp"

namespace kakeya {

// A group-valued configuration: exp of an algebra-valued spec, optionally
// twisted by winding terms (cylinder/torus) and left-translated.
//
//   sigma(theta) = left * exp( algebra(theta) + 2*theta*winding )
//
// The winding term preserves well-definedness on the projective line because
// a full half-turn shifts the exponent by 2*pi times an integer vector.
struct GroupConfig {
  Group group = Group::Heisenberg;
  int euclidean_dim = 2;           // only used by the Euclidean tag
  ConfigSpec algebra;              // dim == algebra_dim(group)
  std::vector<int> winding;        // cylinder: {k}; torus: {k1, k2}
  std::optional<GroupElement> left;

  int adim() const { return algebra_dim(group, euclidean_dim); }

  // Planar direction spaces (dim-2 algebras) evaluate by angle.
  GroupElement eval_angle(double theta) const {
    if (adim() != 2) throw input_error("eval_angle needs a 2-dimensional algebra");
    Eigen::Vector2d mu = kakeya::eval_angle(algebra, theta);
    AlgebraVector X;
    X.tag = group;
    X.coords = Eigen::VectorXd(mu);
    if (!winding.empty()) {
      if (group == Group::Cylinder) {
        X.coords[1] += 2.0 * theta * winding[0];
      } else if (group == Group::Torus && winding.size() == 2) {
        X.coords[0] += 2.0 * theta * winding[0];
        X.coords[1] += 2.0 * theta * winding[1];
      }
    }
    GroupElement g = exp_map(X);
    return left ? multiply(*left, g) : g;
  }

  // Direction-vector evaluation for 3-dimensional algebras.
  GroupElement eval_dir(const Eigen::Vector3d& u) const {
    if (adim() != 3) throw input_error("eval_dir needs a 3-dimensional algebra");
    Eigen::VectorXd mu = eval_unit(algebra, Eigen::VectorXd(u));
    AlgebraVector X;
    X.tag = group;
    X.coords = mu;
    GroupElement g = exp_map(X);
    return left ? multiply(*left, g) : g;
  }
};

inline json group_config_to_json(const GroupConfig& c) {
  json j;
  j["group"] = to_string(c.group);
  if (c.group == Group::Euclidean) j["euclidean_dim"] = c.euclidean_dim;
  j["algebra"] = spec_to_json(c.algebra);
  if (!c.winding.empty()) j["winding"] = c.winding;
  if (c.left) j["translate"] = element_to_json(*c.left);
  return j;
}

inline GroupConfig group_config_from_json(const json& j) {
  GroupConfig c;
  c.group = group_from_string(j.at("group").get<std::string>());
  c.algebra = spec_from_json(j.at("algebra"));
  c.euclidean_dim = j.value("euclidean_dim", c.algebra.dim);
  if (j.contains("winding")) c.winding = j.at("winding").get<std::vector<int>>();
  if (j.contains("translate")) c.left = element_from_json(j.at("translate"));
  if (c.algebra.dim != c.adim()) throw input_error("algebra spec dimension does not match the group");
  return c;
}

struct GroupCoverCertificate {
  bool covered = false;
  Group group = Group::Heisenberg;
  GroupElement target;
  Eigen::VectorXd direction;  // unit algebra vector of L*
  double theta = 0;           // planar parameter when the algebra is 2-dim
  double t = 0;               // flow time along exp(t * L*)
  double residual = 0;        // intrinsic distance between target and the witness point
  std::string method;
  std::string note;
};

inline json certificate_to_json(const GroupCoverCertificate& c) {
  json j;
  j["covered"] = c.covered;
  j["group"] = to_string(c.group);
  j["target"] = element_to_json(c.target);
  j["direction"] = to_json_vec(c.direction);
  j["t"] = c.t;
  j["residual"] = c.residual;
  j["method"] = c.method;
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

// --- global-diffeomorphism groups ------------------------------------------

// Certify target in |sigma| for groups with globally invertible exp. The
// translated configuration L -> g^{-1} * sigma(L) lifts through log; a zero
// L* of its perpendicular section gives g^{-1} sigma(L*) = exp(u L*), i.e.
// g = sigma(L*) * exp(-u L*).
inline GroupCoverCertificate certify_cover_group(const GroupConfig& config,
                                                 const GroupElement& target, double tol = 1e-8) {
  if (config.group != Group::Euclidean && config.group != Group::Heisenberg &&
      config.group != Group::Affine)
    throw input_error("certify_cover_group handles Euclidean, Heisenberg and Affine groups");
  if (target.tag != config.group) throw input_error("target group does not match configuration");
  const int d = config.adim();
  if (d != 2 && d != 3) throw input_error("guaranteed mode needs an algebra of dimension 2 or 3");

  GroupElement ginv = inverse(target);
  GroupCoverCertificate cert;
  cert.group = config.group;
  cert.target = target;

  double zero_tol = std::min(tol * 1e-2, 1e-10);
  for (int attempt = 0; attempt < 3; ++attempt) {
    ZeroCertificate z;
    Eigen::VectorXd e;
    if (d == 2) {
      auto mu = [&](double theta) {
        AlgebraVector X = log_map(multiply(ginv, config.eval_angle(theta)));
        return Eigen::Vector2d(X.coords[0], X.coords[1]);
      };
      z = find_zero_2d_loop(mu, zero_tol);
      e = z.direction;
    } else {
      auto field = [&](const Eigen::Vector3d& u) -> Eigen::Vector3d {
        AlgebraVector X = log_map(multiply(ginv, config.eval_dir(u)));
        return Eigen::Vector3d(X.coords[0], X.coords[1], X.coords[2]);
      };
      S2Options opt;
      opt.tol = zero_tol;
      z = find_zero_s2_field(field, opt);
      e = z.direction;
    }
    cert.method = z.method;
    cert.theta = d == 2 ? z.theta : 0.0;
    cert.direction = e;
    if (!z.found) {
      cert.note = z.note;
      return cert;
    }

    GroupElement sigma_at =
        d == 2 ? config.eval_angle(z.theta) : config.eval_dir(Eigen::Vector3d(e[0], e[1], e[2]));
    AlgebraVector mu_star = log_map(multiply(ginv, sigma_at));
    double u = mu_star.coords.dot(e);
    cert.t = -u;
    GroupElement witness = multiply(sigma_at, one_param(config.group, e, cert.t));
    cert.residual = intrinsic_distance(witness, target);
    cert.covered = cert.residual <= tol;
    if (cert.covered) return cert;
    zero_tol *= 1e-3;  // the algebra residual amplifies through the group product
  }
  cert.note = "residual did not reach tolerance after refinement";
  return cert;
}

// --- tautness ---------------------------------------------------------------

struct TautReport {
  bool taut = false;
  double sup_norm = 0;
  double worst_theta = 0;
  Eigen::VectorXd worst_dir;
  std::string note;
};

// sup over a direction mesh of |log sigma(L)| compared against rho. For the
// cylinder the angular coordinate of the log must stay below pi, so rho is
// restricted to the injectivity radius.
inline TautReport is_taut(const GroupConfig& config, double rho, int mesh = 2048) {
  if (!(rho > 0)) throw input_error("rho must be positive");
  if (config.group == Group::Cylinder && rho >= kPi)
    throw input_error("cylinder tautness needs rho < pi on the angular coordinate");
  TautReport rep;
  rep.sup_norm = 0;
  const int d = config.adim();
  try {
    if (d == 2) {
      for (int k = 0; k <= mesh; ++k) {
        double th = kPi * k / mesh;
        double n = log_map(config.eval_angle(th)).coords.norm();
        if (n > rep.sup_norm) {
          rep.sup_norm = n;
          rep.worst_theta = th;
        }
      }
    } else {
      IcoMesh m = IcoMesh::subdivided(4);
      for (const auto& v : m.verts) {
        double n = log_map(config.eval_dir(v)).coords.norm();
        if (n > rep.sup_norm) {
          rep.sup_norm = n;
          rep.worst_dir = Eigen::VectorXd(v);
        }
      }
    }
  } catch (const std::exception& e) {
    rep.taut = false;
    rep.note = std::string("log failed on the mesh: ") + e.what();
    return rep;
  }
  rep.taut = rep.sup_norm <= rho;
  return rep;
}

// --- cylinder identity coverage ----------------------------------------------

enum class LiftDecision { LiftToPlane, LiftToCylinder, Direct };

inline const char* to_string(LiftDecision d) {
  switch (d) {
    case LiftDecision::LiftToPlane: return "lift-to-plane";
    case LiftDecision::LiftToCylinder: return "lift-to-cylinder";
    case LiftDecision::Direct: return "direct";
  }
  return "?";
}

struct LiftReport {
  LiftDecision decision = LiftDecision::Direct;
  std::array<int, 2> torus_winding{0, 0};
  std::vector<double> t_samples;
  std::vector<std::complex<double>> path;  // lifted path p(t)
  int kernel_index = 0;                    // n* of the lattice hit
  double sup_p = 0;
};

struct CylinderIdentityResult {
  bool found = false;
  LiftReport lift;
  GroupCoverCertificate certificate;
  double plane_residual = 0;
  double line_time = 0;   // s* along the lifted line
  double line_angle = 0;  // raw hit parameter t* in [0, 2*pi]
  std::string note;
};

namespace detail {

// Continuous-logarithm lift of sigma over [0, 2*pi]; evaluation at arbitrary
// t continues the branch from the nearest grid anchor.
template <class SigmaC>
struct CylinderLift {
  const SigmaC& sigma;
  int grid;
  std::vector<double> ts;
  std::vector<std::complex<double>> p;
  bool steps_ok = true;

  CylinderLift(const SigmaC& s, int grid_cells) : sigma(s), grid(grid_cells) {
    ts.resize(static_cast<size_t>(grid) + 1);
    p.resize(static_cast<size_t>(grid) + 1);
    std::complex<double> w0 = sigma(0.0);
    if (std::abs(w0) <= 1e-300) throw numeric_error("configuration passes through zero");
    p[0] = std::log(w0);
    ts[0] = 0;
    double prev_arg = std::arg(w0);
    double im = p[0].imag();
    for (int k = 1; k <= grid; ++k) {
      double t = kTwoPi * k / grid;
      std::complex<double> w = sigma(t);
      if (std::abs(w) <= 1e-300) throw numeric_error("configuration passes through zero");
      double a = std::arg(w);
      double step = wrap_to_pi(a - prev_arg);
      if (std::abs(step) > kPi / 2) steps_ok = false;
      im += step;
      prev_arg = a;
      ts[static_cast<size_t>(k)] = t;
      p[static_cast<size_t>(k)] = {std::log(std::abs(w)), im};
    }
  }

  std::complex<double> at(double t) const {
    t = std::clamp(t, 0.0, kTwoPi);
    int k = std::clamp(static_cast<int>(t / kTwoPi * grid), 0, grid);
    std::complex<double> w = sigma(t);
    double im_anchor = p[static_cast<size_t>(k)].imag();
    double im = im_anchor + wrap_to_pi(std::arg(w) - im_anchor);
    return {std::log(std::abs(w)), im};
  }

  double sup_abs() const {
    double m = 0;
    for (const auto& z : p) m = std::max(m, std::abs(z));
    return m;
  }
};

}  // namespace detail

// Core of the cylinder identity certifier; sigma maps [0,2*pi] -> C^* with
// sigma(t+pi) = sigma(t), carrying the line of angle t at parameter t.
template <class SigmaC>
CylinderIdentityResult certify_identity_cylinder_path(const SigmaC& sigma, int grid = 2048,
                                                      double tol = 1e-9) {
  if (!(tol > 0)) throw input_error("tolerance must be positive");
  CylinderIdentityResult res;
  int cur_grid = grid;
  int extra_window = 0;
  for (int attempt = 0; attempt < 2; ++attempt) {
    std::optional<detail::CylinderLift<SigmaC>> lifted;
    lifted.emplace(sigma, cur_grid);
    for (int r = 0; r < 4 && !lifted->steps_ok; ++r) {
      // refine until the branch continuation is unambiguous
      cur_grid *= 2;
      lifted.emplace(sigma, cur_grid);
    }
    if (!lifted->steps_ok) throw numeric_error("lift steps remain too coarse after refinement");
    detail::CylinderLift<SigmaC>& use = *lifted;
    double sup_p = use.sup_abs();
    int window = static_cast<int>(std::ceil(sup_p / kTwoPi)) + 2 + extra_window;

    auto d_n = [&](int n, double t) {
      std::complex<double> pt = use.at(t);
      Eigen::Vector2d q(0.0, kTwoPi * n);
      Eigen::Vector2d pv(pt.real(), pt.imag());
      return (q - pv).dot(Eigen::Vector2d(-std::sin(t), std::cos(t)));
    };

    std::vector<int> order;
    order.push_back(0);
    for (int k = 1; k <= window; ++k) {
      order.push_back(-k);
      order.push_back(k);
    }

    for (int n : order) {
      std::vector<double> dv(static_cast<size_t>(cur_grid) + 1);
      for (int k = 0; k <= cur_grid; ++k) dv[static_cast<size_t>(k)] = d_n(n, use.ts[static_cast<size_t>(k)]);
      std::optional<double> hit_t;
      for (int k = 0; k <= cur_grid && !hit_t; ++k) {
        if (std::abs(dv[static_cast<size_t>(k)]) <= tol) hit_t = use.ts[static_cast<size_t>(k)];
        if (!hit_t && k < cur_grid &&
            (dv[static_cast<size_t>(k)] < 0) != (dv[static_cast<size_t>(k) + 1] < 0)) {
          auto r = bisect_to_tol([&](double t) { return d_n(n, t); }, use.ts[static_cast<size_t>(k)],
                                 use.ts[static_cast<size_t>(k) + 1], dv[static_cast<size_t>(k)],
                                 dv[static_cast<size_t>(k) + 1], tol);
          if (std::abs(r.fx) <= tol) hit_t = r.x;
        }
      }
      if (hit_t) {
        double t_star = *hit_t;
        std::complex<double> pt = use.at(t_star);
        Eigen::Vector2d pv(pt.real(), pt.imag());
        Eigen::Vector2d q(0.0, kTwoPi * n);
        Eigen::Vector2d e(std::cos(t_star), std::sin(t_star));
        double s_star = (q - pv).dot(e);
        Eigen::Vector2d miss = pv + s_star * e - q;

        res.found = true;
        res.line_time = s_star;
        res.line_angle = t_star;
        res.plane_residual = miss.norm();
        res.lift.decision = LiftDecision::Direct;
        res.lift.kernel_index = n;
        res.lift.t_samples = use.ts;
        res.lift.path = use.p;
        res.lift.sup_p = sup_p;

        GroupCoverCertificate cert;
        cert.group = Group::Cylinder;
        cert.target = GroupElement::identity(Group::Cylinder);
        cert.theta = wrap_angle_pi(t_star);
        cert.direction = Eigen::VectorXd(e);
        cert.t = s_star;
        std::complex<double> sig = sigma(t_star);
        GroupElement witness = multiply(GroupElement::cylinder(sig),
                                        one_param(Group::Cylinder, Eigen::VectorXd(e), s_star));
        cert.residual = intrinsic_distance(witness, cert.target);
        cert.covered = cert.residual <= std::max(tol * 4, 1e-12);
        cert.method = "cylinder-kernel-bisection";
        res.certificate = cert;
        return res;
      }
    }
    // escalate the window and grid once, then give up honestly
    cur_grid *= 2;
    extra_window += 4;
  }
  res.found = false;
  res.note = "no kernel hit within the escalated window; existence remains open at this resolution";
  return res;
}

inline CylinderIdentityResult certify_identity_cylinder(const GroupConfig& config, int grid = 2048,
                                                        double tol = 1e-9) {
  if (config.group != Group::Cylinder) throw input_error("configuration is not cylinder-valued");
  auto sigma = [&](double t) {
    GroupElement g = config.eval_angle(t);
    return g.as_complex();
  };
  return certify_identity_cylinder_path(sigma, grid, tol);
}

// --- torus ------------------------------------------------------------------

struct TorusLift {
  // Anchored continuous unwrap of the torus coordinates over [0, pi].
  std::vector<double> thetas;
  std::vector<Eigen::Vector2d> phi;

  Eigen::Vector2d at(const GroupConfig& config, double theta) const {
    double th = wrap_angle_pi(theta);
    size_t n = thetas.size() - 1;
    size_t k = std::min(static_cast<size_t>(th / kPi * static_cast<double>(n)), n);
    GroupElement g = config.eval_angle(th);
    Eigen::Vector2d anchor = phi[k];
    return Eigen::Vector2d(anchor[0] + wrap_to_pi(g.coords[0] - anchor[0]),
                           anchor[1] + wrap_to_pi(g.coords[1] - anchor[1]));
  }
};

inline TorusLift make_torus_lift(const GroupConfig& config, int mesh) {
  TorusLift lift;
  lift.thetas.resize(static_cast<size_t>(mesh) + 1);
  lift.phi.resize(static_cast<size_t>(mesh) + 1);
  GroupElement g0 = config.eval_angle(0.0);
  lift.thetas[0] = 0;
  lift.phi[0] = Eigen::Vector2d(wrap_to_pi(g0.coords[0]), wrap_to_pi(g0.coords[1]));
  Eigen::Vector2d prev_raw(g0.coords[0], g0.coords[1]);
  for (int k = 1; k <= mesh; ++k) {
    double th = kPi * k / mesh;
    GroupElement g = config.eval_angle(th);
    Eigen::Vector2d raw(g.coords[0], g.coords[1]);
    Eigen::Vector2d step(wrap_to_pi(raw[0] - prev_raw[0]), wrap_to_pi(raw[1] - prev_raw[1]));
    if (std::abs(step[0]) > kPi * (1 - 1e-9) || std::abs(step[1]) > kPi * (1 - 1e-9))
      throw numeric_error("mesh-step violation: consecutive torus samples jump by >= pi");
    lift.thetas[static_cast<size_t>(k)] = th;
    lift.phi[static_cast<size_t>(k)] = lift.phi[static_cast<size_t>(k) - 1] + step;
    prev_raw = raw;
  }
  return lift;
}

// Winding pair of the loop theta in [0, pi] -> sigma(theta) and the lifting
// decision it implies.
inline LiftReport torus_winding(const GroupConfig& config, int mesh = 2048) {
  if (config.group != Group::Torus) throw input_error("configuration is not torus-valued");
  TorusLift lift = make_torus_lift(config, mesh);
  Eigen::Vector2d delta = lift.phi.back() - lift.phi.front();
  LiftReport rep;
  for (int i = 0; i < 2; ++i) {
    double w = delta[i] / kTwoPi;
    long r = std::lround(w);
    if (std::abs(w - static_cast<double>(r)) > 1e-6)
      throw numeric_error("torus loop does not close; winding is not integral");
    rep.torus_winding[static_cast<size_t>(i)] = static_cast<int>(r);
  }
  rep.decision = (rep.torus_winding[0] == 0 && rep.torus_winding[1] == 0)
                     ? LiftDecision::LiftToPlane
                     : LiftDecision::LiftToCylinder;
  return rep;
}

struct TorusIdentityResult {
  bool found = false;
  LiftReport lift;
  GroupCoverCertificate certificate;
  std::string note;
};

// Identity coverage on the torus through the winding-based lift: winding
// (0,0) configurations lift to the plane and use the planar zero finder;
// otherwise the configuration lifts to the cylinder cover along the
// primitive winding direction and the kernel search applies there.
inline TorusIdentityResult certify_identity_torus(const GroupConfig& config, int mesh = 2048,
                                                  double tol = 1e-9) {
  TorusIdentityResult res;
  res.lift = torus_winding(config, mesh);
  TorusLift lift = make_torus_lift(config, mesh);

  if (res.lift.decision == LiftDecision::LiftToPlane) {
    auto mu = [&](double theta) { return lift.at(config, theta); };
    auto z = find_zero_2d_loop(mu, std::min(tol, 1e-10));
    Eigen::Vector2d e(std::cos(z.theta), std::sin(z.theta));
    double u = mu(z.theta).dot(e);
    GroupCoverCertificate cert;
    cert.group = Group::Torus;
    cert.target = GroupElement::identity(Group::Torus);
    cert.theta = z.theta;
    cert.direction = Eigen::VectorXd(e);
    cert.t = -u;
    GroupElement witness =
        multiply(config.eval_angle(z.theta), one_param(Group::Torus, cert.direction, cert.t));
    cert.residual = intrinsic_distance(witness, cert.target);
    cert.covered = cert.residual <= std::max(tol * 10, 1e-10);
    cert.method = "torus-plane-lift";
    res.certificate = cert;
    res.found = cert.covered;
    return res;
  }

  // primitive winding direction and a unimodular completion
  int w1 = res.lift.torus_winding[0], w2 = res.lift.torus_winding[1];
  int g = std::abs(std::gcd(w1, w2));
  int a = w1 / g, b = w2 / g;
  // find (c,d) with a*d - b*c = 1 (extended Euclid on a, b)
  auto egcd = [](long x, long y) {
    long old_r = x, r = y, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
      long q = old_r / r;
      long tmp = old_r - q * r;
      old_r = r;
      r = tmp;
      tmp = old_s - q * s;
      old_s = s;
      s = tmp;
      tmp = old_t - q * t;
      old_t = t;
      t = tmp;
    }
    return std::array<long, 3>{old_r, old_s, old_t};  // x*old_s + y*old_t = old_r
  };
  auto ext = egcd(a, b);
  long sign = ext[0] < 0 ? -1 : 1;
  // a*s + b*t = +-1  =>  a*(sign*s) + b*(sign*t) = 1; take d = sign*s, c = -sign*t
  long d = sign * ext[1];
  long c = -sign * ext[2];
  // M = [[d, -c], [-b, a]] maps (a,b) to (1,0); M^{-1} = [[a, c], [b, d]]
  Eigen::Matrix2d M;
  M << static_cast<double>(d), static_cast<double>(-c), static_cast<double>(-b),
      static_cast<double>(a);
  Eigen::Matrix2d Minv;
  Minv << static_cast<double>(a), static_cast<double>(c), static_cast<double>(b),
      static_cast<double>(d);

  // cylinder-valued lift: w(alpha) = exp(psi2 + i*psi1), psi = M * Phi
  auto theta_of_alpha = [&](double alpha) {
    Eigen::Vector2d dir = Minv * Eigen::Vector2d(std::sin(alpha), std::cos(alpha));
    return std::pair<double, Eigen::Vector2d>(wrap_angle_pi(std::atan2(dir[1], dir[0])), dir);
  };
  auto sigma_cyl = [&](double alpha) {
    auto [th, dir] = theta_of_alpha(alpha);
    Eigen::Vector2d psi = M * lift.at(config, th);
    return std::exp(std::complex<double>(psi[1], psi[0]));
  };

  auto cyl = certify_identity_cylinder_path(sigma_cyl, mesh, tol);
  res.lift.kernel_index = cyl.lift.kernel_index;
  res.lift.path = cyl.lift.path;
  res.lift.t_samples = cyl.lift.t_samples;
  res.lift.sup_p = cyl.lift.sup_p;
  if (!cyl.found) {
    res.note = cyl.note;
    return res;
  }
  double alpha_star = cyl.line_angle;  // raw hit parameter; orientation matters here
  auto [th_star, dir] = theta_of_alpha(alpha_star);
  double lam = dir.norm();
  Eigen::Vector2d xhat = dir / lam;
  double t_star = cyl.line_time * lam;

  GroupCoverCertificate cert;
  cert.group = Group::Torus;
  cert.target = GroupElement::identity(Group::Torus);
  cert.theta = th_star;
  cert.direction = Eigen::VectorXd(xhat);
  cert.t = t_star;
  GroupElement witness =
      multiply(config.eval_angle(th_star), one_param(Group::Torus, cert.direction, cert.t));
  cert.residual = intrinsic_distance(witness, cert.target);
  cert.covered = cert.residual <= std::max(tol * 10, 1e-9);
  cert.method = "torus-cylinder-lift";
  res.certificate = cert;
  res.found = cert.covered;
  if (!cert.covered) res.note = "cylinder hit did not project to a torus witness within tolerance";
  return res;
}

}  // namespace kakeya
