#pragma once

// Evaluable configuration families: a configuration assigns to every
// direction a displacement in R^n. Payload kinds cover constants, planar
// trigonometric polynomials, tangent-line families of a circle, sampled
// closed loops with linear interpolation, multivariate polynomials in the
// direction coordinates (the n>=3 families), and translated wrappers.
//
// JSON layout: {"kind": "...", "dim": n, "unoriented": bool, ...payload}.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

#include "kakeya/common.hpp"
#include "kakeya/direction.hpp"

namespace kakeya {

using json = nlohmann::json;

enum class ConfigKind { Constant, TrigPolynomial, TangentCircle, SampledGrid, Polynomial, Translated };

inline const char* to_string(ConfigKind k) {
  switch (k) {
    case ConfigKind::Constant: return "constant";
    case ConfigKind::TrigPolynomial: return "trig_polynomial";
    case ConfigKind::TangentCircle: return "tangent_circle";
    case ConfigKind::SampledGrid: return "sampled_grid";
    case ConfigKind::Polynomial: return "polynomial";
    case ConfigKind::Translated: return "translated";
  }
  return "?";
}

// cos_k[k] multiplies cos(k*theta), sin_k[k] multiplies sin(k*theta);
// sin_k[0] must be zero.
struct TrigCoeffs {
  std::vector<double> cos_k;
  std::vector<double> sin_k;
};

struct PolyTerm {
  double coeff = 0;
  std::vector<int> exponents;  // one exponent per direction coordinate
};

class ConfigSpec;
using ConfigSpecPtr = std::shared_ptr<const ConfigSpec>;

struct ConstantPayload {
  Eigen::VectorXd point;
};
struct TrigPayload {
  std::vector<TrigCoeffs> coords;  // one entry per output coordinate
};
struct TangentCirclePayload {
  double radius = 1.0;
  bool ccw = true;
};
struct GridPayload {
  std::vector<double> theta;                 // ascending, theta.front()=0, theta.back()=period
  std::vector<Eigen::VectorXd> values;       // same length as theta
};
struct PolyPayload {
  std::vector<std::vector<PolyTerm>> coords;  // one term list per output coordinate
};
struct TranslatedPayload {
  ConfigSpecPtr base;
  Eigen::VectorXd offset;  // evaluates to base(d) - offset
};

class ConfigSpec {
 public:
  int dim = 2;
  bool unoriented = true;
  std::variant<ConstantPayload, TrigPayload, TangentCirclePayload, GridPayload, PolyPayload,
               TranslatedPayload>
      payload;

  ConfigKind kind() const { return static_cast<ConfigKind>(payload.index()); }

  static ConfigSpec constant(Eigen::VectorXd point, bool unoriented = true) {
    ConfigSpec s;
    s.dim = static_cast<int>(point.size());
    s.unoriented = unoriented;
    s.payload = ConstantPayload{std::move(point)};
    return s;
  }

  static ConfigSpec trig(std::vector<TrigCoeffs> coords, bool unoriented) {
    ConfigSpec s;
    s.dim = static_cast<int>(coords.size());
    s.unoriented = unoriented;
    s.payload = TrigPayload{std::move(coords)};
    return s;
  }

  static ConfigSpec polynomial(int dim, std::vector<std::vector<PolyTerm>> coords, bool unoriented) {
    ConfigSpec s;
    s.dim = dim;
    s.unoriented = unoriented;
    s.payload = PolyPayload{std::move(coords)};
    return s;
  }

  // Period of the angular parameter for dim-2 specs.
  double period() const { return unoriented ? kPi : kTwoPi; }
};

// The collection of oriented tangent lines of the radius-C circle: the line
// at angle theta passes through C*(-sin theta, cos theta) with direction
// (cos theta, sin theta). Its union is the complement of the open disk.
inline ConfigSpec tangent_circle_config(double radius, bool ccw = true) {
  if (!(radius > 0)) throw input_error("tangent circle radius must be positive");
  ConfigSpec s;
  s.dim = 2;
  s.unoriented = false;
  s.payload = TangentCirclePayload{radius, ccw};
  return s;
}

namespace detail {

inline double eval_trig_coord(const TrigCoeffs& c, double theta) {
  double acc = 0;
  for (size_t k = 0; k < c.cos_k.size(); ++k)
    if (c.cos_k[k] != 0) acc += c.cos_k[k] * std::cos(static_cast<double>(k) * theta);
  for (size_t k = 1; k < c.sin_k.size(); ++k)
    if (c.sin_k[k] != 0) acc += c.sin_k[k] * std::sin(static_cast<double>(k) * theta);
  return acc;
}

inline double eval_poly_coord(const std::vector<PolyTerm>& terms, const Eigen::VectorXd& u) {
  double acc = 0;
  for (const auto& t : terms) {
    double m = t.coeff;
    for (size_t i = 0; i < t.exponents.size(); ++i) {
      for (int e = 0; e < t.exponents[i]; ++e) m *= u[static_cast<Eigen::Index>(i)];
    }
    acc += m;
  }
  return acc;
}

}  // namespace detail

// Structural evenness: true when sigma(-u) = sigma(u) holds identically for
// the family (not merely within tolerance).
inline bool structurally_even(const ConfigSpec& s) {
  switch (s.kind()) {
    case ConfigKind::Constant:
      return true;
    case ConfigKind::TrigPolynomial: {
      const auto& p = std::get<TrigPayload>(s.payload);
      for (const auto& c : p.coords) {
        for (size_t k = 1; k < c.cos_k.size(); k += 2)
          if (c.cos_k[k] != 0) return false;
        for (size_t k = 1; k < c.sin_k.size(); k += 2)
          if (c.sin_k[k] != 0) return false;
        if (!c.sin_k.empty() && c.sin_k[0] != 0) return false;
      }
      return true;
    }
    case ConfigKind::TangentCircle:
      return false;
    case ConfigKind::SampledGrid:
      return true;  // the grid carries its own identification via the period
    case ConfigKind::Polynomial: {
      const auto& p = std::get<PolyPayload>(s.payload);
      for (const auto& terms : p.coords) {
        for (const auto& t : terms) {
          int total = 0;
          for (int e : t.exponents) total += e;
          if (t.coeff != 0 && total % 2 != 0) return false;
        }
      }
      return true;
    }
    case ConfigKind::Translated:
      return structurally_even(*std::get<TranslatedPayload>(s.payload).base);
  }
  return false;
}

// --- evaluation ---------------------------------------------------------

// Planar evaluation by angle; valid for every kind when dim == 2.
inline Eigen::Vector2d eval_angle(const ConfigSpec& s, double theta) {
  if (s.dim != 2) throw input_error("eval_angle requires a dim-2 spec");
  switch (s.kind()) {
    case ConfigKind::Constant: {
      const auto& p = std::get<ConstantPayload>(s.payload);
      return Eigen::Vector2d(p.point[0], p.point[1]);
    }
    case ConfigKind::TrigPolynomial: {
      const auto& p = std::get<TrigPayload>(s.payload);
      return Eigen::Vector2d(detail::eval_trig_coord(p.coords[0], theta),
                             detail::eval_trig_coord(p.coords[1], theta));
    }
    case ConfigKind::TangentCircle: {
      const auto& p = std::get<TangentCirclePayload>(s.payload);
      double sgn = p.ccw ? 1.0 : -1.0;
      return p.radius * sgn * Eigen::Vector2d(-std::sin(theta), std::cos(theta));
    }
    case ConfigKind::SampledGrid: {
      const auto& p = std::get<GridPayload>(s.payload);
      double period = p.theta.back();
      double t = std::fmod(theta, period);
      if (t < 0) t += period;
      auto it = std::upper_bound(p.theta.begin(), p.theta.end(), t);
      size_t hi = std::min(static_cast<size_t>(it - p.theta.begin()), p.theta.size() - 1);
      size_t lo = hi - 1;
      double w = (t - p.theta[lo]) / (p.theta[hi] - p.theta[lo]);
      Eigen::VectorXd v = (1 - w) * p.values[lo] + w * p.values[hi];
      return Eigen::Vector2d(v[0], v[1]);
    }
    case ConfigKind::Polynomial: {
      const auto& p = std::get<PolyPayload>(s.payload);
      Eigen::VectorXd u(2);
      u << std::cos(theta), std::sin(theta);
      return Eigen::Vector2d(detail::eval_poly_coord(p.coords[0], u),
                             detail::eval_poly_coord(p.coords[1], u));
    }
    case ConfigKind::Translated: {
      const auto& p = std::get<TranslatedPayload>(s.payload);
      return eval_angle(*p.base, theta) - Eigen::Vector2d(p.offset[0], p.offset[1]);
    }
  }
  throw numeric_error("unreachable");
}

// Evaluation at a unit direction vector, any dimension. Angular kinds
// (trig, tangent circle, grid) are only available through dim 2.
inline Eigen::VectorXd eval_unit(const ConfigSpec& s, const Eigen::VectorXd& u) {
  if (static_cast<int>(u.size()) != s.dim) throw input_error("direction/spec dimension mismatch");
  switch (s.kind()) {
    case ConfigKind::Constant:
      return std::get<ConstantPayload>(s.payload).point;
    case ConfigKind::Polynomial: {
      const auto& p = std::get<PolyPayload>(s.payload);
      Eigen::VectorXd out(s.dim);
      for (int i = 0; i < s.dim; ++i) out[i] = detail::eval_poly_coord(p.coords[static_cast<size_t>(i)], u);
      return out;
    }
    case ConfigKind::Translated: {
      const auto& p = std::get<TranslatedPayload>(s.payload);
      return eval_unit(*p.base, u) - p.offset;
    }
    default: {
      if (s.dim == 2) return eval_angle(s, std::atan2(u[1], u[0]));
      throw input_error(std::string("kind '") + to_string(s.kind()) +
                        "' only evaluates by angle in dimension 2");
    }
  }
}

inline Eigen::VectorXd eval_config(const ConfigSpec& s, const UnorientedDirection& d) {
  if (d.dim() != s.dim) throw input_error("direction/spec dimension mismatch");
  if (!s.unoriented) throw input_error("unoriented evaluation of an oriented spec");
  if (!structurally_even(s))
    throw input_error("unoriented evaluation requested but spec violates evenness");
  if (s.dim == 2) {
    Eigen::Vector2d v = eval_angle(s, d.angle());
    return Eigen::VectorXd(v);
  }
  return eval_unit(s, d.vector());
}

inline Eigen::VectorXd eval_config(const ConfigSpec& s, const OrientedDirection& d) {
  if (d.dim() != s.dim) throw input_error("direction/spec dimension mismatch");
  if (s.dim == 2) {
    Eigen::Vector2d v = eval_angle(s, d.angle());
    return Eigen::VectorXd(v);
  }
  return eval_unit(s, d.vector());
}

// --- translation --------------------------------------------------------

// Wraps the spec so that eval(result, d) = eval(spec, d) - x.
inline ConfigSpec translate_config(const ConfigSpec& s, const Eigen::VectorXd& x) {
  if (static_cast<int>(x.size()) != s.dim) throw input_error("offset/spec dimension mismatch");
  ConfigSpec out;
  out.dim = s.dim;
  out.unoriented = s.unoriented;
  out.payload = TranslatedPayload{std::make_shared<ConfigSpec>(s), x};
  return out;
}

// --- validation ---------------------------------------------------------

struct ValidationIssue {
  std::string invariant;
  double defect = 0;
};

struct ValidationReport {
  bool pass = true;
  std::vector<ValidationIssue> issues;

  void fail(std::string what, double defect) {
    pass = false;
    issues.push_back({std::move(what), defect});
  }
};

namespace detail {

inline double antipodal_mismatch(const ConfigSpec& s, int mesh = 512) {
  double worst = 0;
  if (s.dim == 2) {
    for (int k = 0; k < mesh; ++k) {
      double th = kPi * k / mesh;
      worst = std::max(worst, (eval_angle(s, th + kPi) - eval_angle(s, th)).norm());
    }
  } else {
    std::uint64_t seed = 1234;
    for (int k = 0; k < mesh; ++k) {
      Eigen::VectorXd u(s.dim);
      for (int i = 0; i < s.dim; ++i) {
        double a = sample_uniform(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i));
        double b = sample_uniform(seed, static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(i) + 97);
        // Box-Muller; distribution quality is irrelevant here
        u[i] = std::sqrt(-2 * std::log(std::max(a, 1e-300))) * std::cos(kTwoPi * b);
      }
      if (u.norm() < 1e-9) continue;
      u.normalize();
      worst = std::max(worst, (eval_unit(s, u) - eval_unit(s, Eigen::VectorXd(-u))).norm());
    }
  }
  return worst;
}

}  // namespace detail

inline ValidationReport validate_spec(const ConfigSpec& s) {
  ValidationReport rep;
  if (s.dim < 2) rep.fail("dim >= 2", static_cast<double>(2 - s.dim));
  switch (s.kind()) {
    case ConfigKind::Constant: {
      const auto& p = std::get<ConstantPayload>(s.payload);
      if (static_cast<int>(p.point.size()) != s.dim)
        rep.fail("constant point has spec dimension", 0);
      break;
    }
    case ConfigKind::TrigPolynomial: {
      const auto& p = std::get<TrigPayload>(s.payload);
      if (s.dim != 2) rep.fail("trig_polynomial requires dim 2", 0);
      if (static_cast<int>(p.coords.size()) != s.dim)
        rep.fail("one coefficient list per output coordinate", 0);
      for (const auto& c : p.coords) {
        if (!c.sin_k.empty() && c.sin_k[0] != 0) rep.fail("sin[0] must be zero", std::abs(c.sin_k[0]));
        if (static_cast<int>(c.cos_k.size()) > kTrigHarmonicCap + 1 ||
            static_cast<int>(c.sin_k.size()) > kTrigHarmonicCap + 1)
          rep.fail("harmonic degree within cap", static_cast<double>(std::max(c.cos_k.size(), c.sin_k.size())));
      }
      if (s.unoriented && !structurally_even(s))
        rep.fail("unoriented spec must use even harmonics only", detail::antipodal_mismatch(s));
      break;
    }
    case ConfigKind::TangentCircle: {
      const auto& p = std::get<TangentCirclePayload>(s.payload);
      if (s.dim != 2) rep.fail("tangent_circle requires dim 2", 0);
      if (!(p.radius > 0)) rep.fail("radius > 0", -p.radius);
      if (s.unoriented) rep.fail("tangent_circle is an oriented family", detail::antipodal_mismatch(s));
      break;
    }
    case ConfigKind::SampledGrid: {
      const auto& p = std::get<GridPayload>(s.payload);
      if (s.dim != 2) rep.fail("sampled_grid requires dim 2", 0);
      if (p.theta.size() < 3 || p.theta.size() != p.values.size()) {
        rep.fail("grid needs >= 3 matching theta/value samples", 0);
        break;
      }
      for (size_t i = 0; i + 1 < p.theta.size(); ++i)
        if (!(p.theta[i] < p.theta[i + 1])) rep.fail("theta strictly increasing", 0);
      if (std::abs(p.theta.front()) > 1e-12)
        rep.fail("grid starts at theta = 0", std::abs(p.theta.front()));
      if (std::abs(p.theta.back() - s.period()) > 1e-9)
        rep.fail("grid spans the full direction space", std::abs(p.theta.back() - s.period()));
      double closure = (p.values.front() - p.values.back()).norm();
      if (closure > 1e-9) rep.fail("grid is a closed loop", closure);
      for (const auto& v : p.values)
        if (static_cast<int>(v.size()) != s.dim) rep.fail("grid values have spec dimension", 0);
      break;
    }
    case ConfigKind::Polynomial: {
      const auto& p = std::get<PolyPayload>(s.payload);
      if (static_cast<int>(p.coords.size()) != s.dim)
        rep.fail("one term list per output coordinate", 0);
      for (const auto& terms : p.coords)
        for (const auto& t : terms)
          if (static_cast<int>(t.exponents.size()) != s.dim)
            rep.fail("term exponent count equals dim", 0);
      if (s.unoriented && !structurally_even(s))
        rep.fail("unoriented spec must use even-degree terms only", detail::antipodal_mismatch(s));
      break;
    }
    case ConfigKind::Translated: {
      const auto& p = std::get<TranslatedPayload>(s.payload);
      if (!p.base) {
        rep.fail("translated spec has a base", 0);
        break;
      }
      if (static_cast<int>(p.offset.size()) != s.dim) rep.fail("offset has spec dimension", 0);
      if (p.base->dim != s.dim) rep.fail("base has spec dimension", 0);
      auto inner = validate_spec(*p.base);
      for (auto& v : inner.issues) rep.fail("base: " + v.invariant, v.defect);
      break;
    }
  }
  return rep;
}

// --- json ---------------------------------------------------------------

inline json to_json_vec(const Eigen::VectorXd& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

inline Eigen::VectorXd vec_from_json(const json& a) {
  if (!a.is_array()) throw input_error("expected a JSON array of numbers");
  Eigen::VectorXd v(static_cast<Eigen::Index>(a.size()));
  for (size_t i = 0; i < a.size(); ++i) v[static_cast<Eigen::Index>(i)] = a[i].get<double>();
  return v;
}

inline json spec_to_json(const ConfigSpec& s) {
  json j;
  j["kind"] = to_string(s.kind());
  j["dim"] = s.dim;
  j["unoriented"] = s.unoriented;
  switch (s.kind()) {
    case ConfigKind::Constant:
      j["point"] = to_json_vec(std::get<ConstantPayload>(s.payload).point);
      break;
    case ConfigKind::TrigPolynomial: {
      json coords = json::array();
      for (const auto& c : std::get<TrigPayload>(s.payload).coords)
        coords.push_back(json{{"cos", c.cos_k}, {"sin", c.sin_k}});
      j["coords"] = coords;
      break;
    }
    case ConfigKind::TangentCircle: {
      const auto& p = std::get<TangentCirclePayload>(s.payload);
      j["radius"] = p.radius;
      j["ccw"] = p.ccw;
      break;
    }
    case ConfigKind::SampledGrid: {
      const auto& p = std::get<GridPayload>(s.payload);
      j["theta"] = p.theta;
      json vals = json::array();
      for (const auto& v : p.values) vals.push_back(to_json_vec(v));
      j["values"] = vals;
      break;
    }
    case ConfigKind::Polynomial: {
      json coords = json::array();
      for (const auto& terms : std::get<PolyPayload>(s.payload).coords) {
        json ts = json::array();
        for (const auto& t : terms) ts.push_back(json{{"c", t.coeff}, {"e", t.exponents}});
        coords.push_back(ts);
      }
      j["terms"] = coords;
      break;
    }
    case ConfigKind::Translated: {
      const auto& p = std::get<TranslatedPayload>(s.payload);
      j["base"] = spec_to_json(*p.base);
      j["offset"] = to_json_vec(p.offset);
      break;
    }
  }
  return j;
}

inline ConfigSpec spec_from_json(const json& j, int harmonic_cap = kTrigHarmonicCap) {
  if (!j.is_object() || !j.contains("kind")) throw input_error("spec JSON needs a \"kind\"");
  ConfigSpec s;
  s.dim = j.value("dim", 2);
  s.unoriented = j.value("unoriented", true);
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "constant") {
    s.payload = ConstantPayload{vec_from_json(j.at("point"))};
  } else if (kind == "trig_polynomial") {
    TrigPayload p;
    for (const auto& c : j.at("coords")) {
      TrigCoeffs tc;
      tc.cos_k = c.value("cos", std::vector<double>{});
      tc.sin_k = c.value("sin", std::vector<double>{});
      if (static_cast<int>(tc.cos_k.size()) > harmonic_cap + 1 ||
          static_cast<int>(tc.sin_k.size()) > harmonic_cap + 1)
        throw input_error("trig polynomial exceeds the harmonic cap");
      p.coords.push_back(std::move(tc));
    }
    s.payload = std::move(p);
  } else if (kind == "tangent_circle") {
    TangentCirclePayload p;
    p.radius = j.at("radius").get<double>();
    p.ccw = j.value("ccw", true);
    if (!(p.radius > 0)) throw input_error("tangent circle radius must be positive");
    s.payload = p;
  } else if (kind == "sampled_grid") {
    GridPayload p;
    p.theta = j.at("theta").get<std::vector<double>>();
    for (const auto& v : j.at("values")) p.values.push_back(vec_from_json(v));
    s.payload = std::move(p);
  } else if (kind == "polynomial") {
    PolyPayload p;
    for (const auto& terms : j.at("terms")) {
      std::vector<PolyTerm> ts;
      for (const auto& t : terms) ts.push_back({t.at("c").get<double>(), t.at("e").get<std::vector<int>>()});
      p.coords.push_back(std::move(ts));
    }
    s.payload = std::move(p);
  } else if (kind == "translated") {
    TranslatedPayload p;
    p.base = std::make_shared<ConfigSpec>(spec_from_json(j.at("base"), harmonic_cap));
    p.offset = vec_from_json(j.at("offset"));
    s.payload = std::move(p);
  } else {
    throw input_error("unknown spec kind '" + kind + "'");
  }
  return s;
}

}  // namespace kakeya
