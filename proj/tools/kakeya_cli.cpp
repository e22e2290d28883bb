// kakeya-lab command line: certifiers, solvers and estimators with JSON,
// CSV and SVG artifacts.
//
// Exit codes: 0 success / covered / optimal; 2 valid-but-negative outcome
// (uncovered at resolution, heuristic not-found, budget exhausted,
// low-confidence); 1 input errors.

#include <CLI11.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "kakeya/common.hpp"
#include "kakeya/config.hpp"
#include "kakeya/discrete.hpp"
#include "kakeya/euclid.hpp"
#include "kakeya/homog.hpp"
#include "kakeya/lie_certify.hpp"
#include "kakeya/liegroups.hpp"
#include "kakeya/manifest.hpp"
#include "kakeya/svg.hpp"
#include "kakeya/topo_zero.hpp"

using namespace kakeya;
using json = nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitNegative = 2;

struct CommonOpts {
  std::string spec_path;
  std::string group_spec;
  std::string target;
  double tol = std::nan("");  // NaN = per-subcommand default
  std::uint64_t seed = 0;
  long samples = 100000;
  long budget_ms = 60000;
  std::string out_path;
  std::string csv_path;
  std::string plot_path;
  bool require_optimal = false;
  std::string elong = "inf";
  double radius = 1.0;
  int depth = 4;
  std::string axis;
  std::string base;
  std::string box;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot read file " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(const std::string& text, const std::string& what) {
  json j = json::parse(text, nullptr, false);
  if (j.is_discarded()) throw input_error("malformed JSON in " + what);
  return j;
}

Eigen::VectorXd parse_vector(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    vals.push_back(std::stod(item));
  }
  if (vals.empty()) throw input_error("empty coordinate list '" + s + "'");
  Eigen::VectorXd v(static_cast<Eigen::Index>(vals.size()));
  for (size_t i = 0; i < vals.size(); ++i) v[static_cast<Eigen::Index>(i)] = vals[i];
  return v;
}

double parse_elong(const std::string& s) {
  if (s == "inf" || s == "Inf" || s == "INF") return std::numeric_limits<double>::infinity();
  double r = std::stod(s);
  if (!(r > 0)) throw input_error("elongation must be positive or inf");
  return r;
}

GroupElement parse_group_target(Group tag, const std::string& s, int euclidean_dim) {
  if (!s.empty() && s.front() == '{') return element_from_json(parse_json(s, "--target"));
  Eigen::VectorXd v = parse_vector(s);
  switch (tag) {
    case Group::Euclidean:
      if (v.size() != euclidean_dim) throw input_error("target dimension mismatch");
      return GroupElement::euclidean(v);
    case Group::Heisenberg:
      if (v.size() != 3) throw input_error("heisenberg target needs x,y,z");
      return GroupElement::heisenberg(v[0], v[1], v[2]);
    case Group::Affine:
      if (v.size() != 2) throw input_error("affine target needs a,b");
      return GroupElement::affine(v[0], v[1]);
    case Group::Cylinder:
      if (v.size() != 2) throw input_error("cylinder target needs re,im");
      return GroupElement::cylinder({v[0], v[1]});
    case Group::Torus:
      if (v.size() != 2) throw input_error("torus target needs two angles");
      return GroupElement::torus(v[0], v[1]);
    case Group::Rotation:
      throw input_error("rotation targets must be given as JSON");
  }
  throw input_error("bad group tag");
}

// Emit the result document: --out file (atomic) or stdout.
void emit(const CommonOpts& opts, RunManifest& manifest, json result) {
  if (!opts.out_path.empty()) manifest.outputs.push_back(opts.out_path);
  if (!opts.csv_path.empty()) manifest.outputs.push_back(opts.csv_path);
  if (!opts.plot_path.empty()) manifest.outputs.push_back(opts.plot_path);
  result["manifest"] = manifest.to_json();
  std::string doc = result.dump(2) + "\n";
  if (opts.out_path.empty())
    std::cout << doc;
  else
    atomic_write(opts.out_path, doc);
}

void emit_csv(const CommonOpts& opts, const RunManifest& manifest, const std::string& body) {
  if (opts.csv_path.empty()) return;
  std::string doc = "# manifest: " + manifest.to_json().dump() + "\n" + body;
  atomic_write(opts.csv_path, doc);
}

void emit_plot(const CommonOpts& opts, const std::string& svg) {
  if (opts.plot_path.empty()) return;
  atomic_write(opts.plot_path, svg);
}

json zero_cert_json(const ZeroCertificate& z) {
  json j;
  j["found"] = z.found;
  j["dim"] = z.dim;
  j["oriented"] = z.oriented;
  j["direction"] = to_json_vec(z.direction);
  if (z.dim == 2) j["theta"] = z.theta;
  j["residual"] = z.residual;
  j["iterations"] = z.iterations;
  j["method"] = z.method;
  if (!z.note.empty()) j["note"] = z.note;
  if (z.index_sum) j["index_sum"] = *z.index_sum;
  return j;
}

json cover_cert_json(const CoverCertificate& c) {
  json j;
  j["covered"] = c.covered;
  j["target"] = to_json_vec(c.target);
  j["direction"] = to_json_vec(c.direction);
  if (c.target.size() == 2) j["theta"] = c.theta;
  j["t"] = c.t;
  j["residual"] = c.residual;
  j["method"] = c.method;
  if (!c.note.empty()) j["note"] = c.note;
  if (c.index_sum) j["index_sum"] = *c.index_sum;
  return j;
}

// --- subcommand bodies ------------------------------------------------------

int run_zero(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  ConfigSpec spec = spec_from_json(parse_json(text, opts.spec_path));
  double tol = opts.tol > 0 ? opts.tol : (spec.dim == 2 ? 1e-9 : 1e-6);
  ZeroCertificate z;
  if (spec.dim == 2 && spec.unoriented) {
    z = find_zero_unoriented_2d(spec, tol);
  } else if (spec.dim == 3 && !spec.unoriented) {
    z = find_zero_oriented_s2(spec, tol);
  } else if (spec.dim == 3) {
    z = find_zero_unoriented_3d(spec, tol);
  } else if (spec.dim >= 4) {
    z = find_zero_highdim(spec, tol, static_cast<int>(std::max(8l, opts.samples / 1000)), opts.seed);
  } else {
    throw input_error("no guaranteed zero finder for oriented planar specs; use membership");
  }
  RunManifest manifest{"zero", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  CommonOpts o = opts;
  emit(o, manifest, zero_cert_json(z));
  return z.found ? kExitOk : kExitNegative;
}

int run_cover(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  ConfigSpec spec = spec_from_json(parse_json(text, opts.spec_path));
  Eigen::VectorXd x = parse_vector(opts.target);
  double tol = opts.tol > 0 ? opts.tol : (spec.dim == 2 ? 1e-9 : 1e-6);
  CoverCertificate c = spec.unoriented ? certify_cover_unoriented(spec, x, tol, opts.seed)
                                       : certify_cover_oriented(spec, x, tol, opts.seed);
  RunManifest manifest{"cover", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  if (!opts.plot_path.empty() && spec.dim == 2) {
    Eigen::Vector2d t2(x[0], x[1]);
    emit_plot(opts, plot_config_2d(spec, std::numeric_limits<double>::infinity(),
                                   "manifest: " + manifest.to_json().dump(), &t2,
                                   c.covered ? &c.theta : nullptr));
  }
  CommonOpts o = opts;
  emit(o, manifest, cover_cert_json(c));
  return c.covered ? kExitOk : kExitNegative;
}

int run_lie_cover(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  GroupConfig config = group_config_from_json(parse_json(text, opts.spec_path));
  GroupElement target = parse_group_target(config.group, opts.target, config.euclidean_dim);
  double tol = opts.tol > 0 ? opts.tol : 1e-8;
  auto cert = certify_cover_group(config, target, tol);
  RunManifest manifest{"lie-cover", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  json j = certificate_to_json(cert);
  CommonOpts o = opts;
  emit(o, manifest, j);
  return cert.covered ? kExitOk : kExitNegative;
}

int run_cylinder_id(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  GroupConfig config = group_config_from_json(parse_json(text, opts.spec_path));
  double tol = opts.tol > 0 ? opts.tol : 1e-9;
  auto res = certify_identity_cylinder(config, 2048, tol);
  RunManifest manifest{"cylinder-id", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  json j;
  j["found"] = res.found;
  j["kernel_index"] = res.lift.kernel_index;
  j["line_angle"] = res.line_angle;
  j["line_time"] = res.line_time;
  j["plane_residual"] = res.plane_residual;
  j["sup_p"] = res.lift.sup_p;
  if (res.found) j["certificate"] = certificate_to_json(res.certificate);
  if (!res.note.empty()) j["note"] = res.note;
  CommonOpts o = opts;
  emit(o, manifest, j);
  return res.found ? kExitOk : kExitNegative;
}

int run_torus_wind(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  GroupConfig config = group_config_from_json(parse_json(text, opts.spec_path));
  double tol = opts.tol > 0 ? opts.tol : 1e-9;
  auto wind = torus_winding(config);
  auto id = certify_identity_torus(config, 2048, tol);
  RunManifest manifest{"torus-wind", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  json j;
  j["winding"] = {wind.torus_winding[0], wind.torus_winding[1]};
  j["decision"] = to_string(wind.decision);
  j["identity_found"] = id.found;
  if (id.found) j["identity_certificate"] = certificate_to_json(id.certificate);
  CommonOpts o = opts;
  emit(o, manifest, j);
  return id.found ? kExitOk : kExitNegative;
}

int run_counterexample(const CommonOpts& opts) {
  Stopwatch watch;
  ConfigSpec spec = tangent_circle_config(opts.radius, true);
  json spec_json = spec_to_json(spec);
  std::string canonical = spec_json.dump();
  double tol = opts.tol > 0 ? opts.tol : 1e-9;
  RunManifest manifest{"counterexample", hash_document(canonical), opts.seed, tol};

  json j;
  j["spec"] = spec_json;
  j["min_line_origin_distance"] = line_origin_distance_infimum(spec);
  int code = kExitOk;
  if (!opts.target.empty()) {
    Eigen::VectorXd x = parse_vector(opts.target);
    if (x.size() != 2) throw input_error("planar target expected");
    auto mem = membership_test_2d(spec, Eigen::Vector2d(x[0], x[1]),
                                  std::numeric_limits<double>::infinity(), tol);
    j["covered"] = mem.covered;
    code = mem.covered ? kExitOk : kExitNegative;
  }
  manifest.wall_ms = watch.ms();
  if (!opts.plot_path.empty())
    emit_plot(opts, plot_config_2d(spec, std::numeric_limits<double>::infinity(),
                                   "manifest: " + manifest.to_json().dump()));
  CommonOpts o = opts;
  emit(o, manifest, j);
  return code;
}

int run_membership(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  ConfigSpec spec = spec_from_json(parse_json(text, opts.spec_path));
  Eigen::VectorXd x = parse_vector(opts.target);
  if (spec.dim != 2 || x.size() != 2) throw input_error("membership is planar");
  double tol = opts.tol > 0 ? opts.tol : 1e-9;
  double R = parse_elong(opts.elong);
  auto mem = membership_test_2d(spec, Eigen::Vector2d(x[0], x[1]), R, tol);
  RunManifest manifest{"membership", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  json j;
  j["covered"] = mem.covered;
  j["grid_cells"] = mem.grid_cells;
  j["R"] = std::isinf(R) ? json("inf") : json(R);
  json ws = json::array();
  for (const auto& w : mem.witnesses)
    ws.push_back(json{{"theta", w.theta}, {"t", w.t}, {"residual", w.residual}});
  j["witnesses"] = ws;
  if (!opts.plot_path.empty()) {
    Eigen::Vector2d t2(x[0], x[1]);
    const double* wth = mem.witnesses.empty() ? nullptr : &mem.witnesses.front().theta;
    emit_plot(opts, plot_config_2d(spec, R, "manifest: " + manifest.to_json().dump(), &t2, wth));
  }
  CommonOpts o = opts;
  emit(o, manifest, j);
  return mem.covered ? kExitOk : kExitNegative;
}

int run_elongation(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  ConfigSpec spec = spec_from_json(parse_json(text, opts.spec_path));
  Eigen::VectorXd x = parse_vector(opts.target);
  if (spec.dim != 2 || x.size() != 2) throw input_error("elongation is planar");
  double tol = opts.tol > 0 ? opts.tol : 1e-9;
  auto rep = elongation_required(spec, Eigen::Vector2d(x[0], x[1]), tol);
  RunManifest manifest{"elongation", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  json j;
  j["r_min"] = rep.r_min;
  j["target"] = to_json_vec(x);
  CommonOpts o = opts;
  emit(o, manifest, j);
  return kExitOk;
}

int run_needle_area(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  ConfigSpec spec = spec_from_json(parse_json(text, opts.spec_path));
  double tol = opts.tol > 0 ? opts.tol : 1e-9;
  double R = parse_elong(opts.elong);
  std::optional<Box2> box;
  if (!opts.box.empty()) {
    Eigen::VectorXd b = parse_vector(opts.box);
    if (b.size() != 4) throw input_error("--box needs x0,y0,x1,y1");
    box = Box2{Eigen::Vector2d(b[0], b[1]), Eigen::Vector2d(b[2], b[3])};
  }
  auto rep = needle_area_2d(spec, R, opts.samples, opts.seed, tol, box);
  RunManifest manifest{"needle-area", hash_document(text), opts.seed, tol};
  manifest.wall_ms = watch.ms();
  json j;
  j["area"] = rep.area;
  j["ci95"] = rep.ci95;
  j["samples"] = rep.samples;
  j["seed"] = rep.seed;
  j["R"] = std::isinf(R) ? json("inf") : json(R);
  j["box"] = {rep.box_lo.x(), rep.box_lo.y(), rep.box_hi.x(), rep.box_hi.y()};
  std::string row = std::isinf(R) ? "inf" : std::to_string(R);
  std::string csv = "spec_hash,R,estimate,ci,samples,seed\n" + manifest.spec_hash + "," + row +
                    "," + std::to_string(rep.area) + "," + std::to_string(rep.ci95) + "," +
                    std::to_string(rep.samples) + "," + std::to_string(rep.seed) + "\n";
  emit_csv(opts, manifest, csv);
  if (!opts.plot_path.empty())
    emit_plot(opts, plot_config_2d(spec, R, "manifest: " + manifest.to_json().dump()));
  CommonOpts o = opts;
  emit(o, manifest, j);
  return kExitOk;
}

int run_discrete_min(const CommonOpts& opts) {
  Stopwatch watch;
  if (opts.group_spec.empty()) throw input_error("--group is required");
  auto g = discrete::build_group(opts.group_spec);
  auto rep = discrete::min_kakeya_exact(g, opts.budget_ms);
  RunManifest manifest{"discrete-min", hash_document(opts.group_spec), opts.seed, 0};
  manifest.wall_ms = watch.ms();
  json j = discrete::min_report_to_json(rep);
  if (!opts.plot_path.empty())
    emit_plot(opts, plot_discrete_cover(g, rep.cover.elements,
                                        "manifest: " + manifest.to_json().dump()));
  CommonOpts o = opts;
  emit(o, manifest, j);
  return rep.optimal ? kExitOk : kExitNegative;
}

int run_discrete_verify(const CommonOpts& opts) {
  Stopwatch watch;
  if (opts.group_spec.empty()) throw input_error("--group is required");
  auto g = discrete::build_group(opts.group_spec);
  std::string text = read_file(opts.spec_path);
  auto E = discrete::element_set_from_json(g, parse_json(text, opts.spec_path));
  auto subs = discrete::enumerate_cyclic_subgroups(g);
  auto res = discrete::verify_kakeya(g, E, &subs);
  RunManifest manifest{"discrete-verify", hash_document(text), opts.seed, 0};
  manifest.wall_ms = watch.ms();
  json j;
  j["kakeya"] = res.kakeya;
  json ws = json::array();
  for (const auto& w : res.witnesses) {
    json e;
    e["subgroup_order"] = subs[static_cast<size_t>(w.subgroup)].order;
    e["subgroup_generator"] = subs[static_cast<size_t>(w.subgroup)].generator;
    if (w.coset_rep >= 0)
      e["coset_rep"] = w.coset_rep;
    else
      e["violated"] = true;
    ws.push_back(e);
  }
  j["witnesses"] = ws;
  if (!opts.plot_path.empty())
    emit_plot(opts, plot_discrete_cover(g, E, "manifest: " + manifest.to_json().dump()));
  CommonOpts o = opts;
  emit(o, manifest, j);
  return res.kakeya ? kExitOk : kExitNegative;
}

int run_ratio_table(const CommonOpts& opts) {
  Stopwatch watch;
  std::string groups = opts.group_spec.empty()
                           ? "Z2,Z3,Z4,Z2xZ2,Z5,Z6,S3,Z7,Z8,Z2xZ2xZ2,Z4xZ2,D4,Q8,Z9,Z3xZ3,D5"
                           : opts.group_spec;
  std::vector<discrete::RatioRow> rows;
  std::stringstream ss(groups);
  std::string name;
  bool all_optimal = true;
  while (std::getline(ss, name, ',')) {
    if (name.empty()) continue;
    auto g = discrete::build_group(name);
    auto row = discrete::ratio_row(g, opts.budget_ms);
    all_optimal = all_optimal && row.optimal;
    rows.push_back(row);
  }
  RunManifest manifest{"ratio-table", hash_document(groups), opts.seed, 0};
  manifest.wall_ms = watch.ms();
  std::string csv = discrete::ratio_table_csv(rows);
  emit_csv(opts, manifest, csv);
  json j;
  json arr = json::array();
  for (const auto& r : rows)
    arr.push_back(json{{"group", r.group},
                       {"order", r.order},
                       {"exponent", r.exponent},
                       {"generators", r.generators},
                       {"min_e", r.min_size},
                       {"c", r.ratio},
                       {"optimal", r.optimal}});
  j["rows"] = arr;
  CommonOpts o = opts;
  emit(o, manifest, j);
  return all_optimal ? kExitOk : kExitNegative;
}

int run_degree(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  SphereMap map(spec_from_json(parse_json(text, opts.spec_path)));
  auto lift = liftability_s2(map, opts.depth);
  RunManifest manifest{"degree", hash_document(text), opts.seed, 0};
  manifest.wall_ms = watch.ms();
  json j;
  j["degree"] = lift.degree.degree;
  j["pre_round"] = lift.degree.pre_round;
  j["depth"] = lift.degree.depth;
  j["min_magnitude"] = lift.degree.min_magnitude;
  j["status"] = lift.degree.status;
  j["liftable"] = lift.liftable;
  j["undecided"] = lift.undecided;
  CommonOpts o = opts;
  emit(o, manifest, j);
  return lift.undecided ? kExitNegative : kExitOk;
}

int run_quotient_plot(const CommonOpts& opts) {
  Stopwatch watch;
  if (opts.axis.empty() || opts.base.empty()) throw input_error("--axis and --base are required");
  Eigen::VectorXd a = parse_vector(opts.axis), b = parse_vector(opts.base);
  if (a.size() != 3 || b.size() != 3) throw input_error("axis and base are points in R^3");
  Eigen::Vector3d axis(a[0], a[1], a[2]), base(b[0], b[1], b[2]);
  axis.normalize();
  base.normalize();
  auto curve = quotient_curve(axis, base);
  RunManifest manifest{"quotient-plot", hash_document(opts.axis + ";" + opts.base), opts.seed, 0};
  manifest.wall_ms = watch.ms();
  emit_csv(opts, manifest, curve_to_csv(curve));
  if (!opts.plot_path.empty()) {
    SvgCanvas svg(-1.1, -1.1, 1.1, 1.1);
    svg.comment("manifest: " + manifest.to_json().dump());
    // orthographic projection onto the xy-plane
    std::vector<Eigen::Vector2d> pts;
    for (const auto& p : curve.samples(512)) pts.emplace_back(p.x(), p.y());
    svg.circle(0, 0, 2, "#000000");
    svg.polyline(pts, "#08519c", 2.0);
    emit_plot(opts, svg.finish());
  }
  json j;
  j["axis"] = {axis.x(), axis.y(), axis.z()};
  j["base"] = {base.x(), base.y(), base.z()};
  j["constant"] = curve.constant;
  CommonOpts o = opts;
  emit(o, manifest, j);
  return kExitOk;
}

int run_lift(const CommonOpts& opts) {
  Stopwatch watch;
  std::string text = read_file(opts.spec_path);
  SphereMap map(spec_from_json(parse_json(text, opts.spec_path)));
  Eigen::VectorXd o3 = parse_vector(opts.target);
  if (o3.size() != 3) throw input_error("omitted point needs three coordinates");
  Eigen::Vector3d omitted(o3[0], o3[1], o3[2]);
  omitted.normalize();
  RunManifest manifest{"lift", hash_document(text), opts.seed, 0};
  json j;
  int code = kExitOk;
  try {
    auto lift = lift_omitting_point(map, omitted, opts.depth);
    IcoMesh mesh = IcoMesh::subdivided(opts.depth);
    double worst = 0;
    for (const auto& x : mesh.verts)
      worst = std::max(worst, (lift.project(x) - map(x)).norm());
    j["lifted"] = true;
    j["max_projection_residual"] = worst;
    j["omitted"] = {omitted.x(), omitted.y(), omitted.z()};
    auto deg = map_degree_s2([&](const Eigen::Vector3d& x) { return lift.project(x); }, opts.depth);
    j["composed_degree"] = deg.degree;
    json samples = json::array();
    for (const Eigen::Vector3d& x :
         {Eigen::Vector3d(1, 0, 0), Eigen::Vector3d(0, 1, 0), Eigen::Vector3d(0, 0, 1)}) {
      samples.push_back(element_to_json(GroupElement::rotation(lift.at(x))));
    }
    j["sample_rotations"] = samples;
  } catch (const input_error& e) {
    j["lifted"] = false;
    j["note"] = e.what();
    code = kExitNegative;
  }
  manifest.wall_ms = watch.ms();
  CommonOpts o = opts;
  emit(o, manifest, j);
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kakeya-lab: coverage certificates for continuous line configurations and exact "
               "discrete Kakeya minima"};
  app.require_subcommand(1);

  CommonOpts opts;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--spec", opts.spec_path, "input spec JSON file");
    sub->add_option("--group", opts.group_spec, "group spec, e.g. Z3xZ3, D4, UT3_2, Q8");
    sub->add_option("--target", opts.target, "target point / element");
    sub->add_option("--tol", opts.tol, "tolerance (positive)");
    sub->add_option("--seed", opts.seed, "RNG seed");
    sub->add_option("--samples", opts.samples, "sample count");
    sub->add_option("--budget-ms", opts.budget_ms, "search budget in milliseconds");
    sub->add_option("--out", opts.out_path, "JSON output path (stdout when omitted)");
    sub->add_option("--csv", opts.csv_path, "CSV output path");
    sub->add_option("--plot", opts.plot_path, "SVG output path");
    sub->add_flag("--require-optimal", opts.require_optimal,
                  "treat budget exhaustion without proof as a failure");
    sub->add_option("--elong", opts.elong, "needle elongation R or 'inf'");
    sub->add_option("--radius", opts.radius, "tangent circle radius");
    sub->add_option("--depth", opts.depth, "mesh subdivision depth");
    sub->add_option("--axis", opts.axis, "rotation axis x,y,z");
    sub->add_option("--base", opts.base, "curve base point x,y,z");
    sub->add_option("--box", opts.box, "clip box x0,y0,x1,y1");
  };

  struct Sub {
    const char* name;
    const char* help;
    int (*fn)(const CommonOpts&);
  };
  const Sub subs[] = {
      {"zero", "locate a zero of the perpendicular section", run_zero},
      {"cover", "certify that a target lies in the configuration's line union", run_cover},
      {"lie-cover", "certify coverage in a Lie group", run_lie_cover},
      {"cylinder-id", "certify identity coverage in the cylinder group", run_cylinder_id},
      {"torus-wind", "winding pair and lifting decision for torus configurations", run_torus_wind},
      {"counterexample", "tangent-circle family whose union misses the open disk", run_counterexample},
      {"membership", "planar membership test with optional needle length", run_membership},
      {"elongation", "minimal needle elongation reaching a target", run_elongation},
      {"needle-area", "Monte Carlo area of the elongated needle set", run_needle_area},
      {"discrete-min", "exact minimal Kakeya set in a finite group", run_discrete_min},
      {"discrete-verify", "verify a Kakeya set candidate in a finite group", run_discrete_verify},
      {"ratio-table", "CSV table of minimal densities across groups", run_ratio_table},
      {"degree", "degree and liftability of a sphere-valued configuration", run_degree},
      {"quotient-plot", "great-circle quotient curve as CSV/SVG", run_quotient_plot},
      {"lift", "explicit rotation-valued lift when a point is omitted", run_lift},
  };

  std::map<const CLI::App*, const Sub*> dispatch;
  for (const auto& s : subs) {
    CLI::App* sub = app.add_subcommand(s.name, s.help);
    add_common(sub);
    dispatch[sub] = &s;
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (!std::isnan(opts.tol) && !(opts.tol > 0)) throw input_error("tolerance must be positive");
    for (const auto& [sub, info] : dispatch)
      if (sub->parsed()) return info->fn(opts);
    throw input_error("no subcommand given");
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
}
