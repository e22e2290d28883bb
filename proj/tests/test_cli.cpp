// Integration tests that shell out to the built CLI binary and check the
// exit-code contract plus output determinism.

#include <catch2/catch_amalgamated.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string stdout_text;
};

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out = fs::temp_directory_path() / ("kakeya_cli_out_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(KAKEYA_CLI_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(rc);
  std::ifstream in(out);
  std::stringstream ss;
  ss << in.rdbuf();
  r.stdout_text = ss.str();
  fs::remove(out);
  return r;
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

const char* kTrigSpec =
    R"({"kind":"trig_polynomial","dim":2,"unoriented":true,)"
    R"("coords":[{"cos":[0,0,1],"sin":[0,0,0]},{"cos":[0,0,0],"sin":[0,0,1]}]})";

json strip_wall(json j) {
  if (j.contains("manifest")) j["manifest"].erase("wall_ms");
  return j;
}

}  // namespace

TEST_CASE("cover exits 0 and emits a sound certificate") {
  auto spec = write_temp("cli_trig2.json", kTrigSpec);
  auto r = run_cli("cover --spec " + spec.string() + " --target 0,0");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.stdout_text);
  REQUIRE(j["covered"].get<bool>());
  REQUIRE(j["residual"].get<double>() <= 1e-9);
  REQUIRE(j["manifest"]["subcommand"] == "cover");
}

TEST_CASE("membership on the tangent circle exits 2 inside the disk") {
  auto r0 = run_cli("counterexample --radius 1");
  REQUIRE(r0.exit_code == 0);
  json spec = json::parse(r0.stdout_text)["spec"];
  auto sp = write_temp("cli_tc.json", spec.dump());
  auto inside = run_cli("membership --spec " + sp.string() + " --target 0,0.5");
  REQUIRE(inside.exit_code == 2);
  REQUIRE_FALSE(json::parse(inside.stdout_text)["covered"].get<bool>());
  auto outside = run_cli("membership --spec " + sp.string() + " --target 0,1.5");
  REQUIRE(outside.exit_code == 0);
}

TEST_CASE("input errors exit 1") {
  auto bad = write_temp("cli_bad.json", "{not json");
  REQUIRE(run_cli("cover --spec " + bad.string() + " --target 0,0").exit_code == 1);
  auto spec = write_temp("cli_trig2b.json", kTrigSpec);
  REQUIRE(run_cli("cover --spec " + spec.string() + " --target 0,0 --tol -1").exit_code == 1);
  REQUIRE(run_cli("discrete-min --group NOPE").exit_code == 1);
  REQUIRE(run_cli("bogus-subcommand").exit_code == 1);
  REQUIRE(run_cli("cover --spec /nonexistent.json --target 0,0").exit_code == 1);
}

TEST_CASE("discrete subcommands follow the contract") {
  auto r = run_cli("discrete-min --group Z3xZ3");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.stdout_text);
  REQUIRE(j["min_size"].get<int>() == 7);
  REQUIRE(j["optimal"].get<bool>());

  // verify the emitted cover through discrete-verify
  auto cover = write_temp("cli_cover.json", json{{"elements", j["elements"]}}.dump());
  auto rv = run_cli("discrete-verify --group Z3xZ3 --spec " + cover.string());
  REQUIRE(rv.exit_code == 0);
  REQUIRE(json::parse(rv.stdout_text)["kakeya"].get<bool>());

  auto bad_cover = write_temp("cli_cover_bad.json", R"({"elements":[0,1]})");
  auto rb = run_cli("discrete-verify --group Z3xZ3 --spec " + bad_cover.string());
  REQUIRE(rb.exit_code == 2);

  // budget exhaustion without proof is a negative outcome
  auto rx = run_cli("discrete-min --group Z4xZ4xZ4 --budget-ms 1");
  REQUIRE(rx.exit_code == 2);
}

TEST_CASE("runs are deterministic for a fixed seed") {
  auto spec = write_temp("cli_trig2c.json", kTrigSpec);
  auto a = run_cli("needle-area --spec " + spec.string() + " --elong 1 --samples 2000 --seed 11");
  auto b = run_cli("needle-area --spec " + spec.string() + " --elong 1 --samples 2000 --seed 11");
  REQUIRE(a.exit_code == 0);
  REQUIRE(strip_wall(json::parse(a.stdout_text)) == strip_wall(json::parse(b.stdout_text)));
  auto c = run_cli("needle-area --spec " + spec.string() + " --elong 1 --samples 2000 --seed 12");
  REQUIRE(json::parse(a.stdout_text)["area"] != json::parse(c.stdout_text)["area"]);
}

TEST_CASE("emitted spec JSON re-validates and re-runs identically") {
  auto r0 = run_cli("counterexample --radius 2");
  json spec = json::parse(r0.stdout_text)["spec"];
  auto sp = write_temp("cli_tc2.json", spec.dump());
  auto r1 = run_cli("membership --spec " + sp.string() + " --target 3,0 --elong inf");
  auto r2 = run_cli("membership --spec " + sp.string() + " --target 3,0 --elong inf");
  REQUIRE(r1.exit_code == 0);
  REQUIRE(strip_wall(json::parse(r1.stdout_text)) == strip_wall(json::parse(r2.stdout_text)));
}

TEST_CASE("artifacts land atomically at their paths") {
  auto spec = write_temp("cli_trig2d.json", kTrigSpec);
  fs::path out = fs::temp_directory_path() / "cli_area.json";
  fs::path csv = fs::temp_directory_path() / "cli_area.csv";
  fs::path svg = fs::temp_directory_path() / "cli_area.svg";
  auto r = run_cli("needle-area --spec " + spec.string() + " --elong 2 --samples 500 --seed 3 --out " +
                   out.string() + " --csv " + csv.string() + " --plot " + svg.string());
  REQUIRE(r.exit_code == 0);
  REQUIRE(fs::exists(out));
  REQUIRE(fs::exists(csv));
  REQUIRE(fs::exists(svg));
  json j = json::parse(std::ifstream(out));
  REQUIRE(j["manifest"]["outputs"].size() == 3);
  std::ifstream cin(csv);
  std::string line1, line2;
  std::getline(cin, line1);
  std::getline(cin, line2);
  REQUIRE(line1.rfind("# manifest:", 0) == 0);
  REQUIRE(line2 == "spec_hash,R,estimate,ci,samples,seed");
  std::ifstream sin(svg);
  std::string svg_text((std::istreambuf_iterator<char>(sin)), std::istreambuf_iterator<char>());
  REQUIRE(svg_text.find("<svg") != std::string::npos);
  REQUIRE(svg_text.find("manifest") != std::string::npos);
  fs::remove(out);
  fs::remove(csv);
  fs::remove(svg);
}

TEST_CASE("lie-cover and cylinder-id run through the CLI") {
  json config;
  config["group"] = "heisenberg";
  config["algebra"] = json::parse(R"({"kind":"constant","dim":3,"unoriented":true,"point":[0,0,0]})");
  auto cp = write_temp("cli_heis.json", config.dump());
  auto r = run_cli("lie-cover --spec " + cp.string() + " --target 0,0,5");
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.stdout_text);
  REQUIRE(j["covered"].get<bool>());
  REQUIRE(j["residual"].get<double>() <= 1e-8);

  json cyl;
  cyl["group"] = "cylinder";
  cyl["algebra"] = json::parse(R"({"kind":"constant","dim":2,"unoriented":true,"point":[0,0.5]})");
  auto cyp = write_temp("cli_cyl.json", cyl.dump());
  auto rc = run_cli("cylinder-id --spec " + cyp.string());
  REQUIRE(rc.exit_code == 0);
  json jc = json::parse(rc.stdout_text);
  REQUIRE(jc["found"].get<bool>());
  REQUIRE(jc["kernel_index"].get<int>() == 0);

  json tor;
  tor["group"] = "torus";
  tor["algebra"] = json::parse(R"({"kind":"constant","dim":2,"unoriented":true,"point":[0.3,0.9]})");
  auto tp = write_temp("cli_tor.json", tor.dump());
  auto rt = run_cli("torus-wind --spec " + tp.string());
  REQUIRE(rt.exit_code == 0);
  json jt = json::parse(rt.stdout_text);
  REQUIRE(jt["decision"] == "lift-to-plane");
}

TEST_CASE("degree, quotient-plot and lift subcommands") {
  auto id_spec = write_temp(
      "cli_idmap.json",
      R"({"kind":"polynomial","dim":3,"unoriented":false,"terms":[[{"c":1,"e":[1,0,0]}],[{"c":1,"e":[0,1,0]}],[{"c":1,"e":[0,0,1]}]]})");
  auto r = run_cli("degree --spec " + id_spec.string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.stdout_text);
  REQUIRE(j["degree"].get<int>() == 1);
  REQUIRE_FALSE(j["liftable"].get<bool>());

  auto rq = run_cli("quotient-plot --axis 0,0,1 --base 1,0,0");
  REQUIRE(rq.exit_code == 0);

  // identity map is surjective: lift must report a negative outcome
  auto rl = run_cli("lift --spec " + id_spec.string() + " --target 0,0,-1");
  REQUIRE(rl.exit_code == 2);

  auto cap = write_temp(
      "cli_cap.json",
      R"({"kind":"polynomial","dim":3,"unoriented":false,"terms":[[{"c":0.3,"e":[1,0,0]}],[{"c":0.3,"e":[0,1,0]}],[{"c":1,"e":[0,0,0]}]]})");
  auto rl2 = run_cli("lift --spec " + cap.string() + " --target 0,0,-1");
  REQUIRE(rl2.exit_code == 0);
  REQUIRE(json::parse(rl2.stdout_text)["max_projection_residual"].get<double>() <= 1e-9);
}

TEST_CASE("zero subcommand handles the dimension dispatch") {
  auto spec = write_temp("cli_trig2e.json", kTrigSpec);
  auto r = run_cli("zero --spec " + spec.string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.stdout_text);
  REQUIRE(j["method"] == "bisection-2d");
  REQUIRE(j["theta"].get<double>() == Catch::Approx(0.0).margin(1e-9));

  auto s4 = write_temp("cli_c4.json",
                       R"({"kind":"constant","dim":4,"unoriented":true,"point":[0,0,0,0]})");
  auto r4 = run_cli("zero --spec " + s4.string() + " --seed 5");
  REQUIRE(r4.exit_code == 0);
  REQUIRE(json::parse(r4.stdout_text)["method"] == "heuristic-highdim");
}
