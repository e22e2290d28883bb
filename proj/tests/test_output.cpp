#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>

#include "kakeya/discrete.hpp"
#include "kakeya/manifest.hpp"
#include "kakeya/svg.hpp"

using namespace kakeya;
namespace fs = std::filesystem;

TEST_CASE("document hashes are stable and input-sensitive") {
  REQUIRE(hash_document("abc") == hash_document("abc"));
  REQUIRE(hash_document("abc") != hash_document("abd"));
  REQUIRE(hash_document("").size() == 16);
}

TEST_CASE("atomic_write leaves no temp file behind") {
  fs::path p = fs::temp_directory_path() / "kakeya_atomic_test.json";
  atomic_write(p, "{\"a\":1}\n");
  REQUIRE(fs::exists(p));
  REQUIRE_FALSE(fs::exists(p.string() + ".tmp"));
  std::ifstream in(p);
  std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  REQUIRE(content == "{\"a\":1}\n");
  fs::remove(p);
}

TEST_CASE("manifest JSON carries the run fingerprint") {
  RunManifest m{"cover", "deadbeefdeadbeef", 42, 1e-9};
  m.wall_ms = 3.5;
  m.outputs = {"a.json"};
  auto j = m.to_json();
  REQUIRE(j["subcommand"] == "cover");
  REQUIRE(j["seed"] == 42);
  REQUIRE(j["outputs"][0] == "a.json");
  REQUIRE(j.contains("version"));
}

TEST_CASE("svg plots carry the manifest comment and basic structure") {
  auto spec = tangent_circle_config(1.0);
  std::string svg = plot_config_2d(spec, std::numeric_limits<double>::infinity(), "manifest: {}");
  REQUIRE(svg.find("<svg") == 0);
  REQUIRE(svg.find("<!-- manifest: {} -->") != std::string::npos);
  REQUIRE(svg.find("polyline") != std::string::npos);

  auto g = discrete::build_group("Z2xZ2");
  auto rep = discrete::min_kakeya_exact(g);
  std::string heat = plot_discrete_cover(g, rep.cover.elements, "manifest: {}");
  REQUIRE(heat.find("<rect") != std::string::npos);
  REQUIRE(heat.find("Z2xZ2") != std::string::npos);
}
