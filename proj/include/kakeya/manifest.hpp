#pragma once

// Run manifests fingerprint every CLI invocation; each output file either
// embeds the manifest (JSON, SVG) or references it through the spec hash
// (CSV rows). Writes go through a temp-file rename so readers never see a
// partial file.

#include <chrono>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "kakeya/common.hpp"

#ifndef KAKEYA_LAB_VERSION
#define KAKEYA_LAB_VERSION "0.0.0-dev"
#endif

namespace kakeya {

struct RunManifest {
  std::string subcommand;
  std::string spec_hash;  // fnv1a64 of the canonical input document
  std::uint64_t seed = 0;
  double tol = 0;
  std::string version = KAKEYA_LAB_VERSION;
  double wall_ms = 0;
  std::vector<std::string> outputs;

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["subcommand"] = subcommand;
    j["spec_hash"] = spec_hash;
    j["seed"] = seed;
    j["tol"] = tol;
    j["version"] = version;
    j["wall_ms"] = wall_ms;
    j["outputs"] = outputs;
    return j;
  }
};

inline std::string hash_document(const std::string& text) { return hex64(fnv1a64(text)); }

inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
  namespace fs = std::filesystem;
  fs::path dir = path.parent_path();
  if (!dir.empty()) fs::create_directories(dir);
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw numeric_error("cannot open output file " + tmp.string());
    out << content;
  }
  fs::rename(tmp, path);
}

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

}  // namespace kakeya
