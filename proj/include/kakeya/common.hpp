#pragma once

// Shared constants, error types, hashing and seeded sampling helpers.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kakeya {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Tolerance used when deciding whether a coordinate counts as zero during
// canonicalization of antipodal representatives.
inline constexpr double kCanonicalZeroTol = 1e-12;

// Hard cap on trig-polynomial harmonics accepted by the JSON parser.
inline constexpr int kTrigHarmonicCap = 64;

struct input_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown by log_map at the angle-pi branch of SO(3), where the axis sign
// is ambiguous.
struct branch_ambiguity : numeric_error {
  using numeric_error::numeric_error;
};

// FNV-1a, used to fingerprint input documents in run manifests and CSV rows.
inline std::uint64_t fnv1a64(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[static_cast<size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return s;
}

// splitmix64: cheap stateless generator. Sampling by (seed, index) keeps
// Monte Carlo results independent of how work is split across threads.
inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

inline double uniform01(std::uint64_t bits) {
  return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

// u in [0,1) drawn from (seed, index, stream).
inline double sample_uniform(std::uint64_t seed, std::uint64_t index, std::uint64_t stream = 0) {
  return uniform01(splitmix64(seed ^ splitmix64(index + 0x9e3779b97f4a7c15ull * (stream + 1))));
}

inline double wrap_angle_2pi(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  return r;
}

inline double wrap_angle_pi(double a) {
  double r = std::fmod(a, kPi);
  if (r < 0) r += kPi;
  return r;
}

// Signed representative in (-pi, pi].
inline double wrap_to_pi(double a) {
  double r = std::remainder(a, kTwoPi);
  if (r <= -kPi) r += kTwoPi;
  return r;
}

}  // namespace kakeya
