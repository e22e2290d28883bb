#pragma once

// Icosphere triangulations of S^2 with consistent outward (counterclockwise
// seen from outside) face orientation.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <cmath>
#include <map>
#include <utility>
#include <vector>

namespace kakeya {

struct IcoMesh {
  std::vector<Eigen::Vector3d> verts;       // unit vectors
  std::vector<std::array<int, 3>> faces;    // CCW from outside
  int depth = 0;

  static IcoMesh icosahedron() {
    IcoMesh m;
    const double phi = (1.0 + std::sqrt(5.0)) / 2.0;
    const double raw[12][3] = {
        {-1, phi, 0}, {1, phi, 0},  {-1, -phi, 0}, {1, -phi, 0},
        {0, -1, phi}, {0, 1, phi},  {0, -1, -phi}, {0, 1, -phi},
        {phi, 0, -1}, {phi, 0, 1},  {-phi, 0, -1}, {-phi, 0, 1}};
    for (auto& v : raw) m.verts.push_back(Eigen::Vector3d(v[0], v[1], v[2]).normalized());
    const int f[20][3] = {{0, 11, 5},  {0, 5, 1},   {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
                          {1, 5, 9},   {5, 11, 4},  {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
                          {3, 9, 4},   {3, 4, 2},   {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
                          {4, 9, 5},   {2, 4, 11},  {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
    for (auto& t : f) {
      std::array<int, 3> face = {t[0], t[1], t[2]};
      // enforce outward orientation
      Eigen::Vector3d a = m.verts[static_cast<size_t>(face[0])];
      Eigen::Vector3d b = m.verts[static_cast<size_t>(face[1])];
      Eigen::Vector3d c = m.verts[static_cast<size_t>(face[2])];
      if ((b - a).cross(c - a).dot(a + b + c) < 0) std::swap(face[1], face[2]);
      m.faces.push_back(face);
    }
    return m;
  }

  static IcoMesh subdivided(int depth) {
    IcoMesh m = icosahedron();
    for (int d = 0; d < depth; ++d) m = m.subdivide_once();
    m.depth = depth;
    return m;
  }

  IcoMesh subdivide_once() const {
    IcoMesh out;
    out.verts = verts;
    std::map<std::pair<int, int>, int> mid;
    auto midpoint = [&](int a, int b) {
      auto key = std::minmax(a, b);
      auto it = mid.find(key);
      if (it != mid.end()) return it->second;
      Eigen::Vector3d p = (verts[static_cast<size_t>(a)] + verts[static_cast<size_t>(b)]).normalized();
      out.verts.push_back(p);
      int idx = static_cast<int>(out.verts.size()) - 1;
      mid.emplace(key, idx);
      return idx;
    };
    for (const auto& f : faces) {
      int ab = midpoint(f[0], f[1]);
      int bc = midpoint(f[1], f[2]);
      int ca = midpoint(f[2], f[0]);
      out.faces.push_back({f[0], ab, ca});
      out.faces.push_back({f[1], bc, ab});
      out.faces.push_back({f[2], ca, bc});
      out.faces.push_back({ab, bc, ca});
    }
    out.depth = depth + 1;
    return out;
  }
};

// Subdivide a single spherical triangle into four children (midpoints pushed
// to the sphere), preserving orientation.
inline std::array<std::array<Eigen::Vector3d, 3>, 4> split_triangle(
    const std::array<Eigen::Vector3d, 3>& t) {
  Eigen::Vector3d ab = (t[0] + t[1]).normalized();
  Eigen::Vector3d bc = (t[1] + t[2]).normalized();
  Eigen::Vector3d ca = (t[2] + t[0]).normalized();
  return {{{t[0], ab, ca}, {t[1], bc, ab}, {t[2], ca, bc}, {ab, bc, ca}}};
}

}  // namespace kakeya
