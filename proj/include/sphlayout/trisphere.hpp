#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sphlayout/hull.hpp"
#include "sphlayout/spherical_geometry.hpp"

namespace sphlayout {

inline constexpr int kMaxIcosphereLevel = 7;

/// Subdivided icosahedron. Face f of level L + 1 is child f % 4 of face f / 4
/// of level L, so face order follows the subdivision tree.
struct IcoSphere {
  int level = 0;
  std::vector<UnitVec> vertices;  // shared, midpoints renormalized
  std::vector<Triangle> faces;    // outward oriented

  std::size_t face_count() const noexcept { return faces.size(); }
  SphericalTriangle triangle(std::size_t f) const;
  std::vector<SphericalTriangle> triangles() const;
};

/// 20 * 4^level faces. Throws LevelTooLarge above kMaxIcosphereLevel and
/// InvalidArgument below 0.
IcoSphere build_icosphere(int level);

/// 20 * 4^level.
std::size_t icosphere_face_count(int level);

/// The four children of `t` in subdivision order: the three corner
/// triangles (at a, b, c), then the middle one.
std::array<SphericalTriangle, 4> subdivide(const SphericalTriangle& t);

/// Subdivides `t` k times, with k the least value such that 4^k >= count,
/// and returns the 4^k pieces in subdivision order.
std::vector<SphericalTriangle> subdivide_until(const SphericalTriangle& t, std::size_t count);

/// Unused share of the faces, (faces - nodes) / faces.
struct WasteStats {
  int level = 0;
  std::size_t faces = 0;
  std::size_t nodes = 0;

  std::size_t unused() const noexcept { return faces - nodes; }
  double fraction() const noexcept;

  /// Exact decimal expansion of 100 * unused / faces, e.g. "70.703125". The
  /// face count is 5 * 4^(level + 1), so the expansion always terminates.
  std::string percent_exact() const;
};

struct TriSphereLayout {
  IcoSphere sphere;
  std::vector<UnitVec> positions;  // centroids of faces 0 .. n-1
  WasteStats waste;
};

/// Least level with 20 * 4^level >= n.
int trisphere_level(std::size_t n);

/// Places n nodes at the centroids of the first n faces of the smallest
/// icosphere that fits them. Throws InvalidArgument for n = 0 and
/// LevelTooLarge when n exceeds the largest sphere.
TriSphereLayout trisphere_layout(std::size_t n);

}  // namespace sphlayout
