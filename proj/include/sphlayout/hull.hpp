#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "sphlayout/spherical_geometry.hpp"

namespace sphlayout {

using Triangle = std::array<int, 3>;

struct HullEdge {
  int a = -1;  // a < b
  int b = -1;
  int t0 = -1;  // t0 < t1
  int t1 = -1;
};

/// Triangulated convex hull of points on the unit sphere; its faces are the
/// spherical Delaunay triangulation of the sites.
///
/// Triangles are outward oriented. adjacency[t][k] is the triangle across the
/// edge (triangles[t][k], triangles[t][(k + 1) % 3]).
class HullMesh {
 public:
  HullMesh() = default;

  /// Builds adjacency and the edge table from a closed, consistently oriented
  /// triangle list. Throws DegenerateInput if the surface is not a closed
  /// 2-manifold.
  static HullMesh from_triangles(std::vector<UnitVec> sites, std::vector<Triangle> triangles);

  const std::vector<UnitVec>& sites() const noexcept { return sites_; }
  const std::vector<Triangle>& triangles() const noexcept { return triangles_; }
  const std::vector<Triangle>& adjacency() const noexcept { return adjacency_; }
  const std::vector<HullEdge>& edges() const noexcept { return edges_; }

  std::size_t vertex_count() const noexcept { return sites_.size(); }
  std::size_t triangle_count() const noexcept { return triangles_.size(); }
  std::size_t edge_count() const noexcept { return edges_.size(); }

  /// The two triangles sharing edge (i, j), lower id first. Throws UnknownEdge.
  std::pair<int, int> edge_neighbors(int i, int j) const;
  bool has_edge(int i, int j) const;

  /// F = 2V - 4 and E = 3V - 6.
  bool satisfies_euler() const;

  /// Every triangle has a . (b x c) > 0. For a convex hull this holds exactly
  /// when the origin is strictly inside, i.e. the sites do not all fit in one
  /// closed hemisphere.
  bool outward_oriented() const;

  static std::uint64_t edge_key(int i, int j);

 private:
  std::vector<UnitVec> sites_;
  std::vector<Triangle> triangles_;
  std::vector<Triangle> adjacency_;
  std::vector<HullEdge> edges_;
  std::unordered_map<std::uint64_t, int> edge_index_;
};

/// Randomized incremental hull with conflict lists. The insertion order is a
/// fixed pseudo-random permutation, so output depends only on the input.
///
/// Throws TooFewPoints (< 4), DegenerateInput (coplanar input, or two points
/// closer than tol::kDuplicateChord; `index()` then names the later point).
HullMesh convex_hull(std::span<const UnitVec> points);

}  // namespace sphlayout
