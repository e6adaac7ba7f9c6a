#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "sphlayout/hull.hpp"
#include "sphlayout/spherical_geometry.hpp"

namespace sphlayout {

struct Generator {
  UnitVec position;
  double weight = 1.0;
};

/// Weighted spherical Voronoi tessellation built as the dual of the
/// (unweighted) hull: cell i is the ring of weighted circumcenters of the
/// Delaunay triangles around site i.
struct Tessellation {
  std::vector<Generator> generators;
  HullMesh mesh;
  std::vector<UnitVec> vertices;              // one per mesh triangle
  std::vector<std::vector<int>> cell_triangles;  // CCW around each generator
  std::vector<SphericalPolygon> cells;
  bool overlap = false;  // some cell has a negatively oriented fan triangle

  std::size_t size() const noexcept { return cells.size(); }
  std::vector<double> cell_areas() const;
};

struct EdgeReport {
  std::vector<HullEdge> wrong_edges;       // as found before any repair
  std::vector<HullEdge> degenerate_edges;  // circumcenter could not be formed
  std::size_t swaps_performed = 0;
  std::size_t residual_wrong = 0;
};

/// Throws TooFewPoints / DegenerateInput from the hull, InvalidArgument for
/// non-positive weights, and CircumcenterAtOrigin with the triangle id.
Tessellation build_wsvt(std::span<const Generator> generators);

/// Same dual construction over a caller-supplied triangulation (for example
/// one that went through swap_wrong_edges).
Tessellation build_wsvt(const HullMesh& mesh, std::span<const double> weights);

/// Local regularity test per edge: edge (a, b) between (a, b, c) and
/// (b, a, d) is wrong when d is closer, in weighted distance, to the
/// weighted circumcenter of (a, b, c) than the nearest of a, b and c is.
EdgeReport detect_wrong_edges(const HullMesh& mesh, std::span<const double> weights);

struct SwapResult {
  HullMesh mesh;
  EdgeReport report;
};

/// Flips wrong edges from a FIFO queue until none remain or `max_swaps`
/// flips have been made (0 selects 3 * edge count). The returned mesh is the
/// visited triangulation with the fewest wrong edges, so the count never
/// increases; it need not reach zero.
SwapResult swap_wrong_edges(const HullMesh& mesh, std::span<const double> weights,
                            std::size_t max_swaps = 0);

}  // namespace sphlayout
