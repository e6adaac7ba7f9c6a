#pragma once

#include <span>
#include <utility>
#include <vector>

#include "sphlayout/spherical_geometry.hpp"

namespace sphlayout {

struct RestrictedConfig {
  // Largest accepted |area share - weight share| for the relaxed cells.
  double tolerance = 1e-3;
  int max_iterations = 200;
};

struct RegionSplit {
  std::vector<UnitVec> positions;
  std::vector<SphericalPolygon> regions;  // partition of the input region
  double area_error = 0.0;                // max |area share - weight share|
  int iterations = 0;                     // relaxation steps taken
  bool relaxed = false;                   // false: slab/bisection partition kept
};

/// Heuristic placement of weighted sites inside a convex region.
///
/// 1 weight: the region's centroid. 2-3 weights: slabs cut across the
/// region's principal axis with areas proportional to the weights. 4 or
/// more: recursive weighted bisection gives a start, then a Lloyd loop over
/// cells clipped to the region by weighted great-circle bisectors refines
/// it; the relaxed cells are kept only if they meet `tolerance`.
///
/// Throws InvalidArgument for an empty or non-positive weight list and
/// RegionTooSmall if the region (or a piece of it) has no area.
RegionSplit restricted_placement(const SphericalPolygon& region, std::span<const double> weights,
                                 const RestrictedConfig& config = {});

/// Splits `region` by a great circle across its principal axis so that the
/// first piece holds `fraction` of its area.
std::pair<SphericalPolygon, SphericalPolygon> split_region(const SphericalPolygon& region,
                                                           double fraction);

/// `p` if it is inside `region`, else the nearest boundary point nudged
/// toward the region's centroid.
UnitVec pull_inside(const SphericalPolygon& region, const UnitVec& p);

}  // namespace sphlayout
