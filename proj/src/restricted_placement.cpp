#include "sphlayout/restricted_placement.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sphlayout/error.hpp"

namespace sphlayout {

namespace {

constexpr double kMinArea = 1e-14;
constexpr int kBisectionSteps = 80;

// The fan centroid depends on the fan apex; re-fanning from the previous
// estimate removes the bias a vertex-0 fan has on symmetric pieces.
UnitVec centered_centroid(SphericalPolygon p) {
  p.anchor.reset();
  UnitVec c = polygon_centroid(p);
  for (int i = 0; i < 4; ++i) {
    p.anchor = c;
    c = polygon_centroid(p);
  }
  return c;
}

// Great circle through the region centroid along the direction in which
// the vertices spread most.
struct Axis {
  Vec3 center;
  Vec3 dir;
  double lo = 0.0;
  double hi = 0.0;

  double param(const Vec3& x) const { return std::atan2(dot(x, dir), dot(x, center)); }
  // Tangent to the axis at parameter theta; x . tangent >= 0 is past the cut.
  Vec3 tangent(double theta) const { return -std::sin(theta) * center + std::cos(theta) * dir; }
};

Axis principal_axis(const SphericalPolygon& region) {
  const Vec3 c = centered_centroid(region).vec();
  const Vec3 ref = std::abs(c.z) < 0.9 ? Vec3{0, 0, 1} : Vec3{1, 0, 0};
  const Vec3 e1 = UnitVec(cross(ref, c)).vec();
  const Vec3 e2 = cross(c, e1);
  double sxx = 0.0, sxy = 0.0, syy = 0.0, mx = 0.0, my = 0.0;
  const double k = static_cast<double>(region.vertices.size());
  for (const auto& v : region.vertices) {
    mx += dot(v, e1) / k;
    my += dot(v, e2) / k;
  }
  for (const auto& v : region.vertices) {
    const double x = dot(v, e1) - mx;
    const double y = dot(v, e2) - my;
    sxx += x * x;
    sxy += x * y;
    syy += y * y;
  }
  const double phi = 0.5 * std::atan2(2.0 * sxy, sxx - syy);
  Axis axis{c, std::cos(phi) * e1 + std::sin(phi) * e2};
  axis.lo = axis.hi = 0.0;
  for (const auto& v : region.vertices) {
    const double t = axis.param(v);
    axis.lo = std::min(axis.lo, t);
    axis.hi = std::max(axis.hi, t);
  }
  return axis;
}

double area_or_zero(const SphericalPolygon& p) {
  return p.vertices.size() < 3 ? 0.0 : std::max(polygon_area(p), 0.0);
}

SphericalPolygon before_cut(const SphericalPolygon& region, const Axis& axis, double theta) {
  return clip_to_hemisphere(region, -1.0 * axis.tangent(theta));
}

SphericalPolygon after_cut(const SphericalPolygon& region, const Axis& axis, double theta) {
  return clip_to_hemisphere(region, axis.tangent(theta));
}

// Parameter at which the part before the cut holds `fraction` of the area.
double cut_parameter(const SphericalPolygon& region, const Axis& axis, double fraction,
                     double total) {
  double lo = axis.lo;
  double hi = axis.hi;
  for (int i = 0; i < kBisectionSteps; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (area_or_zero(before_cut(region, axis, mid)) < fraction * total) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

SphericalPolygon with_anchor(SphericalPolygon p) {
  p.anchor.reset();
  if (area_or_zero(p) <= kMinArea) {
    throw Error(ErrorCode::RegionTooSmall, "region piece has no area");
  }
  p.anchor = centered_centroid(p);
  return p;
}

// Pieces across the principal axis with area shares proportional to `weights`.
std::vector<SphericalPolygon> slabs(const SphericalPolygon& region, std::span<const double> weights) {
  const double total_weight = std::accumulate(weights.begin(), weights.end(), 0.0);
  const double total_area = area_or_zero(region);
  const Axis axis = principal_axis(region);
  std::vector<SphericalPolygon> out;
  SphericalPolygon rest = region;
  double cumulative = 0.0;
  for (std::size_t i = 0; i + 1 < weights.size(); ++i) {
    cumulative += weights[i];
    const double theta = cut_parameter(region, axis, cumulative / total_weight, total_area);
    out.push_back(with_anchor(before_cut(rest, axis, theta)));
    rest = after_cut(rest, axis, theta);
  }
  out.push_back(with_anchor(std::move(rest)));
  return out;
}

void bisect(const SphericalPolygon& region, std::span<const double> weights, std::size_t offset,
            std::vector<SphericalPolygon>& out) {
  if (weights.size() == 1) {
    out[offset] = with_anchor(region);
    return;
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  std::size_t split = 1;
  double left = weights[0];
  double best_gap = std::abs(2.0 * left - total);
  double running = left;
  for (std::size_t k = 2; k < weights.size(); ++k) {
    running += weights[k - 1];
    const double gap = std::abs(2.0 * running - total);
    if (gap < best_gap) {
      best_gap = gap;
      split = k;
      left = running;
    }
  }
  auto [first, second] = split_region(region, left / total);
  bisect(first, weights.first(split), offset, out);
  bisect(second, weights.subspan(split), offset + split, out);
}

// Site i scores (1 + w_i / 2) p_i . x at x. Near the sites this matches the
// power distance 2 - 2 p . x - w, and every bisector is a great circle, so
// the clipped cells always partition the region.
Vec3 bisector_normal(const Vec3& pi, const Vec3& pj, double wi, double wj) {
  return (1.0 + 0.5 * wi) * pi - (1.0 + 0.5 * wj) * pj;
}

struct Relaxed {
  std::vector<UnitVec> positions;
  std::vector<SphericalPolygon> cells;
  double error = 0.0;
  int iterations = 0;
};

Relaxed relax(const SphericalPolygon& region, std::span<const double> shares,
              std::vector<UnitVec> positions, const RestrictedConfig& config) {
  const std::size_t n = shares.size();
  const double area = area_or_zero(region);
  std::vector<double> power(n);
  for (std::size_t i = 0; i < n; ++i) power[i] = shares[i] * area / kPi;

  Relaxed best;
  best.error = std::numeric_limits<double>::infinity();
  std::vector<SphericalPolygon> cells(n);
  for (int it = 1; it <= config.max_iterations; ++it) {
    double err = 0.0;
    std::vector<double> actual(n);
    for (std::size_t i = 0; i < n; ++i) {
      SphericalPolygon cell = region;
      cell.anchor.reset();
      for (std::size_t j = 0; j < n && cell.vertices.size() >= 3; ++j) {
        if (j != i) cell = clip_to_hemisphere(cell, bisector_normal(positions[i], positions[j], power[i], power[j]));
      }
      actual[i] = area_or_zero(cell) / area;
      err = std::max(err, std::abs(actual[i] - shares[i]));
      cells[i] = std::move(cell);
    }
    if (err < best.error) best = {positions, cells, err, it};
    if (err <= config.tolerance) break;
    for (std::size_t i = 0; i < n; ++i) {
      if (actual[i] > 0.0) positions[i] = centered_centroid(cells[i]);
      positions[i] = pull_inside(region, positions[i]);
      power[i] = std::max(power[i] * (1.0 - (actual[i] - shares[i]) / shares[i]), 1e-12);
    }
  }
  return best;
}

}  // namespace

std::pair<SphericalPolygon, SphericalPolygon> split_region(const SphericalPolygon& region,
                                                           double fraction) {
  if (!(fraction > 0.0 && fraction < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "split fraction must lie in (0, 1)");
  }
  const double total = area_or_zero(region);
  if (total <= kMinArea) throw Error(ErrorCode::RegionTooSmall, "region has no area");
  const Axis axis = principal_axis(region);
  const double theta = cut_parameter(region, axis, fraction, total);
  return {with_anchor(before_cut(region, axis, theta)), with_anchor(after_cut(region, axis, theta))};
}

UnitVec pull_inside(const SphericalPolygon& region, const UnitVec& p) {
  if (polygon_contains(region, p)) return p;
  const auto& v = region.vertices;
  Vec3 nearest = v.front();
  double best = dot(p.vec(), nearest);
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec3& a = v[i];
    const Vec3& b = v[(i + 1) % v.size()];
    for (const Vec3& candidate : {a, b}) {
      if (dot(p.vec(), candidate) > best) {
        best = dot(p.vec(), candidate);
        nearest = candidate;
      }
    }
    const Vec3 pole = cross(a, b);
    if (norm(pole) < 1e-15) continue;
    const Vec3 n = pole / norm(pole);
    const Vec3 q = p.vec() - dot(p.vec(), n) * n;
    if (norm(q) < 1e-15) continue;
    const Vec3 qh = q / norm(q);
    if (dot(cross(a, qh), n) >= 0.0 && dot(cross(qh, b), n) >= 0.0 && dot(p.vec(), qh) > best) {
      best = dot(p.vec(), qh);
      nearest = qh;
    }
  }
  const Vec3 c = centered_centroid(region).vec();
  return UnitVec(nearest + 1e-9 * (c - nearest));
}

RegionSplit restricted_placement(const SphericalPolygon& region, std::span<const double> weights,
                                 const RestrictedConfig& config) {
  if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "no weights to place");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite");
    }
  }
  if (region.vertices.size() < 3 || area_or_zero(region) <= kMinArea) {
    throw Error(ErrorCode::RegionTooSmall, "region has no area");
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);
  const std::size_t n = weights.size();

  RegionSplit split;
  if (n == 1) {
    split.regions.push_back(with_anchor(region));
  } else if (n <= 3) {
    split.regions = slabs(region, weights);
  } else {
    split.regions.resize(n);
    bisect(region, weights, 0, split.regions);
  }
  const double area = area_or_zero(region);
  for (std::size_t i = 0; i < n; ++i) {
    split.positions.push_back(*split.regions[i].anchor);
    split.area_error = std::max(split.area_error,
                                std::abs(area_or_zero(split.regions[i]) / area - weights[i] / total));
  }

  if (n >= 4) {
    std::vector<double> shares(n);
    for (std::size_t i = 0; i < n; ++i) shares[i] = weights[i] / total;
    Relaxed relaxed = relax(region, shares, split.positions, config);
    split.iterations = relaxed.iterations;
    bool usable = relaxed.error <= config.tolerance;
    for (const auto& cell : relaxed.cells) usable = usable && area_or_zero(cell) > kMinArea;
    if (usable) {
      split.relaxed = true;
      split.area_error = relaxed.error;
      split.positions = relaxed.positions;
      split.regions.clear();
      for (std::size_t i = 0; i < n; ++i) {
        SphericalPolygon cell = std::move(relaxed.cells[i]);
        cell.anchor = pull_inside(cell, relaxed.positions[i]);
        split.positions[i] = *cell.anchor;
        split.regions.push_back(std::move(cell));
      }
    }
  }

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (norm(split.positions[i].vec() - split.positions[j].vec()) < 1e-9) {
        throw Error(ErrorCode::RegionTooSmall, "region cannot host distinct positions", i);
      }
    }
  }
  return split;
}

}  // namespace sphlayout
