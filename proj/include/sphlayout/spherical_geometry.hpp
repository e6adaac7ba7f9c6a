#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "sphlayout/vec3.hpp"

namespace sphlayout {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kSphereArea = 4.0 * kPi;

/// A point on the unit sphere. Construction always renormalizes, so every
/// instance has |v| = 1 to within rounding.
class UnitVec {
 public:
  UnitVec() = default;

  /// Normalizes `v`; throws DegenerateCentroid if |v| is (near) zero.
  explicit UnitVec(const Vec3& v);
  UnitVec(double x, double y, double z) : UnitVec(Vec3{x, y, z}) {}

  const Vec3& vec() const noexcept { return v_; }
  double x() const noexcept { return v_.x; }
  double y() const noexcept { return v_.y; }
  double z() const noexcept { return v_.z; }

  operator const Vec3&() const noexcept { return v_; }

  friend bool operator==(const UnitVec&, const UnitVec&) = default;

 private:
  Vec3 v_{0.0, 0.0, 1.0};
};

struct SphericalTriangle {
  UnitVec a;
  UnitVec b;
  UnitVec c;

  // a . (b x c); positive for counter-clockwise as seen from outside.
  double orientation() const { return triple(a, b, c); }
};

/// Counter-clockwise ring of vertices, implicitly closed.
///
/// Area, centroid and membership are computed over a triangle fan. The fan
/// apex is `anchor` when set (a point inside the ring, e.g. the generating
/// site of a Voronoi cell), otherwise vertex 0. A vertex-0 fan cannot describe
/// rings larger than a hemisphere; an interior apex can.
struct SphericalPolygon {
  std::vector<UnitVec> vertices;
  std::optional<std::size_t> generator_id;
  std::optional<UnitVec> anchor;
};

// Weighted (power) distance |site - x|^2 - weight. May be negative.
double weighted_distance(const Vec3& site, double weight, const Vec3& x);

/// Great-circle distance, atan2 form (accurate near 0 and pi).
double arc_length(const Vec3& a, const Vec3& b);

/// Area of a spherical triangle from its side lengths (L'Huilier's form of
/// the spherical excess). Returns 0 when two vertices coincide and throws
/// DegenerateTriangle when the vertices lie on one great circle otherwise.
double triangle_area(const SphericalTriangle& t);

/// Excess signed by orientation; degenerate triangles count as 0. This is
/// the fan term used by the polygon routines.
double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c);

/// (a+b+c)/|a+b+c|. Throws DegenerateCentroid when the sum vanishes.
UnitVec triangle_centroid(const SphericalTriangle& t);

/// Sum of the fan triangles (apex, vi, vi+1), each signed by orientation. For a
/// properly oriented simple cell this is its area in (0, 4pi); a negative
/// total means the ring is inverted. Throws DegeneratePolygon for fewer than
/// three vertices.
double polygon_area(const SphericalPolygon& p);

/// Area-weighted mean of fan-triangle centroids, renormalized.
UnitVec polygon_centroid(const SphericalPolygon& p);

/// False if any fan triangle is negatively oriented beyond tolerance.
bool fan_is_positive(const SphericalPolygon& p);

/// Every interior angle turns left (within tolerance).
bool is_convex(const SphericalPolygon& p);

/// Winding-number membership via the polygon's fan. Points on the boundary count
/// as inside (tolerance `slack` on the edge tests).
bool polygon_contains(const SphericalPolygon& p, const Vec3& point, double slack = 1e-12);

/// Planar point x in the plane of a, b, c with equal weighted distance to all
/// three sites. Throws DegenerateTriangle for collinear input.
Vec3 weighted_circumcenter_planar(const Vec3& a, const Vec3& b, const Vec3& c, double wa,
                                  double wb, double wc);

/// The planar point above moved along the face normal onto the sphere, on the
/// outer side of the face (a, b, c) given counter-clockwise as seen from
/// outside. Every point of that normal line has equal weighted distance to
/// the three sites, so the result keeps the three-way equality; radial
/// projection x/|x| would not once the weights differ. With equal weights
/// both agree. Throws CircumcenterAtOrigin if |x| < tol::kLinearSolve.
UnitVec weighted_circumcenter(const Vec3& a, const Vec3& b, const Vec3& c, double wa, double wb,
                              double wc);

/// Keeps the part of `p` with normal . x >= 0 (the plane passes through the
/// origin, so its trace is a great circle). Returns an empty polygon when
/// nothing remains. The anchor survives only if it is still inside.
SphericalPolygon clip_to_hemisphere(const SphericalPolygon& p, const Vec3& normal);

/// Rotates `v` about the unit `axis` by `angle` radians.
Vec3 rotate(const Vec3& v, const Vec3& axis, double angle);

}  // namespace sphlayout
