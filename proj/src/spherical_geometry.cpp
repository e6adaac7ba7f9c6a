#include "sphlayout/spherical_geometry.hpp"

#include <algorithm>
#include <cmath>

#include "sphlayout/error.hpp"
#include "sphlayout/tolerance.hpp"

namespace sphlayout {

UnitVec::UnitVec(const Vec3& v) {
  const double n = norm(v);
  if (!(n > tol::kCoincident) || !std::isfinite(n)) {
    throw Error(ErrorCode::DegenerateCentroid, "cannot normalize a zero or non-finite vector");
  }
  v_ = v / n;
}

double weighted_distance(const Vec3& site, double weight, const Vec3& x) {
  return norm_squared(site - x) - weight;
}

double arc_length(const Vec3& a, const Vec3& b) { return std::atan2(norm(cross(a, b)), dot(a, b)); }

namespace {

bool coincident(const Vec3& a, const Vec3& b) { return norm(a - b) < tol::kCoincident; }

// L'Huilier: tan(E/4)^2 = tan(s/2) tan((s-A)/2) tan((s-B)/2) tan((s-C)/2)
double excess_from_sides(double side_a, double side_b, double side_c) {
  const double s = 0.5 * (side_a + side_b + side_c);
  const double product = std::tan(0.5 * s) * std::tan(0.5 * (s - side_a)) *
                         std::tan(0.5 * (s - side_b)) * std::tan(0.5 * (s - side_c));
  return 4.0 * std::atan(std::sqrt(std::max(product, 0.0)));
}

double unsigned_excess(const Vec3& a, const Vec3& b, const Vec3& c) {
  return excess_from_sides(arc_length(b, c), arc_length(c, a), arc_length(a, b));
}

}  // namespace

double triangle_area(const SphericalTriangle& t) {
  if (coincident(t.a, t.b) || coincident(t.b, t.c) || coincident(t.c, t.a)) return 0.0;
  if (std::abs(t.orientation()) < tol::kCollinear) {
    throw Error(ErrorCode::DegenerateTriangle, "triangle vertices lie on one great circle");
  }
  return unsigned_excess(t.a, t.b, t.c);
}

double signed_triangle_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  const double orient = triple(a, b, c);
  if (std::abs(orient) < tol::kCollinear) return 0.0;
  if (coincident(a, b) || coincident(b, c) || coincident(c, a)) return 0.0;
  const double e = unsigned_excess(a, b, c);
  return orient > 0.0 ? e : -e;
}

UnitVec triangle_centroid(const SphericalTriangle& t) {
  const Vec3 sum = t.a.vec() + t.b.vec() + t.c.vec();
  if (norm(sum) < tol::kCoincident) {
    throw Error(ErrorCode::DegenerateCentroid, "vertex sum vanishes");
  }
  return UnitVec(sum);
}

namespace {

// Calls f(apex, v_i, v_i+1) for each fan triangle.
template <typename F>
void for_each_fan_triangle(const SphericalPolygon& p, F&& f) {
  const auto& v = p.vertices;
  if (p.anchor) {
    for (std::size_t i = 0; i < v.size(); ++i) f(p.anchor->vec(), v[i].vec(), v[(i + 1) % v.size()].vec());
  } else {
    for (std::size_t i = 1; i + 1 < v.size(); ++i) f(v[0].vec(), v[i].vec(), v[i + 1].vec());
  }
}

}  // namespace

double polygon_area(const SphericalPolygon& p) {
  if (p.vertices.size() < 3) throw Error(ErrorCode::DegeneratePolygon, "fewer than three vertices");
  double area = 0.0;
  for_each_fan_triangle(p, [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    area += signed_triangle_area(a, b, c);
  });
  return area;
}

UnitVec polygon_centroid(const SphericalPolygon& p) {
  if (p.vertices.size() < 3) throw Error(ErrorCode::DegeneratePolygon, "fewer than three vertices");
  Vec3 weighted{};
  double total = 0.0;
  for_each_fan_triangle(p, [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    const double area = signed_triangle_area(a, b, c);
    if (area == 0.0) return;
    const Vec3 sum = a + b + c;
    weighted += (area / norm(sum)) * sum;
    total += area;
  });
  if (!(total > 0.0)) throw Error(ErrorCode::DegeneratePolygon, "polygon has no positive area");
  if (norm(weighted) < tol::kCoincident) {
    throw Error(ErrorCode::DegenerateCentroid, "weighted fan centroid vanishes");
  }
  return UnitVec(weighted);
}

bool fan_is_positive(const SphericalPolygon& p) {
  bool positive = true;
  for_each_fan_triangle(p, [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    if (triple(a, b, c) < -tol::kCollinear) positive = false;
  });
  return positive;
}

bool is_convex(const SphericalPolygon& p) {
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& a = v[i];
    const Vec3& b = v[(i + 1) % n];
    const Vec3& c = v[(i + 2) % n];
    if (coincident(a, b) || coincident(b, c)) continue;
    if (triple(a, b, c) < -1e-10) return false;
  }
  return true;
}

bool polygon_contains(const SphericalPolygon& p, const Vec3& point, double slack) {
  if (p.vertices.size() < 3) return false;
  int winding = 0;
  for_each_fan_triangle(p, [&](const Vec3& a, const Vec3& b, const Vec3& c) {
    const double orient = triple(a, b, c);
    if (std::abs(orient) < tol::kCollinear) return;
    const double s = orient > 0.0 ? 1.0 : -1.0;
    if (s * triple(point, a, b) >= -slack && s * triple(point, b, c) >= -slack &&
        s * triple(point, c, a) >= -slack) {
      winding += orient > 0.0 ? 1 : -1;
    }
  });
  return winding > 0;
}

Vec3 weighted_circumcenter_planar(const Vec3& a, const Vec3& b, const Vec3& c, double wa,
                                  double wb, double wc) {
  const Vec3 u = b - a;
  const Vec3 v = c - a;
  if (norm(cross(u, v)) < tol::kCollinear) {
    throw Error(ErrorCode::DegenerateTriangle, "circumcenter of collinear points");
  }
  // x = a + s u + t v; each equality of weighted distances is linear in x:
  //   2 (b - a) . x = |b|^2 - |a|^2 + wa - wb
  const double r1 = 0.5 * (norm_squared(b) - norm_squared(a) + wa - wb) - dot(u, a);
  const double r2 = 0.5 * (norm_squared(c) - norm_squared(a) + wa - wc) - dot(v, a);
  const double uu = dot(u, u);
  const double uv = dot(u, v);
  const double vv = dot(v, v);
  const double det = uu * vv - uv * uv;
  const double s = (r1 * vv - r2 * uv) / det;
  const double t = (r2 * uu - r1 * uv) / det;
  return a + s * u + t * v;
}

UnitVec weighted_circumcenter(const Vec3& a, const Vec3& b, const Vec3& c, double wa, double wb,
                              double wc) {
  const Vec3 x = weighted_circumcenter_planar(a, b, c, wa, wb, wc);
  if (norm(x) < tol::kLinearSolve) {
    throw Error(ErrorCode::CircumcenterAtOrigin, "weighted circumcenter at the origin");
  }
  // Points with equal weighted distance to a, b and c form the line through x
  // along the face normal. Its outer intersection with the sphere is the
  // vertex; radial projection x / |x| would leave that line. When weights push
  // the line off the sphere, take the nearest sphere point.
  const Vec3 n = cross(b - a, c - a);
  const Vec3 normal = n / norm(n);
  const Vec3 foot = x - dot(x, normal) * normal;
  const double rise = 1.0 - norm_squared(foot);
  return UnitVec(foot + std::sqrt(std::max(rise, 0.0)) * normal);
}

SphericalPolygon clip_to_hemisphere(const SphericalPolygon& p, const Vec3& normal) {
  constexpr double kOnPlane = 1e-15;
  SphericalPolygon out;
  out.generator_id = p.generator_id;
  if (p.anchor && dot(normal, p.anchor->vec()) > 0.0) out.anchor = p.anchor;
  const auto& v = p.vertices;
  const std::size_t n = v.size();
  auto push = [&out](const Vec3& x) {
    if (!out.vertices.empty() && coincident(out.vertices.back(), x)) return;
    out.vertices.emplace_back(x);
  };
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3& cur = v[i];
    const Vec3& next = v[(i + 1) % n];
    const double dc = dot(normal, cur);
    const double dn = dot(normal, next);
    const bool cur_in = dc >= -kOnPlane;
    const bool next_in = dn >= -kOnPlane;
    if (cur_in) push(cur);
    if (cur_in != next_in && std::abs(dc - dn) > 0.0) {
      const double t = dc / (dc - dn);
      const Vec3 x = cur + t * (next - cur);
      // Points on the plane are already emitted as vertices.
      if (std::abs(dc) > kOnPlane && std::abs(dn) > kOnPlane) push(x);
    }
  }
  while (out.vertices.size() > 1 && coincident(out.vertices.front(), out.vertices.back())) {
    out.vertices.pop_back();
  }
  if (out.vertices.size() < 3) out.vertices.clear();
  return out;
}

Vec3 rotate(const Vec3& v, const Vec3& axis, double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return c * v + s * cross(axis, v) + (1.0 - c) * dot(axis, v) * axis;
}

}  // namespace sphlayout
