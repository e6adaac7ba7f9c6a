#include "sphlayout/trisphere.hpp"

#include <cmath>
#include <unordered_map>

#include "sphlayout/error.hpp"

namespace sphlayout {

namespace {

IcoSphere icosahedron() {
  const double t = (1.0 + std::sqrt(5.0)) / 2.0;
  IcoSphere s;
  for (const Vec3& v : {Vec3{-1, t, 0}, Vec3{1, t, 0}, Vec3{-1, -t, 0}, Vec3{1, -t, 0},
                        Vec3{0, -1, t}, Vec3{0, 1, t}, Vec3{0, -1, -t}, Vec3{0, 1, -t},
                        Vec3{t, 0, -1}, Vec3{t, 0, 1}, Vec3{-t, 0, -1}, Vec3{-t, 0, 1}}) {
    s.vertices.emplace_back(v);
  }
  s.faces = {{0, 11, 5}, {0, 5, 1},  {0, 1, 7},   {0, 7, 10}, {0, 10, 11},
             {1, 5, 9},  {5, 11, 4}, {11, 10, 2}, {10, 7, 6}, {7, 1, 8},
             {3, 9, 4},  {3, 4, 2},  {3, 2, 6},   {3, 6, 8},  {3, 8, 9},
             {4, 9, 5},  {2, 4, 11}, {6, 2, 10},  {8, 6, 7},  {9, 8, 1}};
  return s;
}

UnitVec midpoint(const Vec3& a, const Vec3& b) { return UnitVec(a + b); }

}  // namespace

SphericalTriangle IcoSphere::triangle(std::size_t f) const {
  const Triangle& t = faces.at(f);
  return {vertices[static_cast<std::size_t>(t[0])], vertices[static_cast<std::size_t>(t[1])],
          vertices[static_cast<std::size_t>(t[2])]};
}

std::vector<SphericalTriangle> IcoSphere::triangles() const {
  std::vector<SphericalTriangle> out;
  out.reserve(faces.size());
  for (std::size_t f = 0; f < faces.size(); ++f) out.push_back(triangle(f));
  return out;
}

std::size_t icosphere_face_count(int level) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "level must be >= 0");
  return std::size_t{20} << (2 * level);
}

IcoSphere build_icosphere(int level) {
  if (level < 0) throw Error(ErrorCode::InvalidArgument, "level must be >= 0");
  if (level > kMaxIcosphereLevel) {
    throw Error(ErrorCode::LevelTooLarge,
                "level " + std::to_string(level) + " exceeds " + std::to_string(kMaxIcosphereLevel));
  }
  IcoSphere s = icosahedron();
  for (int l = 0; l < level; ++l) {
    std::unordered_map<std::uint64_t, int> mids;
    auto mid = [&](int a, int b) {
      const auto key = HullMesh::edge_key(a, b);
      if (auto it = mids.find(key); it != mids.end()) return it->second;
      const int id = static_cast<int>(s.vertices.size());
      s.vertices.push_back(midpoint(s.vertices[static_cast<std::size_t>(a)],
                                    s.vertices[static_cast<std::size_t>(b)]));
      mids.emplace(key, id);
      return id;
    };
    std::vector<Triangle> next;
    next.reserve(4 * s.faces.size());
    for (const auto& [a, b, c] : s.faces) {
      const int ab = mid(a, b);
      const int bc = mid(b, c);
      const int ca = mid(c, a);
      next.push_back({a, ab, ca});
      next.push_back({ab, b, bc});
      next.push_back({ca, bc, c});
      next.push_back({ab, bc, ca});
    }
    s.faces = std::move(next);
    s.level = l + 1;
  }
  return s;
}

std::array<SphericalTriangle, 4> subdivide(const SphericalTriangle& t) {
  const UnitVec ab = midpoint(t.a, t.b);
  const UnitVec bc = midpoint(t.b, t.c);
  const UnitVec ca = midpoint(t.c, t.a);
  return {SphericalTriangle{t.a, ab, ca}, SphericalTriangle{ab, t.b, bc},
          SphericalTriangle{ca, bc, t.c}, SphericalTriangle{ab, bc, ca}};
}

std::vector<SphericalTriangle> subdivide_until(const SphericalTriangle& t, std::size_t count) {
  std::vector<SphericalTriangle> pieces{t};
  while (pieces.size() < count) {
    std::vector<SphericalTriangle> next;
    next.reserve(4 * pieces.size());
    for (const auto& p : pieces) {
      for (const auto& child : subdivide(p)) next.push_back(child);
    }
    pieces = std::move(next);
  }
  return pieces;
}

double WasteStats::fraction() const noexcept {
  return faces == 0 ? 0.0 : static_cast<double>(unused()) / static_cast<double>(faces);
}

std::string WasteStats::percent_exact() const {
  if (faces == 0) return "0";
  std::size_t num = 100 * unused();
  std::string out = std::to_string(num / faces);
  num %= faces;
  if (num == 0) return out;
  out += '.';
  // Terminates: faces has no prime factors other than 2 and 5.
  while (num != 0) {
    num *= 10;
    out += static_cast<char>('0' + num / faces);
    num %= faces;
  }
  return out;
}

int trisphere_level(std::size_t n) {
  int level = 0;
  while (level <= kMaxIcosphereLevel && icosphere_face_count(level) < n) ++level;
  return level;
}

TriSphereLayout trisphere_layout(std::size_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "need at least one node");
  const int level = trisphere_level(n);
  if (level > kMaxIcosphereLevel) {
    throw Error(ErrorCode::LevelTooLarge, std::to_string(n) + " nodes exceed the largest icosphere");
  }
  TriSphereLayout layout;
  layout.sphere = build_icosphere(level);
  layout.positions.reserve(n);
  for (std::size_t f = 0; f < n; ++f) layout.positions.push_back(triangle_centroid(layout.sphere.triangle(f)));
  layout.waste = {level, layout.sphere.face_count(), n};
  return layout;
}

}  // namespace sphlayout
