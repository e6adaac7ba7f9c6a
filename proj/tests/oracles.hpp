#pragma once

// Independent reference computations for the tests. Nothing here calls into
// the library beyond Vec3/UnitVec arithmetic.

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "sphlayout/spherical_geometry.hpp"

namespace oracle {

using sphlayout::UnitVec;
using sphlayout::Vec3;

inline Vec3 random_unit(std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  for (;;) {
    const Vec3 v{g(rng), g(rng), g(rng)};
    const double n = std::sqrt(sphlayout::dot(v, v));
    if (n > 1e-6) return v / n;
  }
}

inline std::vector<UnitVec> random_points(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<UnitVec> out;
  while (out.size() < n) out.emplace_back(random_unit(rng));
  return out;
}

// Uniform point in the cap of angular radius `radius` around `axis`.
inline Vec3 random_in_cap(std::mt19937_64& rng, const Vec3& axis, double radius) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double z = 1.0 - u(rng) * (1.0 - std::cos(radius));
  const double phi = 2.0 * M_PI * u(rng);
  const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  const Vec3 helper = std::abs(axis.x) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0};
  Vec3 e1 = sphlayout::cross(axis, helper);
  e1 = e1 / std::sqrt(sphlayout::dot(e1, e1));
  const Vec3 e2 = sphlayout::cross(axis, e1);
  return z * axis + r * std::cos(phi) * e1 + r * std::sin(phi) * e2;
}

inline double angle_between(const Vec3& a, const Vec3& b) {
  return std::atan2(std::sqrt(sphlayout::dot(sphlayout::cross(a, b), sphlayout::cross(a, b))),
                    sphlayout::dot(a, b));
}

// Spherical excess from interior angles (Girard).
inline double girard_area(const Vec3& a, const Vec3& b, const Vec3& c) {
  auto corner = [](const Vec3& p, const Vec3& q, const Vec3& r) {
    const Vec3 tq = q - sphlayout::dot(p, q) * p;
    const Vec3 tr = r - sphlayout::dot(p, r) * p;
    return angle_between(tq, tr);
  };
  return corner(a, b, c) + corner(b, c, a) + corner(c, a, b) - M_PI;
}

// Circumcenter of a triangle in R^3, closed form.
inline Vec3 planar_circumcenter(const Vec3& a, const Vec3& b, const Vec3& c) {
  const Vec3 ab = b - a;
  const Vec3 ac = c - a;
  const Vec3 n = sphlayout::cross(ab, ac);
  const Vec3 num = sphlayout::dot(ac, ac) * sphlayout::cross(n, ab) +
                   sphlayout::dot(ab, ab) * sphlayout::cross(ac, n);
  return a + num / (2.0 * sphlayout::dot(n, n));
}

// Membership in a convex polygon given counter-clockwise: left of every edge.
inline bool inside_convex(const std::vector<Vec3>& ring, const Vec3& p) {
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Vec3& u = ring[i];
    const Vec3& v = ring[(i + 1) % ring.size()];
    if (sphlayout::dot(sphlayout::cross(u, v), p) < 0.0) return false;
  }
  return true;
}

inline std::vector<Vec3> ring_of(const sphlayout::SphericalPolygon& p) {
  std::vector<Vec3> ring;
  for (const auto& v : p.vertices) ring.push_back(v.vec());
  return ring;
}

struct MonteCarlo {
  double fraction = 0.0;  // share of the cap samples that fell inside
  Vec3 mean{};            // mean of the inside samples, not normalized
  std::size_t hits = 0;
};

// Samples the cap around `axis` and keeps points inside the convex ring.
inline MonteCarlo sample_convex(const std::vector<Vec3>& ring, const Vec3& axis, double cap_radius,
                                std::size_t samples, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  MonteCarlo mc;
  for (std::size_t i = 0; i < samples; ++i) {
    const Vec3 p = random_in_cap(rng, axis, cap_radius);
    if (inside_convex(ring, p)) {
      mc.mean = mc.mean + p;
      ++mc.hits;
    }
  }
  mc.fraction = static_cast<double>(mc.hits) / static_cast<double>(samples);
  return mc;
}

inline double cap_area(double radius) { return 2.0 * M_PI * (1.0 - std::cos(radius)); }

// Index minimizing |s - x|^2 - w.
inline std::size_t power_argmin(const std::vector<UnitVec>& sites, const std::vector<double>& weights,
                                const Vec3& x) {
  std::size_t best = 0;
  double best_d = INFINITY;
  for (std::size_t i = 0; i < sites.size(); ++i) {
    const Vec3 d = sites[i].vec() - x;
    const double p = sphlayout::dot(d, d) - weights[i];
    if (p < best_d) {
      best_d = p;
      best = i;
    }
  }
  return best;
}

// Faces of the hull by exhaustion: a triple is a face when every other point
// lies strictly on one side of its plane. Returned as sorted triples.
inline std::set<std::array<int, 3>> brute_force_hull(const std::vector<UnitVec>& pts) {
  std::set<std::array<int, 3>> faces;
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Vec3 normal = sphlayout::cross(pts[j].vec() - pts[i].vec(), pts[k].vec() - pts[i].vec());
        int above = 0;
        int below = 0;
        for (int l = 0; l < n; ++l) {
          if (l == i || l == j || l == k) continue;
          const double s = sphlayout::dot(normal, pts[l].vec() - pts[i].vec());
          if (s > 0.0) ++above;
          if (s < 0.0) ++below;
        }
        if (above == 0 || below == 0) faces.insert({i, j, k});
      }
    }
  }
  return faces;
}

// The origin is strictly inside the hull iff no supporting plane through
// three sites has the origin on or beyond it.
inline bool hull_contains_origin(const std::vector<UnitVec>& pts) {
  const int n = static_cast<int>(pts.size());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        const Vec3 normal = sphlayout::cross(pts[j].vec() - pts[i].vec(), pts[k].vec() - pts[i].vec());
        int above = 0;
        int below = 0;
        for (int l = 0; l < n; ++l) {
          const double s = sphlayout::dot(normal, pts[l].vec() - pts[i].vec());
          if (s > 1e-12) ++above;
          if (s < -1e-12) ++below;
        }
        if (above > 0 && below > 0) continue;
        const double origin = -sphlayout::dot(normal, pts[i].vec());
        if (above == 0 && origin >= 0.0) return false;
        if (below == 0 && origin <= 0.0) return false;
      }
    }
  }
  return true;
}

template <class Triangles>
std::set<std::array<int, 3>> sorted_faces(const Triangles& tris) {
  std::set<std::array<int, 3>> out;
  for (auto t : tris) {
    std::array<int, 3> s{t[0], t[1], t[2]};
    std::sort(s.begin(), s.end());
    out.insert(s);
  }
  return out;
}

struct ObjFile {
  std::vector<Vec3> vertices;
  std::vector<std::vector<int>> faces;  // 0-based
  std::vector<std::vector<int>> lines;  // 0-based
  std::vector<std::string> objects;
  std::vector<std::string> comments;
};

inline ObjFile read_obj(const std::string& text) {
  ObjFile obj;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string tag;
    ls >> tag;
    if (tag == "v") {
      Vec3 v;
      ls >> v.x >> v.y >> v.z;
      obj.vertices.push_back(v);
    } else if (tag == "f" || tag == "l") {
      std::vector<int> idx;
      int i = 0;
      while (ls >> i) idx.push_back(i - 1);
      (tag == "f" ? obj.faces : obj.lines).push_back(idx);
    } else if (tag == "o") {
      std::string name;
      ls >> name;
      obj.objects.push_back(name);
    } else if (tag == "#") {
      obj.comments.push_back(line);
    }
  }
  return obj;
}

// Entries under `root` plus the root itself, without following symlinks.
inline std::size_t count_tree(const std::filesystem::path& root) {
  std::size_t count = 1;
  for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
    (void)entry;
    ++count;
  }
  return count;
}

}  // namespace oracle
