#include "sphlayout/hull.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "sphlayout/error.hpp"
#include "sphlayout/tolerance.hpp"

namespace sphlayout {

std::uint64_t HullMesh::edge_key(int i, int j) {
  const auto lo = static_cast<std::uint64_t>(std::min(i, j));
  const auto hi = static_cast<std::uint64_t>(std::max(i, j));
  return (lo << 32) | hi;
}

HullMesh HullMesh::from_triangles(std::vector<UnitVec> sites, std::vector<Triangle> triangles) {
  HullMesh mesh;
  mesh.sites_ = std::move(sites);
  mesh.triangles_ = std::move(triangles);
  mesh.adjacency_.assign(mesh.triangles_.size(), Triangle{-1, -1, -1});

  // Directed half-edge (u -> v) to (triangle, local edge).
  std::unordered_map<std::uint64_t, std::pair<int, int>> directed;
  directed.reserve(mesh.triangles_.size() * 3);
  auto directed_key = [](int u, int v) {
    return (static_cast<std::uint64_t>(u) << 32) | static_cast<std::uint32_t>(v);
  };
  const int n_sites = static_cast<int>(mesh.sites_.size());
  for (int t = 0; t < static_cast<int>(mesh.triangles_.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int u = mesh.triangles_[t][k];
      const int v = mesh.triangles_[t][(k + 1) % 3];
      if (u < 0 || u >= n_sites || v < 0 || v >= n_sites || u == v) {
        throw Error(ErrorCode::DegenerateInput, "triangle references an invalid vertex",
                    static_cast<std::size_t>(t));
      }
      if (!directed.emplace(directed_key(u, v), std::make_pair(t, k)).second) {
        throw Error(ErrorCode::DegenerateInput, "half-edge used twice (non-manifold)",
                    static_cast<std::size_t>(t));
      }
    }
  }
  for (int t = 0; t < static_cast<int>(mesh.triangles_.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      const int u = mesh.triangles_[t][k];
      const int v = mesh.triangles_[t][(k + 1) % 3];
      const auto twin = directed.find(directed_key(v, u));
      if (twin == directed.end()) {
        throw Error(ErrorCode::DegenerateInput, "open edge: surface is not closed",
                    static_cast<std::size_t>(t));
      }
      const int other = twin->second.first;
      mesh.adjacency_[t][k] = other;
      if (u < v) {
        const int idx = static_cast<int>(mesh.edges_.size());
        mesh.edges_.push_back(HullEdge{u, v, std::min(t, other), std::max(t, other)});
        mesh.edge_index_.emplace(edge_key(u, v), idx);
      }
    }
  }
  return mesh;
}

std::pair<int, int> HullMesh::edge_neighbors(int i, int j) const {
  const auto it = edge_index_.find(edge_key(i, j));
  if (i == j || it == edge_index_.end()) {
    throw Error(ErrorCode::UnknownEdge, "edge is not part of the mesh");
  }
  const HullEdge& e = edges_[static_cast<std::size_t>(it->second)];
  return {e.t0, e.t1};
}

bool HullMesh::has_edge(int i, int j) const {
  return i != j && edge_index_.contains(edge_key(i, j));
}

bool HullMesh::satisfies_euler() const {
  const std::size_t v = sites_.size();
  return v >= 4 && triangles_.size() == 2 * v - 4 && edges_.size() == 3 * v - 6;
}

bool HullMesh::outward_oriented() const {
  return std::all_of(triangles_.begin(), triangles_.end(), [this](const Triangle& t) {
    return triple(sites_[static_cast<std::size_t>(t[0])], sites_[static_cast<std::size_t>(t[1])],
                  sites_[static_cast<std::size_t>(t[2])]) > 0.0;
  });
}

namespace {

struct Face {
  Triangle v;
  Triangle nb{-1, -1, -1};
  Vec3 normal;  // (b - a) x (c - a), not normalized
  bool alive = true;
  std::vector<int> conflicts;
};

class IncrementalHull {
 public:
  explicit IncrementalHull(std::span<const UnitVec> points) : pts_(points) {
    point_faces_.resize(points.size());
    processed_.assign(points.size(), false);
    stamp_.assign(points.size(), 0);
    horizon_start_.assign(points.size(), -1);
    horizon_end_.assign(points.size(), -1);
  }

  std::vector<Triangle> run(const std::vector<int>& order);

 private:
  double volume(const Face& f, int p) const {
    return dot(f.normal, pts_[static_cast<std::size_t>(p)].vec() - pt(f.v[0]));
  }
  bool sees(const Face& f, int p) const { return volume(f, p) > tol::kCoplanarVolume; }
  const Vec3& pt(int i) const { return pts_[static_cast<std::size_t>(i)].vec(); }

  int add_face(int a, int b, int c) {
    Face f;
    f.v = {a, b, c};
    f.normal = cross(pt(b) - pt(a), pt(c) - pt(a));
    faces_.push_back(std::move(f));
    return static_cast<int>(faces_.size()) - 1;
  }

  void link(int f, int k, int g) { faces_[static_cast<std::size_t>(f)].nb[static_cast<std::size_t>(k)] = g; }

  void insert(int p);

  std::span<const UnitVec> pts_;
  std::vector<Face> faces_;
  std::vector<std::vector<int>> point_faces_;
  std::vector<bool> processed_;
  std::vector<unsigned> stamp_;
  unsigned stamp_value_ = 0;
  std::vector<int> horizon_start_;
  std::vector<int> horizon_end_;
};

std::vector<Triangle> IncrementalHull::run(const std::vector<int>& order) {
  // Initial simplex: extreme choices along the insertion order.
  const int p0 = order[0];
  int p1 = -1;
  double best = -1.0;
  for (int q : order) {
    const double d = norm_squared(pt(q) - pt(p0));
    if (d > best) best = d, p1 = q;
  }
  int p2 = -1;
  best = -1.0;
  const Vec3 axis = pt(p1) - pt(p0);
  for (int q : order) {
    const double d = norm_squared(cross(axis, pt(q) - pt(p0)));
    if (d > best) best = d, p2 = q;
  }
  int p3 = -1;
  best = -1.0;
  const Vec3 n = cross(pt(p1) - pt(p0), pt(p2) - pt(p0));
  for (int q : order) {
    const double d = std::abs(dot(n, pt(q) - pt(p0)));
    if (d > best) best = d, p3 = q;
  }
  if (best < tol::kCoplanarVolume) {
    throw Error(ErrorCode::DegenerateInput, "all points are coplanar");
  }
  if (dot(n, pt(p3) - pt(p0)) > 0.0) std::swap(p1, p2);

  // Outward faces of the tetrahedron (p3 lies below face p0 p1 p2 now).
  const int f0 = add_face(p0, p1, p2);
  const int f1 = add_face(p0, p3, p1);
  const int f2 = add_face(p1, p3, p2);
  const int f3 = add_face(p2, p3, p0);
  faces_[f0].nb = {f1, f2, f3};
  faces_[f1].nb = {f3, f2, f0};
  faces_[f2].nb = {f1, f3, f0};
  faces_[f3].nb = {f2, f1, f0};

  for (int p : {p0, p1, p2, p3}) processed_[static_cast<std::size_t>(p)] = true;
  for (int q : order) {
    if (processed_[static_cast<std::size_t>(q)]) continue;
    for (int f : {f0, f1, f2, f3}) {
      if (sees(faces_[static_cast<std::size_t>(f)], q)) {
        faces_[static_cast<std::size_t>(f)].conflicts.push_back(q);
        point_faces_[static_cast<std::size_t>(q)].push_back(f);
      }
    }
  }

  for (int q : order) {
    if (!processed_[static_cast<std::size_t>(q)]) insert(q);
  }

  std::vector<Triangle> out;
  for (const Face& f : faces_) {
    if (f.alive) out.push_back(f.v);
  }
  return out;
}

void IncrementalHull::insert(int p) {
  processed_[static_cast<std::size_t>(p)] = true;
  int seed_face = -1;
  for (int f : point_faces_[static_cast<std::size_t>(p)]) {
    if (faces_[static_cast<std::size_t>(f)].alive) {
      seed_face = f;
      break;
    }
  }
  point_faces_[static_cast<std::size_t>(p)].clear();
  if (seed_face < 0) return;  // inside (or on) the current hull

  // Flood the visible region.
  std::vector<int> visible{seed_face};
  std::vector<char> is_visible(faces_.size(), 0);
  is_visible[static_cast<std::size_t>(seed_face)] = 1;
  for (std::size_t i = 0; i < visible.size(); ++i) {
    const Face& f = faces_[static_cast<std::size_t>(visible[i])];
    for (int g : f.nb) {
      if (!is_visible[static_cast<std::size_t>(g)] && sees(faces_[static_cast<std::size_t>(g)], p)) {
        is_visible[static_cast<std::size_t>(g)] = 1;
        visible.push_back(g);
      }
    }
  }

  struct HorizonEdge {
    int u, v;
    int inside;   // visible face being removed
    int outside;  // retained neighbor
  };
  std::vector<HorizonEdge> horizon;
  for (int fi : visible) {
    const Face& f = faces_[static_cast<std::size_t>(fi)];
    for (int k = 0; k < 3; ++k) {
      const int g = f.nb[static_cast<std::size_t>(k)];
      if (!is_visible[static_cast<std::size_t>(g)]) {
        horizon.push_back({f.v[static_cast<std::size_t>(k)], f.v[static_cast<std::size_t>((k + 1) % 3)], fi, g});
      }
    }
  }

  std::vector<int> created;
  created.reserve(horizon.size());
  for (const HorizonEdge& e : horizon) {
    const int nf = add_face(e.u, e.v, p);
    created.push_back(nf);
    link(nf, 0, e.outside);
    Face& out = faces_[static_cast<std::size_t>(e.outside)];
    for (int k = 0; k < 3; ++k) {
      if (out.nb[static_cast<std::size_t>(k)] == e.inside) out.nb[static_cast<std::size_t>(k)] = nf;
    }
    horizon_start_[static_cast<std::size_t>(e.u)] = nf;
    horizon_end_[static_cast<std::size_t>(e.v)] = nf;
  }
  for (std::size_t i = 0; i < horizon.size(); ++i) {
    const int nf = created[i];
    link(nf, 1, horizon_start_[static_cast<std::size_t>(horizon[i].v)]);  // edge (v, p)
    link(nf, 2, horizon_end_[static_cast<std::size_t>(horizon[i].u)]);    // edge (p, u)
  }

  // Conflicts of a new face are drawn from the two faces that met at its
  // horizon edge.
  for (std::size_t i = 0; i < horizon.size(); ++i) {
    const int nf = created[i];
    ++stamp_value_;
    for (int src : {horizon[i].inside, horizon[i].outside}) {
      for (int q : faces_[static_cast<std::size_t>(src)].conflicts) {
        if (processed_[static_cast<std::size_t>(q)] || stamp_[static_cast<std::size_t>(q)] == stamp_value_) continue;
        stamp_[static_cast<std::size_t>(q)] = stamp_value_;
        if (sees(faces_[static_cast<std::size_t>(nf)], q)) {
          faces_[static_cast<std::size_t>(nf)].conflicts.push_back(q);
          point_faces_[static_cast<std::size_t>(q)].push_back(nf);
        }
      }
    }
  }

  for (const HorizonEdge& e : horizon) {
    horizon_start_[static_cast<std::size_t>(e.u)] = -1;
    horizon_end_[static_cast<std::size_t>(e.v)] = -1;
  }
  for (int fi : visible) {
    Face& f = faces_[static_cast<std::size_t>(fi)];
    f.alive = false;
    f.conflicts.clear();
    f.conflicts.shrink_to_fit();
  }
}

void reject_duplicates(std::span<const UnitVec> points) {
  std::vector<std::size_t> idx(points.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    return points[a].x() < points[b].x() || (points[a].x() == points[b].x() && a < b);
  });
  for (std::size_t i = 0; i < idx.size(); ++i) {
    for (std::size_t j = i + 1; j < idx.size(); ++j) {
      if (points[idx[j]].x() - points[idx[i]].x() >= tol::kDuplicateChord) break;
      if (norm(points[idx[j]].vec() - points[idx[i]].vec()) < tol::kDuplicateChord) {
        throw Error(ErrorCode::DegenerateInput, "duplicate points", std::max(idx[i], idx[j]));
      }
    }
  }
}

}  // namespace

HullMesh convex_hull(std::span<const UnitVec> points) {
  if (points.size() < 4) throw Error(ErrorCode::TooFewPoints, "convex hull needs at least 4 points");
  reject_duplicates(points);

  std::vector<int> order(points.size());
  std::iota(order.begin(), order.end(), 0);
  std::mt19937_64 rng(0x5eedULL);
  for (std::size_t i = order.size() - 1; i > 0; --i) {
    const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
    std::swap(order[i], order[j]);
  }

  IncrementalHull builder(points);
  std::vector<Triangle> triangles = builder.run(order);

  std::vector<char> used(points.size(), 0);
  for (const Triangle& t : triangles) {
    for (int v : t) used[static_cast<std::size_t>(v)] = 1;
  }
  for (std::size_t i = 0; i < used.size(); ++i) {
    if (!used[i]) throw Error(ErrorCode::DegenerateInput, "point is not a hull vertex", i);
  }
  return HullMesh::from_triangles(std::vector<UnitVec>(points.begin(), points.end()),
                                  std::move(triangles));
}

}  // namespace sphlayout
