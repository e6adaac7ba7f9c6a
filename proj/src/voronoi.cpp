#include "sphlayout/voronoi.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <unordered_map>
#include <unordered_set>

#include "sphlayout/error.hpp"
#include "sphlayout/tolerance.hpp"

namespace sphlayout {

std::vector<double> Tessellation::cell_areas() const {
  std::vector<double> areas;
  areas.reserve(cells.size());
  for (const auto& c : cells) areas.push_back(polygon_area(c));
  return areas;
}

namespace {

void check_weights(std::span<const double> weights, std::size_t expected) {
  if (weights.size() != expected) {
    throw Error(ErrorCode::InvalidArgument, "weight count does not match site count");
  }
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite");
    }
  }
}

std::size_t at(int i) { return static_cast<std::size_t>(i); }

}  // namespace

Tessellation build_wsvt(std::span<const Generator> generators) {
  std::vector<UnitVec> points;
  std::vector<double> weights;
  points.reserve(generators.size());
  weights.reserve(generators.size());
  for (const auto& g : generators) {
    points.push_back(g.position);
    weights.push_back(g.weight);
  }
  check_weights(weights, points.size());
  return build_wsvt(convex_hull(points), weights);
}

Tessellation build_wsvt(const HullMesh& mesh, std::span<const double> weights) {
  check_weights(weights, mesh.vertex_count());
  Tessellation tess;
  tess.mesh = mesh;
  const auto& sites = mesh.sites();
  const auto& tris = mesh.triangles();
  const auto& adj = mesh.adjacency();

  tess.generators.reserve(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) tess.generators.push_back({sites[i], weights[i]});

  tess.vertices.reserve(tris.size());
  for (std::size_t t = 0; t < tris.size(); ++t) {
    const auto [a, b, c] = tris[t];
    try {
      tess.vertices.push_back(weighted_circumcenter(sites[at(a)], sites[at(b)], sites[at(c)],
                                                    weights[at(a)], weights[at(b)], weights[at(c)]));
    } catch (const Error& e) {
      throw Error(e.code(), "triangle " + std::to_string(t) + ": " + e.what(), t);
    }
  }

  // Walk the triangle fan around each site via adjacency: from (i, j, k) the
  // next triangle counter-clockwise about i is the one across edge (k, i).
  std::vector<std::pair<int, int>> first(sites.size(), {-1, -1});
  for (int t = 0; t < static_cast<int>(tris.size()); ++t) {
    for (int k = 0; k < 3; ++k) {
      auto& slot = first[at(tris[at(t)][at(k)])];
      if (slot.first < 0) slot = {t, k};
    }
  }
  tess.cell_triangles.resize(sites.size());
  tess.cells.resize(sites.size());
  for (std::size_t i = 0; i < sites.size(); ++i) {
    auto& ring = tess.cell_triangles[i];
    auto& cell = tess.cells[i];
    cell.generator_id = i;
    cell.anchor = sites[i];
    const auto [t0, k0] = first[i];
    int t = t0;
    int k = k0;
    do {
      ring.push_back(t);
      cell.vertices.push_back(tess.vertices[at(t)]);
      const int next = adj[at(t)][at((k + 2) % 3)];
      const auto& nt = tris[at(next)];
      k = static_cast<int>(std::find(nt.begin(), nt.end(), static_cast<int>(i)) - nt.begin());
      t = next;
    } while (t != t0 && ring.size() <= tris.size());
    if (!fan_is_positive(cell)) tess.overlap = true;
  }
  return tess;
}

namespace {

// Mutable triangulation used while flipping.
struct FlipState {
  const std::vector<UnitVec>& sites;
  std::span<const double> weights;
  std::vector<Triangle> tris;
  std::unordered_map<std::uint64_t, std::pair<int, int>> edge_tris;

  FlipState(const HullMesh& mesh, std::span<const double> w)
      : sites(mesh.sites()), weights(w), tris(mesh.triangles()) {
    for (const HullEdge& e : mesh.edges()) edge_tris[HullMesh::edge_key(e.a, e.b)] = {e.t0, e.t1};
  }

  // Returns the local index k with tris[t][k] == u and tris[t][k+1] == v.
  int local_edge(int t, int u, int v) const {
    const Triangle& tr = tris[at(t)];
    for (int k = 0; k < 3; ++k) {
      if (tr[at(k)] == u && tr[at((k + 1) % 3)] == v) return k;
    }
    return -1;
  }

  struct Quad {
    int x, y, c, d;  // t0 = (x, y, c), t1 = (y, x, d)
    int t0, t1;
  };

  Quad quad(std::uint64_t key) const {
    auto [t0, t1] = edge_tris.at(key);
    if (t0 > t1) std::swap(t0, t1);
    const int a = static_cast<int>(key >> 32);
    const int b = static_cast<int>(key & 0xffffffffULL);
    int k = local_edge(t0, a, b);
    int x = a, y = b;
    if (k < 0) {
      k = local_edge(t0, b, a);
      x = b;
      y = a;
    }
    const int c = tris[at(t0)][at((k + 2) % 3)];
    const int k1 = local_edge(t1, y, x);
    const int d = tris[at(t1)][at((k1 + 2) % 3)];
    return {x, y, c, d, t0, t1};
  }

  // nullopt when the circumcenter cannot be formed.
  std::optional<bool> is_wrong(std::uint64_t key) const {
    const Quad q = quad(key);
    try {
      const UnitVec center = weighted_circumcenter(sites[at(q.x)], sites[at(q.y)], sites[at(q.c)],
                                                   weights[at(q.x)], weights[at(q.y)], weights[at(q.c)]);
      const double opposite = weighted_distance(sites[at(q.d)], weights[at(q.d)], center);
      // The three distances agree unless the vertex was clamped onto the sphere;
      // then the smallest one decides.
      const double own = std::min({weighted_distance(sites[at(q.x)], weights[at(q.x)], center),
                                   weighted_distance(sites[at(q.y)], weights[at(q.y)], center),
                                   weighted_distance(sites[at(q.c)], weights[at(q.c)], center)});
      return opposite < own - tol::kWrongEdge;
    } catch (const Error&) {
      return std::nullopt;
    }
  }

  // Replaces diagonal (x, y) by (c, d). Returns false (and changes nothing)
  // if the new triangles would be inverted or the edge already exists.
  bool flip(std::uint64_t key) {
    const Quad q = quad(key);
    if (q.c == q.d || edge_tris.contains(HullMesh::edge_key(q.c, q.d))) return false;
    const Vec3& px = sites[at(q.x)];
    const Vec3& py = sites[at(q.y)];
    const Vec3& pc = sites[at(q.c)];
    const Vec3& pd = sites[at(q.d)];
    if (triple(pc, px, pd) <= tol::kCollinear || triple(pd, py, pc) <= tol::kCollinear) return false;

    tris[at(q.t0)] = {q.c, q.x, q.d};
    tris[at(q.t1)] = {q.d, q.y, q.c};
    edge_tris.erase(key);
    edge_tris[HullMesh::edge_key(q.c, q.d)] = {q.t0, q.t1};
    auto retarget = [this](int u, int v, int from, int to) {
      auto& pair = edge_tris.at(HullMesh::edge_key(u, v));
      if (pair.first == from) pair.first = to;
      else if (pair.second == from) pair.second = to;
    };
    retarget(q.x, q.d, q.t1, q.t0);
    retarget(q.y, q.c, q.t0, q.t1);
    return true;
  }
};

}  // namespace

EdgeReport detect_wrong_edges(const HullMesh& mesh, std::span<const double> weights) {
  check_weights(weights, mesh.vertex_count());
  FlipState state(mesh, weights);
  EdgeReport report;
  for (const HullEdge& e : mesh.edges()) {
    const auto wrong = state.is_wrong(HullMesh::edge_key(e.a, e.b));
    if (!wrong) {
      report.degenerate_edges.push_back(e);
    } else if (*wrong) {
      report.wrong_edges.push_back(e);
    }
  }
  report.residual_wrong = report.wrong_edges.size();
  return report;
}

SwapResult swap_wrong_edges(const HullMesh& mesh, std::span<const double> weights,
                            std::size_t max_swaps) {
  EdgeReport report = detect_wrong_edges(mesh, weights);
  if (report.wrong_edges.empty()) return {mesh, report};
  if (max_swaps == 0) max_swaps = 3 * mesh.edge_count();

  FlipState state(mesh, weights);
  std::unordered_set<std::uint64_t> wrong;
  for (const HullEdge& e : report.wrong_edges) wrong.insert(HullMesh::edge_key(e.a, e.b));

  std::deque<std::uint64_t> queue;
  std::unordered_set<std::uint64_t> queued;
  for (const HullEdge& e : mesh.edges()) {
    const auto key = HullMesh::edge_key(e.a, e.b);
    queue.push_back(key);
    queued.insert(key);
  }

  std::size_t best_count = wrong.size();
  std::vector<Triangle> best_tris = state.tris;
  auto refresh = [&](std::uint64_t key) {
    const auto w = state.is_wrong(key);
    if (w && *w) wrong.insert(key);
    else wrong.erase(key);
  };

  while (!queue.empty() && report.swaps_performed < max_swaps && !wrong.empty()) {
    const auto key = queue.front();
    queue.pop_front();
    queued.erase(key);
    if (!state.edge_tris.contains(key) || !wrong.contains(key)) continue;
    const auto q = state.quad(key);
    if (!state.flip(key)) continue;
    ++report.swaps_performed;
    wrong.erase(key);
    const std::uint64_t touched[] = {
        HullMesh::edge_key(q.c, q.d), HullMesh::edge_key(q.x, q.d), HullMesh::edge_key(q.d, q.y),
        HullMesh::edge_key(q.y, q.c), HullMesh::edge_key(q.c, q.x)};
    for (auto k : touched) {
      refresh(k);
      if (queued.insert(k).second) queue.push_back(k);
    }
    if (wrong.size() < best_count) {
      best_count = wrong.size();
      best_tris = state.tris;
    }
  }

  report.residual_wrong = best_count;
  return {HullMesh::from_triangles(mesh.sites(), std::move(best_tris)), report};
}

}  // namespace sphlayout
