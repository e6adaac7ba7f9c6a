// Acceptance run: one PASS/FAIL line per criterion, details indented below.
// Exit status is the number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oracles.hpp"
#include "sphlayout/error.hpp"
#include "sphlayout/hull.hpp"
#include "sphlayout/layout_io.hpp"
#include "sphlayout/lloyd.hpp"
#include "sphlayout/report.hpp"
#include "sphlayout/tree_layout.hpp"
#include "sphlayout/trisphere.hpp"
#include "sphlayout/voronoi.hpp"

using namespace sphlayout;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool ok = true;
  std::vector<std::string> details;

  void check(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      details.push_back("failed: " + what);
    }
  }
  void note(const std::string& s) { details.push_back(s); }
};

int failures = 0;

void criterion(int id, const char* name, double budget_s, const std::function<void(Outcome&)>& body) {
  Outcome out;
  const auto start = Clock::now();
  try {
    body(out);
  } catch (const std::exception& e) {
    out.check(false, std::string("exception: ") + e.what());
  }
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  out.check(secs < budget_s, fmt::format("runtime {:.2f} s over budget {} s", secs, budget_s));
  failures += !out.ok;
  fmt::print("{} {} {} ({:.2f} s, budget {} s)\n", out.ok ? "PASS" : "FAIL", id, name, secs, budget_s);
  for (const auto& d : out.details) fmt::print("    {}\n", d);
  std::fflush(stdout);
}

// A sub-check of a criterion with its own runtime budget.
void part(Outcome& out, const char* name, double budget_s, void (*body)(Outcome&)) {
  const auto start = Clock::now();
  body(out);
  const double secs = std::chrono::duration<double>(Clock::now() - start).count();
  out.check(secs < budget_s, fmt::format("{}: runtime {:.2f} s over budget {} s", name, secs, budget_s));
  out.note(fmt::format("{}: {:.2f} s (budget {} s)", name, secs, budget_s));
}

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

std::vector<double> ramp(std::size_t n) {
  std::vector<double> w(n);
  std::iota(w.begin(), w.end(), 1.0);
  return w;
}

double max_cell_error(const WscvtResult& r) {
  const auto areas = r.tessellation.cell_areas();
  double err = 0.0;
  for (std::size_t i = 0; i < areas.size(); ++i) {
    err = std::max(err, std::abs(areas[i] / kSphereArea - r.states[i].desired));
  }
  return err;
}

TreeNode fanout_tree(const std::vector<int>& fanouts, const std::string& id = "r", std::size_t depth = 0) {
  TreeNode node{id, id, std::nullopt, {}};
  if (depth == fanouts.size()) return node;
  for (int i = 0; i < fanouts[depth]; ++i) {
    node.children.push_back(fanout_tree(fanouts, id + "." + std::to_string(i), depth + 1));
  }
  return node;
}

void waste_rows(Outcome& out) {
  struct Row {
    std::size_t n;
    std::size_t faces;
    const char* waste;
  };
  const Row rows[] = {{20, 20, "0"}, {50, 80, "37.5"}, {1000, 1280, "21.875"}, {1500, 5120, "70.703125"}};
  std::vector<std::size_t> counts;
  for (const auto& r : rows) counts.push_back(r.n);
  const auto report = report_comparison(counts, {}, false);
  const std::string text = format_report(report);
  for (std::size_t i = 0; i < std::size(rows); ++i) {
    const auto w = trisphere_layout(rows[i].n).waste;
    // Exact rational check: (F - n) / F with integers.
    const std::size_t unused = rows[i].faces - rows[i].n;
    out.check(w.faces == rows[i].faces && w.unused() == unused, fmt::format("n={} face count", rows[i].n));
    out.check(w.percent_exact() == rows[i].waste, fmt::format("n={} waste {} != {}", rows[i].n, w.percent_exact(), rows[i].waste));
    out.check(report[i].trisphere_waste == rows[i].waste, fmt::format("n={} report column", rows[i].n));
    out.check(text.find(std::string(rows[i].waste) + "%") != std::string::npos, fmt::format("n={} missing from table", rows[i].n));
    out.note(fmt::format("n={:<5} faces={:<5} waste={}%", rows[i].n, w.faces, w.percent_exact()));
  }
  out.check(fmt::format("{:.2f}", std::stod(report[3].trisphere_waste)) == "70.70", "1500 rounds to 70.70");
  out.check(std::stod(report[2].trisphere_waste) > 21.0, "1000 is more than 21%");
}

void example_hundred(Outcome& out) {
  const auto w = trisphere_layout(100).waste;
  out.check(w.faces == 320, "320 faces");
  out.check(w.unused() == 220, "220 unused");
  out.check(w.percent_exact() == "68.75", "68.75%");
  out.check(w.fraction() > 0.65, "more than 65%");
  out.note(fmt::format("faces={} unused={} waste={}%", w.faces, w.unused(), w.percent_exact()));
}

void ramp_hundred(Outcome& out) {
  int converged = 0;
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    LloydConfig config;
    config.seed = seed;
    const auto start = Clock::now();
    try {
      const auto r = run_wscvt(ramp(100), config);
      const double secs = seconds_since(start);
      const double cell = max_cell_error(r);
      const bool good = r.report.converged && r.report.final_error < 5e-4 && r.report.iterations <= 10000 &&
                        cell < 5e-4;
      converged += good;
      out.check(secs < 60.0, fmt::format("seed {} took {:.1f} s", seed, secs));
      out.note(fmt::format("seed {}: converged, {} iterations, error {:.3e}, max cell |a-d| {:.3e}, {:.2f} s", seed,
                           r.report.iterations, r.report.final_error, cell, secs));
    } catch (const NotConverged& e) {
      out.note(fmt::format("seed {}: not converged, best error {:.3e}, {:.2f} s", seed,
                           e.best().report.final_error, seconds_since(start)));
    }
  }
  out.check(converged >= 3, fmt::format("{} of 5 seeds converged", converged));
}

void full_surface(Outcome& out) {
  for (std::size_t n : {20u, 50u, 200u}) {
    const auto r = run_wscvt(std::vector<double>(n, 1.0), {});
    const auto areas = r.tessellation.cell_areas();
    const double total = std::accumulate(areas.begin(), areas.end(), 0.0);
    const double smallest = *std::min_element(areas.begin(), areas.end());
    const double rel = std::abs(total - kSphereArea) / kSphereArea;
    out.check(rel <= 1e-6, fmt::format("n={} area sum off by {:.2e}", n, rel));
    out.check(smallest > 0.0, fmt::format("n={} has an empty cell", n));
    out.check(!r.tessellation.overlap, fmt::format("n={} overlap flag", n));
    out.note(fmt::format("n={:<4} |sum/4pi - 1| = {:.2e}, smallest cell {:.4f} sr, {} iterations", n, rel, smallest,
                         r.report.iterations));
  }
}

void hull_oracle(Outcome& out) {
  std::size_t matched = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const std::size_t n = 4 + seed % 22;
    const auto pts = oracle::random_points(n, 5000 + seed);
    const auto mesh = convex_hull(pts);
    const bool same = oracle::sorted_faces(mesh.triangles()) == oracle::brute_force_hull(pts) && mesh.satisfies_euler();
    matched += same;
    out.check(same, fmt::format("seed {} n={} differs", seed, n));
  }
  out.note(fmt::format("{} of 50 hulls (n = 4..25) equal the brute-force hull", matched));
}

// Share of samples whose power-distance owner's polygon contains them, for
// config `seed` with weights spanning [scale, 10 scale].
double membership_agreement(std::uint64_t seed, double scale, const std::vector<UnitVec>& samples,
                            std::size_t* residual = nullptr) {
  const std::size_t n = 10 + 4 * seed;
  const auto pts = oracle::random_points(n, 9000 + seed);
  std::mt19937_64 rng(seed);
  std::vector<double> w(n);
  for (auto& x : w) x = scale * std::uniform_real_distribution<double>(1.0, 10.0)(rng);
  w[0] = scale;
  w[1] = 10 * scale;
  const auto repaired = swap_wrong_edges(convex_hull(pts), w);
  if (residual) *residual = repaired.report.residual_wrong;
  const auto t = build_wsvt(repaired.mesh, w);
  std::size_t agree = 0;
  for (const auto& y : samples) agree += polygon_contains(t.cells[oracle::power_argmin(pts, w, y)], y);
  return double(agree) / double(samples.size());
}

void membership_oracle(Outcome& out) {
  // Weights span a ratio of 10 at scale 1e-3. Cell edges are great-circle
  // arcs while exact power bisectors are small circles, so agreement depends
  // on the absolute scale; the sweep below shows how.
  const auto samples = oracle::random_points(100'000, 77);
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    std::size_t residual = 0;
    const double share = membership_agreement(seed, 1e-3, samples, &residual);
    out.check(share >= 0.999, fmt::format("config {} agreement {:.5f}", seed, share));
    out.note(fmt::format("config {}: n={:<2} weights 1e-3..1e-2, agreement {:.5f}, residual wrong edges {}", seed,
                         10 + 4 * seed, share, residual));
  }
  for (double scale : {1e-4, 1e-3, 1e-2, 1e-1}) {
    double lo = 1.0;
    double hi = 0.0;
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
      const double share = membership_agreement(seed, scale, samples);
      lo = std::min(lo, share);
      hi = std::max(hi, share);
    }
    out.note(fmt::format("scale sweep: weights {:g}..{:g}, agreement {:.5f}..{:.5f}", scale, 10 * scale, lo, hi));
  }
}

void area_and_centroid(Outcome& out) {
  std::mt19937_64 rng(123);
  double worst_area = 0.0;
  int checked = 0;
  while (checked < 1000) {
    const Vec3 axis = oracle::random_unit(rng);
    const double radius = checked % 2 ? 0.3 : 1.5;
    const Vec3 a = oracle::random_in_cap(rng, axis, radius);
    const Vec3 b = oracle::random_in_cap(rng, axis, radius);
    const Vec3 c = oracle::random_in_cap(rng, axis, radius);
    if (std::abs(triple(a, b, c)) < 1e-4) continue;
    ++checked;
    const SphericalTriangle t{UnitVec(a), UnitVec(b), UnitVec(c)};
    worst_area = std::max(worst_area, std::abs(triangle_area(t) - oracle::girard_area(t.a, t.b, t.c)));
  }
  out.check(worst_area <= 1e-10, fmt::format("area deviation {:.2e}", worst_area));
  out.note(fmt::format("1000 triangles: max |area - Girard| = {:.2e}", worst_area));

  // Centroids of Voronoi cells against the Monte-Carlo mean direction.
  std::vector<Generator> gens;
  for (const auto& p : oracle::random_points(40, 321)) gens.push_back({p, 1.0});
  const auto tess = build_wsvt(gens);
  double worst_centroid = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& cell = tess.cells[i];
    const Vec3 axis = gens[i].position.vec();
    double cap = 0.0;
    for (const auto& v : cell.vertices) cap = std::max(cap, oracle::angle_between(axis, v.vec()));
    const auto mc = oracle::sample_convex(oracle::ring_of(cell), axis, cap + 0.01, 1'000'000, 600 + i);
    const Vec3 mean = mc.mean / std::sqrt(dot(mc.mean, mc.mean));
    worst_centroid = std::max(worst_centroid, oracle::angle_between(mean, polygon_centroid(cell).vec()));
  }
  out.check(worst_centroid < 1e-2, fmt::format("centroid deviation {:.2e} rad", worst_centroid));
  out.note(fmt::format("10 cells: max angle to Monte-Carlo mean = {:.2e} rad", worst_centroid));
}

void reductions(Outcome& out) {
  double worst_center = 0.0;
  std::size_t wrong = 0;
  double worst_shift = 0.0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto pts = oracle::random_points(30, 7000 + seed);
    const double w = 0.05 * double(seed);
    std::vector<Generator> gens;
    for (const auto& p : pts) gens.push_back({p, w + 1e-3});
    const auto t = build_wsvt(gens);
    const auto& tris = t.mesh.triangles();
    for (std::size_t k = 0; k < tris.size(); ++k) {
      const Vec3 x = oracle::planar_circumcenter(pts[tris[k][0]], pts[tris[k][1]], pts[tris[k][2]]);
      worst_center = std::max(worst_center, norm(t.vertices[k].vec() - x / norm(x)));
    }
    wrong += detect_wrong_edges(t.mesh, std::vector<double>(30, w + 1e-3)).wrong_edges.size();

    std::mt19937_64 rng(seed);
    std::vector<double> base(30);
    for (auto& x : base) x = std::uniform_real_distribution<double>(1e-3, 1e-2)(rng);
    std::vector<double> shifted = base;
    for (auto& x : shifted) x += 0.25 + 0.1 * double(seed);
    const auto mesh = convex_hull(pts);
    const auto a = build_wsvt(mesh, base);
    const auto b = build_wsvt(mesh, shifted);
    for (std::size_t k = 0; k < a.vertices.size(); ++k) {
      worst_shift = std::max(worst_shift, norm(a.vertices[k].vec() - b.vertices[k].vec()));
    }
    const auto aa = a.cell_areas();
    const auto ba = b.cell_areas();
    for (std::size_t i = 0; i < aa.size(); ++i) worst_shift = std::max(worst_shift, std::abs(aa[i] - ba[i]));
  }
  out.check(worst_center <= 1e-10, fmt::format("circumcenter deviation {:.2e}", worst_center));
  out.check(wrong == 0, fmt::format("{} wrong edges with equal weights", wrong));
  out.check(worst_shift <= 1e-9, fmt::format("shift changed tessellation by {:.2e}", worst_shift));
  out.note(fmt::format("equal weights: max |vertex - circumcenter| = {:.2e}, wrong edges = {}", worst_center, wrong));
  out.note(fmt::format("additive shift: max vertex/area change = {:.2e}", worst_shift));
}

void tree_contract(Outcome& out) {
  const auto tree = fanout_tree({5, 3, 2});
  for (Algorithm algo : {Algorithm::Wscvt, Algorithm::TriSphere}) {
    LayoutConfig config;
    config.algorithm = algo;
    const auto a = layout_tree(tree, config);
    const auto b = layout_tree(tree, config);
    const auto name = to_string(algo);
    out.check(a.nodes.size() == 51, name + ": node count");
    std::size_t bad = layout_violations(a).size();
    for (const auto& n : a.nodes) {
      if (n.radius != double(n.level) || a.radii[n.level] != double(n.level)) ++bad;
      if (n.level == 0) {
        if (!(n.position == Vec3{0, 0, 0})) ++bad;
        continue;
      }
      if (std::abs(norm(n.position) - n.radius) > 1e-12) ++bad;
      if (!polygon_contains(n.region, n.direction, 1e-9)) ++bad;
      const auto& parent = a.nodes[*n.parent];
      if (parent.level == 0) continue;
      if (!polygon_contains(parent.region, n.direction, 1e-9)) ++bad;
      for (const auto& v : n.region.vertices) bad += !polygon_contains(parent.region, v, 1e-9);
    }
    out.check(bad == 0, fmt::format("{}: {} contract violations", name, bad));
    const bool same = write_layout_json(to_document(a)) == write_layout_json(to_document(b));
    out.check(same, name + ": runs differ");
    out.note(fmt::format("{}: {} nodes, radii 0..{}, violations {}, identical reruns {}", name, a.nodes.size(),
                         a.radii.size() - 1, bad, same ? "yes" : "no"));
  }
}

void edge_repair(Outcome& out) {
  for (double base : {0.02, 0.002}) {
    std::size_t before = 0;
    std::size_t after = 0;
    std::size_t left = 0;
    std::size_t swaps = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
      const auto pts = oracle::random_points(10, 8000 + seed);
      std::vector<double> w(10, base);
      w[seed % 10] = 100 * base;
      const auto result = swap_wrong_edges(convex_hull(pts), w);
      const auto& r = result.report;
      out.check(r.residual_wrong <= r.wrong_edges.size(), fmt::format("seed {} increased wrong edges", seed));
      out.check(r.residual_wrong == detect_wrong_edges(result.mesh, w).wrong_edges.size(),
                fmt::format("seed {} residual miscounted", seed));
      out.check(result.mesh.satisfies_euler() && result.mesh.vertex_count() == 10,
                fmt::format("seed {} broke the Euler relation", seed));
      before += r.wrong_edges.size();
      after += r.residual_wrong;
      left += r.residual_wrong > 0;
      swaps += r.swaps_performed;
    }
    out.note(fmt::format("base weight {}: wrong edges {} -> {} after {} swaps, {} of 100 sets keep residuals", base,
                         before, after, swaps, left));
  }
}

}  // namespace

int main() {
  criterion(1, "trisphere waste for 20, 50, 1000, 1500 exact", 1.0, waste_rows);
  criterion(2, "n=100 icosphere example", 1.0, example_hundred);
  criterion(3, "ramp 1..100 converges below 5e-4", 300.0, ramp_hundred);
  criterion(4, "wscvt uses the full surface", 120.0, full_surface);
  criterion(5, "oracle equivalences", 120.0, [](Outcome& out) {
    part(out, "hull", 30.0, hull_oracle);
    part(out, "cell membership", 60.0, membership_oracle);
    part(out, "area and centroid", 30.0, area_and_centroid);
  });
  criterion(6, "reduction invariants", 10.0, reductions);
  criterion(7, "tree layout contract", 30.0, tree_contract);
  criterion(8, "edge repair never increases wrong edges", 60.0, edge_repair);
  fmt::print("{} criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
