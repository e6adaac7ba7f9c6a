#include "sphlayout/lloyd.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "sphlayout/tolerance.hpp"

namespace sphlayout {

void LloydConfig::validate() const {
  if (!(epsilon > 0.0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  if (!(delta > 0.0) || !(delta < 1e-2)) {
    throw Error(ErrorCode::InvalidArgument, "delta must be a small positive value");
  }
  if (max_iterations < 1) throw Error(ErrorCode::InvalidArgument, "max_iterations must be >= 1");
}

NotConverged::NotConverged(WscvtResult best)
    : Error(ErrorCode::NotConverged,
            "error " + std::to_string(best.report.final_error) + " after " +
                std::to_string(best.report.iterations) + " iterations"),
      best_(std::move(best)) {}

namespace {

constexpr double kMinInitialChord = 1e-6;
constexpr int kMaxReseeds = 10;
constexpr double kPartitionTolerance = 1e-6;
constexpr double kMinStep = 1.0 / 64.0;
constexpr double kMinWeightFraction = 0.25;

class SphereSampler {
 public:
  explicit SphereSampler(std::uint64_t seed) : rng_(seed) {}

  UnitVec next() {
    const double z = 2.0 * uniform() - 1.0;
    const double phi = 2.0 * kPi * uniform();
    const double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return UnitVec(Vec3{r * std::cos(phi), r * std::sin(phi), z});
  }

  // A point at least kMinInitialChord away from every point in `taken`.
  UnitVec next_apart(std::span<const UnitVec> taken, std::size_t skip = SIZE_MAX) {
    for (;;) {
      const UnitVec candidate = next();
      bool ok = true;
      for (std::size_t i = 0; i < taken.size() && ok; ++i) {
        if (i != skip && norm(candidate.vec() - taken[i].vec()) < kMinInitialChord) ok = false;
      }
      if (ok) return candidate;
    }
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(rng_() % n); }

 private:
  double uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  std::mt19937_64 rng_;
};

std::vector<UnitVec> sample_points(SphereSampler& sampler, std::size_t n) {
  std::vector<UnitVec> points;
  points.reserve(n);
  while (points.size() < n) points.push_back(sampler.next_apart(points));
  return points;
}

}  // namespace

std::vector<UnitVec> initial_distribution(std::size_t n, std::uint64_t seed) {
  SphereSampler sampler(seed);
  return sample_points(sampler, n);
}

double adjust_weight(double w, double desired, double actual, double delta, AdjustRule rule,
                     double step) {
  const double relative = step * (actual - desired) / desired;
  const double adjusted = rule == AdjustRule::Corrected ? w * (1.0 - relative) : w * (1.0 + relative);
  return adjusted > delta ? adjusted : delta;
}

double size_error(std::span<const GeneratorState> states, ErrorMode mode) {
  if (states.empty()) return 0.0;
  double max_err = 0.0;
  double sum = 0.0;
  for (const auto& s : states) {
    const double e = std::abs(s.actual - s.desired);
    max_err = std::max(max_err, e);
    sum += e;
  }
  return mode == ErrorMode::Max ? max_err : sum / static_cast<double>(states.size());
}

double initial_working_weight(double desired) {
  return 4.0 * desired;
}

WscvtResult run_wscvt(std::span<const double> weights, const LloydConfig& config) {
  config.validate();
  const std::size_t n = weights.size();
  if (n < 4) throw Error(ErrorCode::TooFewPoints, "WSCVT needs at least 4 weights");
  for (double w : weights) {
    if (!(w > 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::InvalidArgument, "weights must be positive and finite");
    }
  }
  const double total = std::accumulate(weights.begin(), weights.end(), 0.0);

  // Every site starts with the same working weight, so the first
  // tessellation is the unweighted one and always partitions the sphere.
  const double start = std::max(initial_working_weight(1.0 / static_cast<double>(n)), config.delta);
  std::vector<GeneratorState> states(n);
  for (std::size_t i = 0; i < n; ++i) {
    states[i].desired = weights[i] / total;
    states[i].weight = start;
  }
  const double min_desired =
      std::min_element(states.begin(), states.end(), [](const auto& a, const auto& b) {
        return a.desired < b.desired;
      })->desired;
  const double min_weight = kMinWeightFraction * initial_working_weight(min_desired);
  const double weight_sum = std::accumulate(states.begin(), states.end(), 0.0,
                                            [](double s, const GeneratorState& g) { return s + g.weight; });

  SphereSampler sampler(config.seed);
  std::vector<UnitVec> positions = sample_points(sampler, n);

  WscvtResult best;
  best.report.final_error = std::numeric_limits<double>::infinity();
  ConvergenceReport report;
  std::vector<double> working(n);
  std::vector<double> areas(n);

  // State the next move starts from: the last iteration whose cells
  // partitioned the sphere. A move that breaks the partition is retried from
  // here with half the step.
  std::vector<UnitVec> base_positions;
  std::vector<UnitVec> base_targets(n);
  std::vector<double> base_weights(n);
  std::vector<double> base_actual(n);
  double step = 1.0;

  while (report.iterations < config.max_iterations) {
    for (std::size_t i = 0; i < n; ++i) working[i] = states[i].weight;

    Tessellation tess;
    std::size_t residual = 0;
    try {
      HullMesh mesh = convex_hull(positions);
      try {
        tess = build_wsvt(mesh, working);
        if (tess.overlap && config.swap_policy == SwapPolicy::EachIteration) {
          SwapResult repaired = swap_wrong_edges(mesh, working);
          residual = repaired.report.residual_wrong;
          if (repaired.report.swaps_performed > 0) tess = build_wsvt(repaired.mesh, working);
        } else if (tess.overlap) {
          residual = detect_wrong_edges(mesh, working).wrong_edges.size();
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CircumcenterAtOrigin || !e.index()) throw;
        // Re-seed the lightest site of the offending triangle.
        const Triangle& t = mesh.triangles()[*e.index()];
        const int victim = *std::min_element(t.begin(), t.end(), [&](int a, int b) {
          return working[static_cast<std::size_t>(a)] < working[static_cast<std::size_t>(b)];
        });
        throw Error(ErrorCode::CircumcenterAtOrigin, e.what(), static_cast<std::size_t>(victim));
      }
    } catch (const Error& e) {
      const bool recoverable = e.code() == ErrorCode::CircumcenterAtOrigin ||
                               e.code() == ErrorCode::DegenerateInput ||
                               e.code() == ErrorCode::DegenerateTriangle ||
                               e.code() == ErrorCode::DegenerateCentroid;
      if (!recoverable) throw;
      if (++report.reseeds > kMaxReseeds) break;
      const std::size_t victim = e.index() && *e.index() < n ? *e.index() : sampler.index(n);
      positions[victim] = sampler.next_apart(positions, victim);
      continue;
    }

    ++report.iterations;
    double area_sum = 0.0;
    bool partition = true;
    for (std::size_t i = 0; i < n; ++i) {
      areas[i] = polygon_area(tess.cells[i]);
      if (!(areas[i] > 0.0) || !std::isfinite(areas[i])) partition = false;
      area_sum += areas[i];
      states[i].position = positions[i];
      states[i].actual = std::clamp(areas[i] / kSphereArea, 0.0, 1.0);
    }
    if (std::abs(area_sum - kSphereArea) > kPartitionTolerance * kSphereArea) partition = false;

    const double err = size_error(states, config.error_mode);
    report.error_history.push_back(err);
    report.residual_wrong_edges = residual;
    report.final_error = err;

    if (partition && err < best.report.final_error) {
      best.positions = positions;
      best.states = states;
      best.tessellation = tess;
      best.report.final_error = err;
      best.report.residual_wrong_edges = residual;
    }
    if (partition && err <= config.epsilon) {
      report.converged = true;
      return WscvtResult{positions, states, std::move(tess), std::move(report)};
    }

    if (partition || base_positions.empty() || step < kMinStep) {
      base_positions = positions;
      for (std::size_t i = 0; i < n; ++i) {
        base_weights[i] = states[i].weight;
        base_actual[i] = states[i].actual;
        base_targets[i] = positions[i];
        try {
          if (areas[i] > 0.0) base_targets[i] = polygon_centroid(tess.cells[i]);
        } catch (const Error&) {
          // keep the site where it is
        }
      }
      step = std::min(1.0, 2.0 * step);
    } else {
      step *= 0.5;
    }

    for (std::size_t i = 0; i < n; ++i) {
      const Vec3& from = base_positions[i];
      positions[i] = step == 1.0 ? base_targets[i] : UnitVec(from + step * (base_targets[i].vec() - from));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      states[i].weight = adjust_weight(base_weights[i], states[i].desired, base_actual[i], config.delta,
                                       config.adjust_rule, step);
      sum += states[i].weight;
    }
    // Only weight differences shape the cells, so the common offset is free.
    // Keep the mean at its initial value, but never let the lightest site
    // sink toward the floor, where it could no longer shrink its cell.
    double shift = (weight_sum - sum) / static_cast<double>(n);
    const double lightest =
        std::min_element(states.begin(), states.end(), [](const auto& a, const auto& b) {
          return a.weight < b.weight;
        })->weight;
    if (lightest + shift < min_weight) shift = min_weight - lightest;
    for (auto& s : states) s.weight = std::max(s.weight + shift, config.delta);
  }

  best.report.iterations = report.iterations;
  best.report.error_history = report.error_history;
  best.report.reseeds = report.reseeds;
  best.report.converged = false;
  throw NotConverged(std::move(best));
}

}  // namespace sphlayout
