#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "sphlayout/error.hpp"
#include "sphlayout/spherical_geometry.hpp"
#include "sphlayout/voronoi.hpp"

namespace sphlayout {

enum class ErrorMode { Max, Average };
enum class SwapPolicy { EachIteration, Never };

/// Which sign the weight update uses. Corrected: a cell larger than desired
/// loses weight. Literal: the printed form w(1 + (a - d)/d), kept for study;
/// it feeds back positively and does not settle.
enum class AdjustRule { Corrected, Literal };

struct LloydConfig {
  double epsilon = 5e-4;
  double delta = 1e-6;
  int max_iterations = 10000;
  std::uint64_t seed = 0;
  ErrorMode error_mode = ErrorMode::Max;
  SwapPolicy swap_policy = SwapPolicy::EachIteration;
  AdjustRule adjust_rule = AdjustRule::Corrected;

  void validate() const;
};

struct GeneratorState {
  UnitVec position;
  double weight = 0.0;   // working (power) weight
  double desired = 0.0;  // d_i, fraction of the sphere
  double actual = 0.0;   // a_i, fraction of the sphere
};

struct ConvergenceReport {
  int iterations = 0;
  double final_error = 0.0;
  std::vector<double> error_history;
  bool converged = false;
  std::size_t residual_wrong_edges = 0;
  int reseeds = 0;
};

struct WscvtResult {
  std::vector<UnitVec> positions;
  std::vector<GeneratorState> states;
  Tessellation tessellation;
  ConvergenceReport report;
};

/// Thrown by run_wscvt when the error threshold is not met. Carries the
/// lowest-error state seen.
class NotConverged : public Error {
 public:
  explicit NotConverged(WscvtResult best);
  const WscvtResult& best() const noexcept { return best_; }

 private:
  WscvtResult best_;
};

/// Uniform points on the sphere from a seeded stream; rejects candidates
/// closer than 1e-6 (chord) to an accepted point.
std::vector<UnitVec> initial_distribution(std::size_t n, std::uint64_t seed);

/// Corrected rule: w * (1 + step * (d - a) / d), floored at delta. The solver
/// uses step < 1 only when retrying a move that broke the partition.
double adjust_weight(double w, double desired, double actual, double delta,
                     AdjustRule rule = AdjustRule::Corrected, double step = 1.0);

double size_error(std::span<const GeneratorState> states, ErrorMode mode);

/// 4 d, the squared chord radius of a cap holding fraction d of the sphere
/// (cap area = pi * chord^2). The solver starts every site at the value for
/// the mean fraction 1/n.
double initial_working_weight(double desired);

/// Weighted spherical CVT. Each iteration builds the tessellation (with wrong
/// edge repair when the overlap flag is raised and the policy asks for it),
/// measures a_i, stops if the error is within epsilon, otherwise moves every
/// site to its cell centroid and updates the working weights.
///
/// After each update the working weights are shifted by a common offset so
/// their mean stays at the initial value, lifted if needed so that the
/// lightest stays at or above initial_working_weight(min d) / 4. A move whose
/// cells no longer partition the sphere is retried from the last valid state
/// with half the step (positions and weight update alike).
///
/// Geometric failures re-seed the offending site from the seeded stream, at
/// most 10 times. Throws NotConverged with the best state on failure.
WscvtResult run_wscvt(std::span<const double> weights, const LloydConfig& config);

}  // namespace sphlayout
