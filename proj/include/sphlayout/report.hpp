#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "sphlayout/lloyd.hpp"

namespace sphlayout {

struct ReportRow {
  std::size_t n = 0;
  std::size_t trisphere_faces = 0;
  std::string trisphere_waste;  // exact percent, e.g. "70.703125"
  bool wscvt_ok = false;
  double wscvt_waste = 0.0;     // percent of the sphere not covered, 100 |sum a_i - 1|
  double wscvt_error = 0.0;     // final size error
  int iterations = 0;
  bool wscvt_skipped = false;
  std::string failure;          // set when the WSCVT run failed
};

/// One row per node count. TriSphere columns are analytic; WSCVT columns
/// come from an equal-weight run with `config`, skipped when `with_wscvt` is
/// false. A failed run marks its row and the remaining rows are still computed.
std::vector<ReportRow> report_comparison(std::span<const std::size_t> counts, const LloydConfig& config,
                                         bool with_wscvt = true);

/// Fixed-width text table with the columns n, trisphere_faces,
/// trisphere_waste, wscvt_waste, wscvt_error, iterations.
std::string format_report(std::span<const ReportRow> rows);

}  // namespace sphlayout
