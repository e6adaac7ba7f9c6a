#include "sphlayout/report.hpp"

#include <cmath>

#include <fmt/format.h>

#include "sphlayout/error.hpp"
#include "sphlayout/trisphere.hpp"

namespace sphlayout {

std::vector<ReportRow> report_comparison(std::span<const std::size_t> counts, const LloydConfig& config,
                                         bool with_wscvt) {
  std::vector<ReportRow> rows;
  for (std::size_t n : counts) {
    ReportRow row;
    row.n = n;
    try {
      const int level = trisphere_level(n);
      if (n == 0 || level > kMaxIcosphereLevel) throw Error(ErrorCode::LevelTooLarge, "no icosphere fits");
      const WasteStats waste{level, icosphere_face_count(level), n};
      row.trisphere_faces = waste.faces;
      row.trisphere_waste = waste.percent_exact();
      if (!with_wscvt) {
        row.wscvt_skipped = true;
        rows.push_back(std::move(row));
        continue;
      }

      const std::vector<double> weights(n, 1.0);
      const WscvtResult result = run_wscvt(weights, config);
      double covered = 0.0;
      for (double a : result.tessellation.cell_areas()) covered += a;
      row.wscvt_ok = true;
      row.wscvt_waste = 100.0 * std::abs(covered / kSphereArea - 1.0);
      row.wscvt_error = result.report.final_error;
      row.iterations = result.report.iterations;
    } catch (const Error& e) {
      row.failure = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string format_report(std::span<const ReportRow> rows) {
  std::string out = fmt::format("{:>6}  {:>15}  {:>15}  {:>11}  {:>11}  {:>10}\n", "n", "trisphere_faces",
                                "trisphere_waste", "wscvt_waste", "wscvt_error", "iterations");
  for (const auto& r : rows) {
    const std::string tri_faces = r.trisphere_faces ? std::to_string(r.trisphere_faces) : "-";
    const std::string tri_waste = r.trisphere_faces ? r.trisphere_waste + "%" : "-";
    out += fmt::format("{:>6}  {:>15}  {:>15}  ", r.n, tri_faces, tri_waste);
    if (r.wscvt_skipped) {
      out += fmt::format("{:>11}  {:>11}  {:>10}\n", "-", "-", "-");
    } else if (r.wscvt_ok) {
      out += fmt::format("{:>10.6f}%  {:>11.3e}  {:>10}\n", r.wscvt_waste, r.wscvt_error, r.iterations);
    } else {
      out += fmt::format("FAILED: {}\n", r.failure);
    }
  }
  return out;
}

}  // namespace sphlayout
