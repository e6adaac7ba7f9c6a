// sphlayout: spherical tree layout driver.
//
//   sphlayout layout --input tree.json --algorithm wscvt --out layout.json
//   sphlayout report --counts 20,50,1000,1500
//   sphlayout mesh --format cell-mesh --count 50 --out cells.obj

#include <cstdint>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "sphlayout/layout_io.hpp"
#include "sphlayout/lloyd.hpp"
#include "sphlayout/mesh_export.hpp"
#include "sphlayout/report.hpp"
#include "sphlayout/tree_io.hpp"
#include "sphlayout/tree_layout.hpp"
#include "sphlayout/trisphere.hpp"

namespace {

using namespace sphlayout;

struct SolverFlags {
  double epsilon = 5e-4;
  double delta = 1e-6;
  int max_iterations = 10000;
  std::uint64_t seed = 0;
  ErrorMode error_mode = ErrorMode::Max;

  void attach(CLI::App& app) {
    app.add_option("--epsilon", epsilon, "Size error threshold")->capture_default_str();
    app.add_option("--delta", delta, "Lower bound for working weights")->capture_default_str();
    app.add_option("--max-iters", max_iterations, "Iteration cap")->capture_default_str();
    app.add_option("--seed", seed, "Seed for the initial distribution")->capture_default_str();
    const std::map<std::string, ErrorMode> modes{{"max", ErrorMode::Max}, {"avg", ErrorMode::Average}};
    app.add_option("--error-mode", error_mode, "max or avg")
        ->transform(CLI::CheckedTransformer(modes, CLI::ignore_case))
        ->default_str("max");
  }

  LloydConfig config() const {
    LloydConfig c;
    c.epsilon = epsilon;
    c.delta = delta;
    c.max_iterations = max_iterations;
    c.seed = seed;
    c.error_mode = error_mode;
    return c;
  }
};

void emit(const std::string& out, const std::string& text) {
  if (out.empty() || out == "-") {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

void warn(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << '\n';
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spherical tree layout with weighted centroidal Voronoi tessellations"};
  app.require_subcommand(1);

  SolverFlags solver;

  auto* layout = app.add_subcommand("layout", "Lay out a tree read from JSON or a directory");
  std::string algorithm = "wscvt";
  std::string input;
  std::string layout_out;
  std::size_t max_depth = DirectoryOptions{}.max_depth;
  double radius_scale = 1.0;
  layout->add_option("--algorithm", algorithm, "wscvt or trisphere")
      ->check(CLI::IsMember({"wscvt", "trisphere"}))
      ->capture_default_str();
  layout->add_option("--input", input, "Tree JSON file or directory")->required();
  layout->add_option("--out", layout_out, "Output file (default: stdout)");
  layout->add_option("--max-depth", max_depth, "Directory depth cap")->capture_default_str();
  layout->add_option("--radius-scale", radius_scale, "Spacing between level spheres")->capture_default_str();
  solver.attach(*layout);

  auto* report = app.add_subcommand("report", "Compare TriSphere and WSCVT surface use");
  std::vector<std::size_t> counts{20, 50, 1000, 1500};
  report->add_option("--counts", counts, "Node counts")->delimiter(',')->capture_default_str();
  solver.attach(*report);

  auto* mesh = app.add_subcommand("mesh", "Export a tessellation or icosphere as OBJ");
  std::string format = "cell-mesh";
  std::optional<std::size_t> count;
  std::vector<double> weights;
  std::optional<int> icosphere;
  std::string mesh_out;
  mesh->add_option("--format", format, "cell-mesh or wireframe")
      ->check(CLI::IsMember({"cell-mesh", "wireframe"}))
      ->capture_default_str();
  auto* count_opt = mesh->add_option("--count", count, "WSCVT with this many equal weights");
  auto* weights_opt = mesh->add_option("--weights", weights, "WSCVT with these weights")->delimiter(',');
  auto* ico_opt = mesh->add_option("--icosphere", icosphere, "Icosphere subdivision level");
  count_opt->excludes(weights_opt)->excludes(ico_opt);
  weights_opt->excludes(ico_opt);
  mesh->add_option("--out", mesh_out, "Output file (default: stdout)");
  solver.attach(*mesh);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*layout) {
      LayoutConfig config;
      config.algorithm = parse_algorithm(algorithm);
      config.lloyd = solver.config();
      config.radius_scale = radius_scale;
      const IngestResult tree = ingest_tree(input, DirectoryOptions{max_depth});
      warn(tree.warnings);
      const Layout result = layout_tree(tree.root, config);
      emit(layout_out, write_layout_json(to_document(result)));
      std::cerr << fmt::format("{} nodes, depth {}, level-1 error {:.3e} after {} iterations\n",
                               result.nodes.size(), result.radii.size() - 1, result.final_error,
                               result.iterations);
    } else if (*report) {
      const auto rows = report_comparison(counts, solver.config());
      std::cout << format_report(rows);
      for (const auto& r : rows) {
        if (!r.failure.empty()) std::cerr << "n=" << r.n << ": " << r.failure << '\n';
      }
    } else if (*mesh) {
      const MeshFormat mesh_format = parse_mesh_format(format);
      if (icosphere) {
        emit(mesh_out, export_icosphere_obj(build_icosphere(*icosphere), mesh_format));
      } else {
        if (count) weights.assign(*count, 1.0);
        if (weights.empty()) throw Error(ErrorCode::InvalidArgument, "give --count, --weights or --icosphere");
        const WscvtResult result = run_wscvt(weights, solver.config());
        emit(mesh_out, export_tessellation_obj(result.tessellation, mesh_format));
        std::cerr << fmt::format("converged: error {:.3e} after {} iterations\n", result.report.final_error,
                                 result.report.iterations);
      }
    }
  } catch (const NotConverged& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
