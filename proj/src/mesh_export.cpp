#include "sphlayout/mesh_export.hpp"

#include <set>
#include <utility>

#include <fmt/format.h>

#include "sphlayout/error.hpp"

namespace sphlayout {

MeshFormat parse_mesh_format(const std::string& name) {
  if (name == "cell-mesh") return MeshFormat::CellMesh;
  if (name == "wireframe") return MeshFormat::Wireframe;
  throw Error(ErrorCode::InvalidArgument, "unknown mesh format '" + name + "'");
}

namespace {

std::string vertex_line(const Vec3& v) { return fmt::format("v {:.17g} {:.17g} {:.17g}\n", v.x, v.y, v.z); }

}  // namespace

std::string export_tessellation_obj(const Tessellation& tess, MeshFormat format) {
  std::size_t vertices = 0;
  std::size_t elements = 0;
  for (const auto& cell : tess.cells) {
    const std::size_t k = cell.vertices.size();
    vertices += k;
    if (format == MeshFormat::CellMesh) elements += k >= 3 ? k - 2 : 0;
    else elements += k >= 2 ? 1 : 0;
  }
  std::string body;
  std::size_t base = 1;
  for (std::size_t i = 0; i < tess.cells.size(); ++i) {
    const auto& ring = tess.cells[i].vertices;
    body += fmt::format("o cell_{}\n", i);
    for (const auto& v : ring) body += vertex_line(v);
    if (format == MeshFormat::CellMesh) {
      for (std::size_t k = 1; k + 1 < ring.size(); ++k) {
        body += fmt::format("f {} {} {}\n", base, base + k, base + k + 1);
      }
    } else if (ring.size() >= 2) {
      body += "l";
      for (std::size_t k = 0; k < ring.size(); ++k) body += fmt::format(" {}", base + k);
      body += fmt::format(" {}\n", base);
    }
    base += ring.size();
  }
  const char* kind = format == MeshFormat::CellMesh ? "faces" : "lines";
  return fmt::format("# spherical voronoi tessellation, {} cells\n# vertices: {}\n# {}: {}\n",
                     tess.cells.size(), vertices, kind, elements) +
         body;
}

std::string export_icosphere_obj(const IcoSphere& sphere, MeshFormat format) {
  std::string body = "o icosphere\n";
  for (const auto& v : sphere.vertices) body += vertex_line(v);
  std::size_t elements = 0;
  if (format == MeshFormat::CellMesh) {
    for (const auto& [a, b, c] : sphere.faces) body += fmt::format("f {} {} {}\n", a + 1, b + 1, c + 1);
    elements = sphere.faces.size();
  } else {
    std::set<std::pair<int, int>> edges;
    for (const auto& t : sphere.faces) {
      for (int k = 0; k < 3; ++k) {
        const int a = t[static_cast<std::size_t>(k)];
        const int b = t[static_cast<std::size_t>((k + 1) % 3)];
        edges.emplace(std::min(a, b), std::max(a, b));
      }
    }
    for (const auto& [a, b] : edges) body += fmt::format("l {} {}\n", a + 1, b + 1);
    elements = edges.size();
  }
  const char* kind = format == MeshFormat::CellMesh ? "faces" : "lines";
  return fmt::format("# icosphere level {}\n# vertices: {}\n# {}: {}\n", sphere.level,
                     sphere.vertices.size(), kind, elements) +
         body;
}

}  // namespace sphlayout
