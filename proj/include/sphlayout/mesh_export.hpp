#pragma once

#include <string>

#include "sphlayout/trisphere.hpp"
#include "sphlayout/voronoi.hpp"

namespace sphlayout {

enum class MeshFormat { CellMesh, Wireframe };

/// "cell-mesh" or "wireframe"; throws InvalidArgument otherwise.
MeshFormat parse_mesh_format(const std::string& name);

/// Wavefront OBJ text. Cell mesh: one object per cell ("o cell_<i>"), each
/// cell fan-triangulated from its first vertex. Wireframe: one closed
/// polyline per cell. The header comments state vertex and face (or line)
/// counts.
std::string export_tessellation_obj(const Tessellation& tess, MeshFormat format);

/// Shared vertices; faces, or each edge once as a line in wireframe form.
std::string export_icosphere_obj(const IcoSphere& sphere, MeshFormat format);

}  // namespace sphlayout
