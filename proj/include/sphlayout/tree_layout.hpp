#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sphlayout/lloyd.hpp"
#include "sphlayout/restricted_placement.hpp"
#include "sphlayout/spherical_geometry.hpp"

namespace sphlayout {

struct TreeNode {
  std::string id;
  std::string label;
  std::optional<double> explicit_weight;
  std::vector<TreeNode> children;

  bool is_leaf() const noexcept { return children.empty(); }
};

/// Edges on the longest root-to-leaf path (a lone root has depth 0).
std::size_t tree_depth(const TreeNode& root);
std::size_t tree_size(const TreeNode& root);

/// Throws InvalidArgument on an empty or repeated id.
void validate_tree(const TreeNode& root);

/// Per node id: the explicit weight if given, 1 for an unweighted leaf, and
/// the sum of the children's weights otherwise (the leaf count when no
/// weights are given). Throws NonPositiveExplicitWeight.
std::unordered_map<std::string, double> subtree_weights(const TreeNode& root);

enum class Algorithm { Wscvt, TriSphere };

std::string to_string(Algorithm a);

/// Throws InvalidArgument for anything other than "wscvt" / "trisphere".
Algorithm parse_algorithm(const std::string& name);

struct LayoutConfig {
  Algorithm algorithm = Algorithm::Wscvt;
  LloydConfig lloyd;
  RestrictedConfig restricted;
  double radius_scale = 1.0;  // level k lies on the sphere of radius k * scale
};

struct NodePlacement {
  std::string id;
  std::string label;
  int level = 0;
  std::optional<std::size_t> parent;
  std::vector<std::size_t> children;
  double weight = 0.0;
  UnitVec direction;        // position / radius; unused for the root
  Vec3 position{};          // origin for the root
  double radius = 0.0;
  SphericalPolygon region;  // on the unit sphere; empty for the root
};

struct Layout {
  LayoutConfig config;
  std::vector<NodePlacement> nodes;  // preorder, root first
  std::vector<double> radii;         // radii[k] for level k
  int iterations = 0;                // WSCVT iterations at level 1
  double final_error = 0.0;          // WSCVT size error at level 1
  double waste_percent = 0.0;        // TriSphere unused faces at level 1
  std::size_t phantom_sites = 0;     // padding used when the root has < 4 children

  const NodePlacement& find(const std::string& id) const;
};

/// Places level-1 nodes with the chosen algorithm and every deeper group of
/// siblings inside the radial projection of its parent's region: by
/// restricted_placement for WSCVT, by subdividing the parent's triangle for
/// TriSphere.
///
/// WSCVT needs four sites; a root with fewer children is padded with
/// phantom sites of the largest child weight, whose cells stay unused.
/// Throws InvalidArgument for a lone root, propagates solver errors, and
/// throws RegionTooSmall naming the node whose region cannot hold its
/// children.
Layout layout_tree(const TreeNode& root, const LayoutConfig& config = {});

/// Contract violations, one message each: positions outside their region,
/// regions escaping the parent's region, radii off their level sphere.
std::vector<std::string> layout_violations(const Layout& layout, double slack = 1e-9);

}  // namespace sphlayout
