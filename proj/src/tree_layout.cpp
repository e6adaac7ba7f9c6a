#include "sphlayout/tree_layout.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <unordered_set>

#include "sphlayout/error.hpp"
#include "sphlayout/trisphere.hpp"

namespace sphlayout {

std::size_t tree_depth(const TreeNode& root) {
  std::size_t depth = 0;
  for (const auto& c : root.children) depth = std::max(depth, 1 + tree_depth(c));
  return depth;
}

std::size_t tree_size(const TreeNode& root) {
  std::size_t n = 1;
  for (const auto& c : root.children) n += tree_size(c);
  return n;
}

void validate_tree(const TreeNode& root) {
  std::unordered_set<std::string> seen;
  std::function<void(const TreeNode&)> visit = [&](const TreeNode& node) {
    if (node.id.empty()) throw Error(ErrorCode::InvalidArgument, "node with empty id");
    if (!seen.insert(node.id).second) {
      throw Error(ErrorCode::InvalidArgument, "duplicate node id '" + node.id + "'");
    }
    for (const auto& c : node.children) visit(c);
  };
  visit(root);
}

std::unordered_map<std::string, double> subtree_weights(const TreeNode& root) {
  std::unordered_map<std::string, double> weights;
  std::function<double(const TreeNode&)> visit = [&](const TreeNode& node) {
    double w = node.is_leaf() ? 1.0 : 0.0;
    for (const auto& c : node.children) w += visit(c);
    if (node.explicit_weight) {
      if (!(*node.explicit_weight > 0.0) || !std::isfinite(*node.explicit_weight)) {
        throw Error(ErrorCode::NonPositiveExplicitWeight,
                    "node '" + node.id + "' has weight " + std::to_string(*node.explicit_weight));
      }
      w = *node.explicit_weight;
    }
    weights[node.id] = w;
    return w;
  };
  visit(root);
  return weights;
}

std::string to_string(Algorithm a) { return a == Algorithm::Wscvt ? "wscvt" : "trisphere"; }

Algorithm parse_algorithm(const std::string& name) {
  if (name == "wscvt") return Algorithm::Wscvt;
  if (name == "trisphere") return Algorithm::TriSphere;
  throw Error(ErrorCode::InvalidArgument, "unknown algorithm '" + name + "'");
}

const NodePlacement& Layout::find(const std::string& id) const {
  for (const auto& n : nodes) {
    if (n.id == id) return n;
  }
  throw Error(ErrorCode::InvalidArgument, "no node '" + id + "'");
}

namespace {

SphericalPolygon triangle_region(const SphericalTriangle& t) {
  SphericalPolygon p;
  p.vertices = {t.a, t.b, t.c};
  p.anchor = triangle_centroid(t);
  return p;
}

struct Placement {
  std::vector<UnitVec> directions;
  std::vector<SphericalPolygon> regions;
};

Placement place_first_level(const std::vector<double>& weights, const LayoutConfig& config,
                            Layout& layout) {
  Placement out;
  const std::size_t m = weights.size();
  if (config.algorithm == Algorithm::TriSphere) {
    const TriSphereLayout tri = trisphere_layout(m);
    layout.waste_percent = 100.0 * tri.waste.fraction();
    for (std::size_t i = 0; i < m; ++i) {
      out.directions.push_back(tri.positions[i]);
      out.regions.push_back(triangle_region(tri.sphere.triangle(i)));
    }
    return out;
  }

  std::vector<double> sites = weights;
  if (m < 4) {
    const double heaviest = *std::max_element(weights.begin(), weights.end());
    layout.phantom_sites = 4 - m;
    sites.resize(4, heaviest);
  }
  const WscvtResult result = run_wscvt(sites, config.lloyd);
  layout.iterations = result.report.iterations;
  layout.final_error = result.report.final_error;
  for (std::size_t i = 0; i < m; ++i) {
    SphericalPolygon cell = result.tessellation.cells[i];
    cell.generator_id.reset();
    const UnitVec site = pull_inside(cell, result.positions[i]);
    cell.anchor = site;
    out.directions.push_back(site);
    out.regions.push_back(std::move(cell));
  }
  return out;
}

Placement place_inside(const NodePlacement& parent, const std::vector<double>& weights,
                       const LayoutConfig& config) {
  Placement out;
  try {
    if (config.algorithm == Algorithm::TriSphere) {
      const auto& v = parent.region.vertices;
      const auto pieces = subdivide_until(SphericalTriangle{v[0], v[1], v[2]}, weights.size());
      for (std::size_t i = 0; i < weights.size(); ++i) {
        out.directions.push_back(triangle_centroid(pieces[i]));
        out.regions.push_back(triangle_region(pieces[i]));
      }
    } else {
      RegionSplit split = restricted_placement(parent.region, weights, config.restricted);
      out.directions = std::move(split.positions);
      out.regions = std::move(split.regions);
    }
  } catch (const Error& e) {
    if (e.code() != ErrorCode::RegionTooSmall) throw;
    throw Error(ErrorCode::RegionTooSmall, "node '" + parent.id + "': " + e.what());
  }
  return out;
}

}  // namespace

Layout layout_tree(const TreeNode& root, const LayoutConfig& config) {
  validate_tree(root);
  if (root.is_leaf()) throw Error(ErrorCode::InvalidArgument, "tree needs at least one level below the root");
  if (!(config.radius_scale > 0.0)) throw Error(ErrorCode::InvalidArgument, "radius scale must be positive");
  const auto weights = subtree_weights(root);

  Layout layout;
  layout.config = config;
  const std::size_t depth = tree_depth(root);
  for (std::size_t k = 0; k <= depth; ++k) layout.radii.push_back(static_cast<double>(k) * config.radius_scale);

  // Flatten in preorder, remembering where each node's TreeNode lives.
  std::vector<const TreeNode*> source;
  std::function<std::size_t(const TreeNode&, int, std::optional<std::size_t>)> flatten =
      [&](const TreeNode& node, int level, std::optional<std::size_t> parent) {
        const std::size_t index = layout.nodes.size();
        NodePlacement p;
        p.id = node.id;
        p.label = node.label;
        p.level = level;
        p.parent = parent;
        p.weight = weights.at(node.id);
        layout.nodes.push_back(std::move(p));
        source.push_back(&node);
        for (const auto& c : node.children) {
          const std::size_t child = flatten(c, level + 1, index);
          layout.nodes[index].children.push_back(child);
        }
        return index;
      };
  flatten(root, 0, std::nullopt);

  auto assign = [&](const std::vector<std::size_t>& ids, Placement placement) {
    for (std::size_t i = 0; i < ids.size(); ++i) {
      NodePlacement& n = layout.nodes[ids[i]];
      n.radius = layout.radii[static_cast<std::size_t>(n.level)];
      n.direction = placement.directions[i];
      n.position = n.radius * n.direction.vec();
      n.region = std::move(placement.regions[i]);
    }
  };

  // Preorder guarantees a parent is placed before its children.
  for (std::size_t index = 0; index < layout.nodes.size(); ++index) {
    const NodePlacement& node = layout.nodes[index];
    if (node.children.empty()) continue;
    std::vector<double> child_weights;
    for (std::size_t c : node.children) child_weights.push_back(layout.nodes[c].weight);
    const std::vector<std::size_t> ids = node.children;
    if (node.level == 0) {
      assign(ids, place_first_level(child_weights, config, layout));
    } else {
      assign(ids, place_inside(node, child_weights, config));
    }
  }
  return layout;
}

std::vector<std::string> layout_violations(const Layout& layout, double slack) {
  std::vector<std::string> out;
  for (const auto& n : layout.nodes) {
    const double expected = layout.radii.at(static_cast<std::size_t>(n.level));
    if (std::abs(norm(n.position) - expected) > 1e-9 * std::max(1.0, expected)) {
      out.push_back("node '" + n.id + "' is off its level sphere");
    }
    if (!n.parent) continue;
    if (!polygon_contains(n.region, n.direction, slack)) {
      out.push_back("node '" + n.id + "' lies outside its region");
    }
    const NodePlacement& parent = layout.nodes[*n.parent];
    if (parent.parent) {
      if (!polygon_contains(parent.region, n.direction, slack)) {
        out.push_back("node '" + n.id + "' lies outside its parent's region");
      }
      for (const auto& v : n.region.vertices) {
        if (!polygon_contains(parent.region, v, slack)) {
          out.push_back("region of '" + n.id + "' escapes its parent's region");
          break;
        }
      }
    }
  }
  return out;
}

}  // namespace sphlayout
