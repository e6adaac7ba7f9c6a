#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sphlayout/tree_layout.hpp"

namespace sphlayout {

/// Serialized form of a Layout. The header records the configuration that
/// produced it; numbers are written with 17 significant digits so a
/// write/parse round trip reproduces every double exactly.
struct LayoutDocument {
  struct Header {
    std::string algorithm;
    std::uint64_t seed = 0;
    double epsilon = 0.0;
    double delta = 0.0;
    int max_iterations = 0;
    std::string error_mode;
    double radius_scale = 1.0;
    int iterations = 0;
    double final_error = 0.0;
    double waste_percent = 0.0;
    std::size_t phantom_sites = 0;

    friend bool operator==(const Header&, const Header&) = default;
  };
  struct Node {
    std::string id;
    std::string label;
    std::optional<std::string> parent;
    int level = 0;
    std::array<double, 3> position{};
    double radius = 0.0;
    std::vector<std::array<double, 3>> region;

    friend bool operator==(const Node&, const Node&) = default;
  };

  Header header;
  std::vector<Node> nodes;

  friend bool operator==(const LayoutDocument&, const LayoutDocument&) = default;
};

LayoutDocument to_document(const Layout& layout);

std::string write_layout_json(const LayoutDocument& doc);

/// Throws ParseError on malformed input.
LayoutDocument parse_layout_json(std::string_view text);

}  // namespace sphlayout
