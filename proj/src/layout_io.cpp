#include "sphlayout/layout_io.hpp"

#include <fmt/format.h>

#include "json.hpp"
#include "sphlayout/error.hpp"

namespace sphlayout {

using nlohmann::json;

namespace {

std::string number(double x) { return fmt::format("{:.17g}", x); }

std::string triple(const std::array<double, 3>& v) {
  return "[" + number(v[0]) + ", " + number(v[1]) + ", " + number(v[2]) + "]";
}

// JSON string literal with the escapes the format requires.
std::string json_string(std::string_view s) { return json(std::string(s)).dump(); }

std::array<double, 3> as_array(const Vec3& v) { return {v.x, v.y, v.z}; }

}  // namespace

LayoutDocument to_document(const Layout& layout) {
  LayoutDocument doc;
  const auto& c = layout.config;
  doc.header = {to_string(c.algorithm),
                c.lloyd.seed,
                c.lloyd.epsilon,
                c.lloyd.delta,
                c.lloyd.max_iterations,
                c.lloyd.error_mode == ErrorMode::Max ? "max" : "avg",
                c.radius_scale,
                layout.iterations,
                layout.final_error,
                layout.waste_percent,
                layout.phantom_sites};
  for (const auto& n : layout.nodes) {
    LayoutDocument::Node node;
    node.id = n.id;
    node.label = n.label;
    if (n.parent) node.parent = layout.nodes[*n.parent].id;
    node.level = n.level;
    node.position = as_array(n.position);
    node.radius = n.radius;
    for (const auto& v : n.region.vertices) node.region.push_back(as_array(v.vec()));
    doc.nodes.push_back(std::move(node));
  }
  return doc;
}

std::string write_layout_json(const LayoutDocument& doc) {
  const auto& h = doc.header;
  std::string out = "{\n  \"header\": {\n";
  out += fmt::format("    \"algorithm\": {},\n", json_string(h.algorithm));
  out += fmt::format("    \"seed\": {},\n", h.seed);
  out += fmt::format("    \"epsilon\": {},\n", number(h.epsilon));
  out += fmt::format("    \"delta\": {},\n", number(h.delta));
  out += fmt::format("    \"max_iterations\": {},\n", h.max_iterations);
  out += fmt::format("    \"error_mode\": {},\n", json_string(h.error_mode));
  out += fmt::format("    \"radius_scale\": {},\n", number(h.radius_scale));
  out += fmt::format("    \"iterations\": {},\n", h.iterations);
  out += fmt::format("    \"final_error\": {},\n", number(h.final_error));
  out += fmt::format("    \"waste_percent\": {},\n", number(h.waste_percent));
  out += fmt::format("    \"phantom_sites\": {}\n", h.phantom_sites);
  out += "  },\n  \"nodes\": [";
  for (std::size_t i = 0; i < doc.nodes.size(); ++i) {
    const auto& n = doc.nodes[i];
    out += i == 0 ? "\n" : ",\n";
    out += fmt::format("    {{\"id\": {}, \"label\": {}, \"parent\": {}, \"level\": {}, ", json_string(n.id),
                       json_string(n.label), n.parent ? json_string(*n.parent) : std::string("null"), n.level);
    out += fmt::format("\"position\": {}, \"radius\": {}, \"region\": [", triple(n.position), number(n.radius));
    for (std::size_t k = 0; k < n.region.size(); ++k) {
      if (k > 0) out += ", ";
      out += triple(n.region[k]);
    }
    out += "]}";
  }
  out += doc.nodes.empty() ? "]\n}\n" : "\n  ]\n}\n";
  return out;
}

LayoutDocument parse_layout_json(std::string_view text) {
  try {
    const json j = json::parse(text);
    LayoutDocument doc;
    const json& h = j.at("header");
    doc.header.algorithm = h.at("algorithm").get<std::string>();
    doc.header.seed = h.at("seed").get<std::uint64_t>();
    doc.header.epsilon = h.at("epsilon").get<double>();
    doc.header.delta = h.at("delta").get<double>();
    doc.header.max_iterations = h.at("max_iterations").get<int>();
    doc.header.error_mode = h.at("error_mode").get<std::string>();
    doc.header.radius_scale = h.at("radius_scale").get<double>();
    doc.header.iterations = h.at("iterations").get<int>();
    doc.header.final_error = h.at("final_error").get<double>();
    doc.header.waste_percent = h.at("waste_percent").get<double>();
    doc.header.phantom_sites = h.at("phantom_sites").get<std::size_t>();
    for (const json& n : j.at("nodes")) {
      LayoutDocument::Node node;
      node.id = n.at("id").get<std::string>();
      node.label = n.at("label").get<std::string>();
      if (!n.at("parent").is_null()) node.parent = n.at("parent").get<std::string>();
      node.level = n.at("level").get<int>();
      node.position = n.at("position").get<std::array<double, 3>>();
      node.radius = n.at("radius").get<double>();
      node.region = n.at("region").get<std::vector<std::array<double, 3>>>();
      doc.nodes.push_back(std::move(node));
    }
    return doc;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

}  // namespace sphlayout
