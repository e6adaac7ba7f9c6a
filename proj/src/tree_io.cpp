#include "sphlayout/tree_io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

#include "sphlayout/error.hpp"

namespace sphlayout {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void sort_children(TreeNode& node) {
  std::stable_sort(node.children.begin(), node.children.end(),
                   [](const TreeNode& a, const TreeNode& b) { return a.label < b.label; });
}

struct JsonReader {
  std::vector<std::string> warnings;
  std::unordered_set<std::string> ids;

  [[noreturn]] static void fail(const std::string& where, const std::string& what) {
    throw Error(ErrorCode::ParseError, "at " + (where.empty() ? std::string("/") : where) + ": " + what);
  }

  TreeNode read(const json& j, const std::string& where) {
    if (!j.is_object()) fail(where, "node must be an object");
    TreeNode node;
    std::optional<std::string> id;
    for (const auto& [key, value] : j.items()) {
      if (key == "id") {
        if (!value.is_string()) fail(where + "/id", "\"id\" must be a string");
        id = value.get<std::string>();
      } else if (key == "label") {
        if (!value.is_string()) fail(where + "/label", "\"label\" must be a string");
        node.label = value.get<std::string>();
      } else if (key == "weight") {
        if (!value.is_number()) fail(where + "/weight", "\"weight\" must be a number");
        const double w = value.get<double>();
        if (!(w > 0.0)) fail(where + "/weight", "\"weight\" must be > 0");
        node.explicit_weight = w;
      } else if (key == "children") {
        if (!value.is_array()) fail(where + "/children", "\"children\" must be an array");
        for (std::size_t i = 0; i < value.size(); ++i) {
          node.children.push_back(read(value[i], where + "/children/" + std::to_string(i)));
        }
      } else {
        warnings.push_back("ignoring unknown field \"" + key + "\" at " + (where.empty() ? "/" : where));
      }
    }
    if (id) node.id = *id;
    sort_children(node);
    return node;
  }

  // Ids are assigned after sorting so that generated ids follow the final order.
  void assign_ids(TreeNode& node, const std::string& path) {
    if (node.id.empty()) node.id = path;
    if (!ids.insert(node.id).second) {
      throw Error(ErrorCode::ParseError, "duplicate id \"" + node.id + "\"");
    }
    for (std::size_t i = 0; i < node.children.size(); ++i) {
      assign_ids(node.children[i], path + "/" + std::to_string(i));
    }
  }
};

struct DirectoryWalker {
  const fs::path root;
  const DirectoryOptions& options;
  std::vector<std::string> warnings;

  TreeNode walk(const fs::path& path, std::size_t depth, std::vector<fs::path>& ancestors) {
    TreeNode node;
    const fs::path rel = path.lexically_relative(root);
    node.id = rel.empty() ? "." : rel.generic_string();
    node.label = depth == 0 ? root.filename().string() : path.filename().string();
    if (node.label.empty()) node.label = root.string();

    std::error_code ec;
    if (!fs::is_directory(path, ec) || depth >= options.max_depth) return node;

    const fs::path canonical = fs::canonical(path, ec);
    if (ec) throw Error(ErrorCode::IoError, "cannot resolve " + path.string() + ": " + ec.message());
    ancestors.push_back(canonical);
    std::vector<fs::path> entries;
    for (fs::directory_iterator it(path, ec), end; !ec && it != end; it.increment(ec)) {
      entries.push_back(it->path());
    }
    if (ec) throw Error(ErrorCode::IoError, "cannot list " + path.string() + ": " + ec.message());
    std::sort(entries.begin(), entries.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename().string() < b.filename().string(); });
    for (const auto& entry : entries) {
      if (fs::is_symlink(entry, ec) && fs::is_directory(entry, ec)) {
        const fs::path target = fs::canonical(entry, ec);
        if (ec) {
          warnings.push_back("skipping unresolvable link " + entry.string());
          continue;
        }
        if (std::find(ancestors.begin(), ancestors.end(), target) != ancestors.end()) {
          warnings.push_back(std::string(to_string(ErrorCode::CycleError)) + ": skipping " +
                             entry.string() + ", it leads back to " + target.string());
          continue;
        }
      }
      node.children.push_back(walk(entry, depth + 1, ancestors));
    }
    ancestors.pop_back();
    sort_children(node);
    return node;
  }
};

}  // namespace

IngestResult parse_tree_json(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  JsonReader reader;
  IngestResult result;
  result.root = reader.read(doc, "");
  reader.assign_ids(result.root, "0");
  result.warnings = std::move(reader.warnings);
  return result;
}

IngestResult read_tree_directory(const fs::path& root, const DirectoryOptions& options) {
  std::error_code ec;
  if (!fs::is_directory(root, ec)) throw Error(ErrorCode::IoError, root.string() + " is not a directory");
  DirectoryWalker walker{root, options, {}};
  std::vector<fs::path> ancestors;
  IngestResult result;
  result.root = walker.walk(root, 0, ancestors);
  result.warnings = std::move(walker.warnings);
  return result;
}

IngestResult ingest_tree(const fs::path& source, const DirectoryOptions& options) {
  std::error_code ec;
  if (!fs::exists(source, ec)) throw Error(ErrorCode::IoError, source.string() + " does not exist");
  if (fs::is_directory(source, ec)) return read_tree_directory(source, options);
  return parse_tree_json(read_text_file(source));
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::IoError, "cannot read " + path.string());
  return buffer.str();
}

void write_text_file(const fs::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::IoError, "cannot open " + path.string() + " for writing");
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
}

}  // namespace sphlayout
