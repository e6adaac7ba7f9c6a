#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "sphlayout/tree_layout.hpp"

namespace sphlayout {

struct IngestResult {
  TreeNode root;
  std::vector<std::string> warnings;  // unknown fields, skipped symlink loops
};

struct DirectoryOptions {
  // Directories deeper than this become leaves.
  std::size_t max_depth = 32;
};

/// Parses a tree document: each node is an object with optional "id",
/// "label", "weight" (> 0) and "children". Missing ids become the node's
/// path of child positions ("0", "0/1", ...). Children are ordered by label.
/// Throws ParseError with the offending location.
IngestResult parse_tree_json(std::string_view text);

/// Reads a tree document (file) or walks a directory; dispatches on the
/// path type. Throws IoError for unreadable paths.
IngestResult ingest_tree(const std::filesystem::path& source, const DirectoryOptions& options = {});

/// Directories become internal nodes and everything else leaves, ids are
/// paths relative to `root` ("." for the root itself). Symlinked
/// directories that lead back to an ancestor are skipped with a warning.
IngestResult read_tree_directory(const std::filesystem::path& root, const DirectoryOptions& options = {});

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace sphlayout
