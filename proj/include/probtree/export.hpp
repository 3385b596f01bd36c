#pragma once

#include <cstddef>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "probtree/table.hpp"
#include "probtree/tree.hpp"

namespace probtree {

inline constexpr int kTreeFormatVersion = 1;

struct TreeMetadata {
  std::optional<std::size_t> source_rows;
  std::optional<std::string> build_timestamp;
  std::optional<std::string> rng_algorithm;
  std::map<std::string, std::string> extra;

  friend bool operator==(const TreeMetadata&, const TreeMetadata&) = default;
};

struct TreeDocument {
  int format_version = kTreeFormatVersion;
  ProbabilityTree tree;
  TreeMetadata metadata;
};

// Tree JSON document. Probabilities are written with 17 significant digits,
// which reproduces every double exactly on parse.
std::string to_json(const ProbabilityTree& tree, const TreeMetadata& metadata = {});

// Throws ParseError, VersionMismatch, InvariantViolation.
TreeDocument read_tree_document(std::string_view text);
ProbabilityTree from_json(std::string_view text);

struct GraphEdge {
  std::string from_label;
  std::string to_label;
  double probability = 0.0;

  friend bool operator==(const GraphEdge&, const GraphEdge&) = default;
};

// Vertex label for the path `values` over the leading columns, e.g.
// "A, v=1 | B, v=2", with " | Leaf" appended when `leaf` is set.
std::string path_label(const std::vector<std::string>& columns,
                       const Record& values, bool leaf);

// Every parent->child edge in pre-order.
std::vector<GraphEdge> tree_edges(const ProbabilityTree& tree);

struct TreeComponent {
  CategoricalValue value;
  std::vector<GraphEdge> edges;
};

// One component per first-column value, edges in pre-order.
std::vector<TreeComponent> connected_components(const ProbabilityTree& tree);

struct DotOptions {
  // Adds a "root" vertex linked to every first-column vertex.
  bool single_root = false;
};

// Directed DOT graph: one vertex per DataNode, labelled with its path;
// edges labelled with the child's conditional probability ("%.6f").
std::string to_dot(const ProbabilityTree& tree, const DotOptions& options = {});

// RFC 4180 CSV with a header row; text cells are quoted only when needed.
std::string format_csv(const CategoricalTable& table, char delimiter = ',');
void write_csv(const CategoricalTable& table, const std::filesystem::path& path,
               char delimiter = ',');

// Writes `contents` to `path`, throwing IoError on failure.
void write_text_file(const std::filesystem::path& path, std::string_view contents);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace probtree
