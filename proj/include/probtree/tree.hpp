#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "probtree/table.hpp"
#include "probtree/value.hpp"

namespace probtree {

struct Node;

// One alternative at a Node: a value, its frequency conditioned on the path
// from the root, and the subtree for the remaining columns (null at a leaf).
struct DataNode {
  CategoricalValue value;
  double probability = 0.0;
  std::unique_ptr<Node> next;
};

// One tree vertex, covering a single column. `data` is ordered by decreasing
// probability, equal probabilities by ascending value.
struct Node {
  std::string column;
  std::vector<DataNode> data;
};

// Deep structural comparison; probabilities compared within `tolerance`.
bool structurally_equal(const Node& a, const Node& b, double tolerance = 0.0);

struct MaxRecord {
  Record values;
  std::vector<double> probabilities;
};

// Probability tree over a categorical table. Immutable once built; copies
// share the underlying nodes.
class ProbabilityTree {
 public:
  // Throws EmptyTable for zero rows or columns, DuplicateColumnName.
  static ProbabilityTree build(const CategoricalTable& table);

  // Wraps an externally assembled node hierarchy (e.g. a deserialized one)
  // after checking every structural invariant. Throws InvariantViolation.
  static ProbabilityTree from_root(std::vector<std::string> columns, Node root);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const Node& root() const noexcept { return *root_; }

  std::size_t depth() const noexcept { return columns_.size(); }
  // Total number of DataNode entries over all Nodes.
  std::size_t node_count() const noexcept { return node_count_; }

  // True iff `record` is a prefix of some root-to-leaf path. The empty record
  // is always contained. Throws RecordTooLong.
  bool oracle(const Record& record) const;

  // Product of the conditional probabilities along `record`'s path; 0 when
  // the path is absent, 1 for the empty record. Throws RecordTooLong.
  double record_probability(const Record& record) const;

  // Greedy descent picking the first (most probable) alternative at each
  // Node. Not necessarily the globally most probable record.
  MaxRecord max_record() const;

  // Pre-order rendering, one line per DataNode, two spaces of indentation per
  // level: "<column> value=<v> p=<p>", leaf lines suffixed with " Leaf".
  std::string print() const;

  // Visits every root-to-leaf path with its full record probability.
  void for_each_path(
      const std::function<void(const Record&, double)>& visit) const;

  // Value kind per column, taken from the first alternative on each level.
  std::vector<ValueKind> column_kinds() const;

 private:
  ProbabilityTree(std::vector<std::string> columns,
                  std::shared_ptr<const Node> root);

  std::vector<std::string> columns_;
  std::shared_ptr<const Node> root_;
  std::size_t node_count_ = 0;
};

inline ProbabilityTree build_tree(const CategoricalTable& table) {
  return ProbabilityTree::build(table);
}

// Absolute tolerance for per-node probability normalization.
inline constexpr double kNormalizationTolerance = 1e-9;

}  // namespace probtree
