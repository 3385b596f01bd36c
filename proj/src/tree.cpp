#include "probtree/tree.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <span>

#include "probtree/error.hpp"

namespace probtree {
namespace {

Node build_node(const CategoricalTable& table, std::size_t column,
                std::span<const std::size_t> row_ids) {
  // std::map keeps groups in ascending value order; the stable sort below
  // then only reorders by count, so ties stay ascending.
  std::map<CategoricalValue, std::vector<std::size_t>> groups;
  for (std::size_t id : row_ids) groups[table.rows()[id][column]].push_back(id);

  std::vector<std::pair<const CategoricalValue*, const std::vector<std::size_t>*>> order;
  order.reserve(groups.size());
  for (const auto& [value, ids] : groups) order.emplace_back(&value, &ids);
  std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) {
    return a.second->size() > b.second->size();
  });

  Node node;
  node.column = table.columns()[column];
  node.data.reserve(order.size());
  const double total = static_cast<double>(row_ids.size());
  const bool last = column + 1 == table.column_count();
  for (const auto& [value, ids] : order) {
    DataNode entry;
    entry.value = *value;
    entry.probability = static_cast<double>(ids->size()) / total;
    if (!last) entry.next = std::make_unique<Node>(build_node(table, column + 1, *ids));
    node.data.push_back(std::move(entry));
  }
  return node;
}

void fail(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::InvariantViolation, where + ": " + what);
}

std::size_t validate(const Node& node, const std::vector<std::string>& columns,
                     std::size_t level) {
  const std::string where = "level " + std::to_string(level);
  if (node.column != columns[level]) {
    fail(where, "node column '" + node.column + "' does not match '" +
                    columns[level] + "'");
  }
  if (node.data.empty()) fail(where, "node has no alternatives");

  const bool last = level + 1 == columns.size();
  double sum = 0.0;
  std::size_t count = node.data.size();
  for (std::size_t i = 0; i < node.data.size(); ++i) {
    const DataNode& d = node.data[i];
    if (!(d.probability > 0.0 && d.probability <= 1.0)) {
      fail(where, "probability outside (0, 1]");
    }
    sum += d.probability;
    if (i > 0) {
      const DataNode& prev = node.data[i - 1];
      if (prev.probability < d.probability) fail(where, "alternatives not sorted");
      if (prev.probability == d.probability && !(prev.value < d.value)) {
        fail(where, "tied alternatives not in ascending value order");
      }
    }
    if (last && d.next) fail(where, "leaf alternative has a subtree");
    if (!last && !d.next) fail(where, "inner alternative lacks a subtree");
    if (d.next) count += validate(*d.next, columns, level + 1);
  }
  for (std::size_t i = 0; i < node.data.size(); ++i) {
    for (std::size_t j = i + 1; j < node.data.size(); ++j) {
      if (node.data[i].value == node.data[j].value) fail(where, "duplicate value");
    }
  }
  if (std::abs(sum - 1.0) > kNormalizationTolerance) {
    fail(where, "probabilities sum to " + std::to_string(sum));
  }
  return count;
}

std::size_t count_entries(const Node& node) {
  std::size_t n = node.data.size();
  for (const auto& d : node.data) {
    if (d.next) n += count_entries(*d.next);
  }
  return n;
}

const DataNode* find(const Node& node, const CategoricalValue& value) {
  for (const auto& d : node.data) {
    if (d.value == value) return &d;
  }
  return nullptr;
}

std::string shortest(double p) {
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, p);
  return std::string(buf, end);
}

void print_node(const Node& node, std::size_t level, std::string& out) {
  for (const auto& d : node.data) {
    out.append(2 * level, ' ');
    out += node.column;
    out += " value=";
    out += d.value.to_string();
    out += " p=";
    out += shortest(d.probability);
    if (!d.next) out += " Leaf";
    out += '\n';
    if (d.next) print_node(*d.next, level + 1, out);
  }
}

void walk_paths(const Node& node, Record& prefix, double prob,
                const std::function<void(const Record&, double)>& visit) {
  for (const auto& d : node.data) {
    prefix.push_back(d.value);
    if (d.next) {
      walk_paths(*d.next, prefix, prob * d.probability, visit);
    } else {
      visit(prefix, prob * d.probability);
    }
    prefix.pop_back();
  }
}

}  // namespace

bool structurally_equal(const Node& a, const Node& b, double tolerance) {
  if (a.column != b.column || a.data.size() != b.data.size()) return false;
  for (std::size_t i = 0; i < a.data.size(); ++i) {
    const DataNode& x = a.data[i];
    const DataNode& y = b.data[i];
    if (x.value != y.value) return false;
    if (std::abs(x.probability - y.probability) > tolerance) return false;
    if (static_cast<bool>(x.next) != static_cast<bool>(y.next)) return false;
    if (x.next && !structurally_equal(*x.next, *y.next, tolerance)) return false;
  }
  return true;
}

ProbabilityTree::ProbabilityTree(std::vector<std::string> columns,
                                 std::shared_ptr<const Node> root)
    : columns_(std::move(columns)), root_(std::move(root)) {
  node_count_ = count_entries(*root_);
}

ProbabilityTree ProbabilityTree::build(const CategoricalTable& table) {
  if (table.column_count() == 0) throw Error(ErrorCode::EmptyTable, "no columns");
  if (table.row_count() == 0) throw Error(ErrorCode::EmptyTable, "no rows");
  std::vector<std::size_t> all(table.row_count());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  auto root = std::make_shared<const Node>(build_node(table, 0, all));
  return ProbabilityTree(table.columns(), std::move(root));
}

ProbabilityTree ProbabilityTree::from_root(std::vector<std::string> columns, Node root) {
  if (columns.empty()) fail("tree", "no columns");
  for (std::size_t i = 0; i < columns.size(); ++i) {
    for (std::size_t j = i + 1; j < columns.size(); ++j) {
      if (columns[i] == columns[j]) fail("tree", "duplicate column '" + columns[i] + "'");
    }
    if (columns[i].empty()) fail("tree", "empty column name");
  }
  validate(root, columns, 0);
  return ProbabilityTree(std::move(columns), std::make_shared<const Node>(std::move(root)));
}

bool ProbabilityTree::oracle(const Record& record) const {
  if (record.size() > depth()) {
    throw Error(ErrorCode::RecordTooLong,
                "record has " + std::to_string(record.size()) +
                    " values, tree depth is " + std::to_string(depth()));
  }
  const Node* node = root_.get();
  for (const auto& value : record) {
    const DataNode* hit = find(*node, value);
    if (hit == nullptr) return false;
    node = hit->next.get();
  }
  return true;
}

double ProbabilityTree::record_probability(const Record& record) const {
  if (record.size() > depth()) {
    throw Error(ErrorCode::RecordTooLong,
                "record has " + std::to_string(record.size()) +
                    " values, tree depth is " + std::to_string(depth()));
  }
  double p = 1.0;
  const Node* node = root_.get();
  for (const auto& value : record) {
    const DataNode* hit = find(*node, value);
    if (hit == nullptr) return 0.0;
    p *= hit->probability;
    node = hit->next.get();
  }
  return p;
}

MaxRecord ProbabilityTree::max_record() const {
  MaxRecord out;
  for (const Node* node = root_.get(); node != nullptr;) {
    const DataNode& best = node->data.front();
    out.values.push_back(best.value);
    out.probabilities.push_back(best.probability);
    node = best.next.get();
  }
  return out;
}

std::string ProbabilityTree::print() const {
  std::string out;
  print_node(*root_, 0, out);
  return out;
}

void ProbabilityTree::for_each_path(
    const std::function<void(const Record&, double)>& visit) const {
  Record prefix;
  prefix.reserve(depth());
  walk_paths(*root_, prefix, 1.0, visit);
}

std::vector<ValueKind> ProbabilityTree::column_kinds() const {
  std::vector<ValueKind> kinds;
  for (const Node* node = root_.get(); node != nullptr;
       node = node->data.front().next.get()) {
    kinds.push_back(node->data.front().value.kind());
  }
  return kinds;
}

}  // namespace probtree
