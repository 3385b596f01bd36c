#include "probtree/table.hpp"

#include <unordered_set>

#include "probtree/error.hpp"

namespace probtree {

CategoricalTable::CategoricalTable(std::vector<std::string> columns,
                                   std::vector<Record> rows)
    : columns_(std::move(columns)) {
  if (columns_.empty()) throw Error(ErrorCode::EmptyTable, "table has no columns");
  std::unordered_set<std::string> seen;
  for (const auto& name : columns_) {
    if (name.empty()) {
      throw Error(ErrorCode::DuplicateColumnName, "empty column name");
    }
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::DuplicateColumnName, "column '" + name + "' repeated");
    }
  }
  rows_.reserve(rows.size());
  for (auto& row : rows) add_row(std::move(row));
}

void CategoricalTable::add_row(Record row) {
  if (row.size() != columns_.size()) {
    throw Error(ErrorCode::RaggedRow,
                "row " + std::to_string(rows_.size()) + " has " +
                    std::to_string(row.size()) + " values, expected " +
                    std::to_string(columns_.size()));
  }
  rows_.push_back(std::move(row));
}

std::vector<CategoricalValue> CategoricalTable::column_values(std::size_t index) const {
  std::vector<CategoricalValue> out;
  out.reserve(rows_.size());
  for (const auto& row : rows_) out.push_back(row.at(index));
  return out;
}

}  // namespace probtree
