#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "probtree/value.hpp"

namespace probtree {

// Ordered categorical columns with one value per column in every row.
class CategoricalTable {
 public:
  CategoricalTable() = default;

  // Throws DuplicateColumnName (also for empty names), EmptyTable when no
  // column is given, RaggedRow when a row's width differs from the header.
  explicit CategoricalTable(std::vector<std::string> columns,
                            std::vector<Record> rows = {});

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<Record>& rows() const noexcept { return rows_; }

  std::size_t column_count() const noexcept { return columns_.size(); }
  std::size_t row_count() const noexcept { return rows_.size(); }

  void add_row(Record row);

  // Values of one column, in row order.
  std::vector<CategoricalValue> column_values(std::size_t index) const;

  friend bool operator==(const CategoricalTable&, const CategoricalTable&) = default;

 private:
  std::vector<std::string> columns_;
  std::vector<Record> rows_;
};

}  // namespace probtree
