#pragma once

// Shared test fixtures and the brute-force counting oracle. Nothing here calls
// into the tree implementation.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "probtree/table.hpp"

namespace probtree::testing {

// The three example rows over P1.1..P1.3.
inline CategoricalTable tab1_table() {
  return CategoricalTable({"P1.1", "P1.2", "P1.3"},
                          {{1, 2, 3}, {5, 4, 4}, {2, 2, 2}});
}

// Two-column, 672-row stand-in for the validation dataset. First-column values
// 1..5 with fixed counts; the second column depends on the first.
inline constexpr std::int64_t kValidationCounts[5] = {187, 143, 162, 109, 71};
inline constexpr std::size_t kValidationRows = 672;

inline CategoricalTable validation_table() {
  std::vector<Record> rows;
  for (std::int64_t v = 1; v <= 5; ++v) {
    for (std::int64_t i = 0; i < kValidationCounts[v - 1]; ++i) {
      const std::int64_t second = 1 + (i * i + 3 * v) % (v + 1);
      rows.push_back({v, second});
    }
  }
  // Interleave so row order does not mirror the value order.
  std::mt19937_64 shuffle_rng(672);
  std::shuffle(rows.begin(), rows.end(), shuffle_rng);
  return CategoricalTable({"P1", "P2"}, std::move(rows));
}

// count(record as a prefix of rows) / rows: the empirical measure, by scanning.
inline double brute_force_probability(const CategoricalTable& table, const Record& record) {
  std::size_t hits = 0;
  for (const auto& row : table.rows()) {
    if (std::equal(record.begin(), record.end(), row.begin())) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(table.row_count());
}

// Random table: `columns` columns of integer codes drawn from [1, values_per
// column], `rows` rows. Columns alternate between integer and text kinds when
// `mixed_kinds` is set.
inline CategoricalTable random_table(std::mt19937_64& rng, std::size_t columns,
                                     std::size_t rows, bool mixed_kinds = false) {
  std::uniform_int_distribution<int> cardinality(2, 8);
  std::vector<int> card(columns);
  for (auto& c : card) c = cardinality(rng);
  std::vector<std::string> names;
  for (std::size_t c = 0; c < columns; ++c) names.push_back("C" + std::to_string(c));
  CategoricalTable table(names);
  for (std::size_t r = 0; r < rows; ++r) {
    Record row;
    for (std::size_t c = 0; c < columns; ++c) {
      const int v = std::uniform_int_distribution<int>(1, card[c])(rng);
      if (mixed_kinds && c % 2 == 1) {
        row.emplace_back(std::string(1, static_cast<char>('a' + v - 1)));
      } else {
        row.emplace_back(std::int64_t{v});
      }
    }
    table.add_row(std::move(row));
  }
  return table;
}

// Distinct rows of `table`, in first-seen order.
inline std::vector<Record> distinct_rows(const CategoricalTable& table) {
  std::vector<Record> out;
  for (const auto& row : table.rows()) {
    if (std::find(out.begin(), out.end(), row) == out.end()) out.push_back(row);
  }
  return out;
}

}  // namespace probtree::testing
