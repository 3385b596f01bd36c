#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "probtree/table.hpp"

namespace probtree {

enum class MissingPolicy { Error, DropRow };

struct IngestOptions {
  MissingPolicy missing_policy = MissingPolicy::Error;
  // Column name -> number of equal-width bins (k >= 2).
  std::map<std::string, int> bin_spec;
  char delimiter = ',';
};

// Reads a CSV file with a mandatory header row. Quoting follows RFC 4180.
// A column whose every cell is a base-10 integer becomes an integer column,
// otherwise all of its cells are text. Empty cells are missing values.
//
// Throws FileNotFound, MalformedHeader, RaggedRow, MissingValue (policy Error),
// UnknownColumn / NonNumericValue / ConstantColumn / InvalidBinCount (binning),
// EmptyTable when no data row survives.
CategoricalTable read_csv(const std::filesystem::path& path,
                          const IngestOptions& options = {});

// Same as read_csv over in-memory text.
CategoricalTable parse_csv(std::string_view text, const IngestOptions& options = {});

// Splits CSV text into records of raw fields. Trailing blank lines are ignored.
std::vector<std::vector<std::string>> split_csv(std::string_view text, char delimiter);

// Equal-width binning over [min, max] into codes 0..k-1. Bins are half-open
// [e_i, e_{i+1}); max falls in bin k-1.
std::vector<std::int64_t> bin_numeric(std::span<const double> values, int k);

}  // namespace probtree
