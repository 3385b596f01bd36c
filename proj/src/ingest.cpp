#include "probtree/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "probtree/error.hpp"

namespace probtree {
namespace {

struct Field {
  std::string text;
  bool quoted = false;
};

std::vector<std::vector<Field>> tokenize(std::string_view text, char delimiter) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);

  std::vector<std::vector<Field>> records;
  std::vector<Field> record;
  Field field;
  bool in_quotes = false;
  bool record_has_content = false;

  auto end_field = [&] {
    record.push_back(std::move(field));
    field = Field{};
  };
  auto end_record = [&] {
    end_field();
    records.push_back(std::move(record));
    record.clear();
    record_has_content = false;
  };

  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field.text += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field.text += c;
      }
      continue;
    }
    if (c == '"' && field.text.empty() && !field.quoted) {
      in_quotes = true;
      field.quoted = true;
      record_has_content = true;
    } else if (c == delimiter) {
      end_field();
      record_has_content = true;
    } else if (c == '\r' || c == '\n') {
      if (c == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      end_record();
    } else {
      field.text += c;
      record_has_content = true;
    }
  }
  if (in_quotes) throw Error(ErrorCode::ParseError, "unterminated quoted field");
  if (record_has_content || !record.empty()) end_record();

  // A blank line parses as one empty field; drop those at the end of input.
  while (!records.empty() && records.back().size() == 1 &&
         records.back()[0].text.empty() && !records.back()[0].quoted) {
    records.pop_back();
  }
  return records;
}

std::optional<double> parse_real(std::string_view token) {
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double out = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), out);
  if (ec != std::errc{} || ptr != token.data() + token.size() || !std::isfinite(out)) {
    return std::nullopt;
  }
  return out;
}

}  // namespace

std::vector<std::vector<std::string>> split_csv(std::string_view text, char delimiter) {
  std::vector<std::vector<std::string>> out;
  for (auto& record : tokenize(text, delimiter)) {
    std::vector<std::string> row;
    row.reserve(record.size());
    for (auto& f : record) row.push_back(std::move(f.text));
    out.push_back(std::move(row));
  }
  return out;
}

CategoricalTable parse_csv(std::string_view text, const IngestOptions& options) {
  auto records = split_csv(text, options.delimiter);
  if (records.empty()) throw Error(ErrorCode::MalformedHeader, "missing header row");

  std::vector<std::string> header = std::move(records.front());
  std::unordered_set<std::string> seen;
  for (const auto& name : header) {
    if (name.empty()) throw Error(ErrorCode::MalformedHeader, "empty column name");
    if (!seen.insert(name).second) {
      throw Error(ErrorCode::MalformedHeader, "duplicate column name '" + name + "'");
    }
  }
  for (const auto& [name, k] : options.bin_spec) {
    if (!seen.contains(name)) {
      throw Error(ErrorCode::UnknownColumn, "bin spec names unknown column '" + name + "'");
    }
    if (k < 2) throw Error(ErrorCode::InvalidBinCount, "column '" + name + "' needs k >= 2");
  }

  const std::size_t width = header.size();
  std::vector<std::vector<std::string>> cells;
  cells.reserve(records.size() - 1);
  for (std::size_t r = 1; r < records.size(); ++r) {
    auto& row = records[r];
    const std::size_t line = r + 1;
    if (row.size() != width) {
      throw Error(ErrorCode::RaggedRow, "record " + std::to_string(line) + " has " +
                                            std::to_string(row.size()) +
                                            " fields, expected " + std::to_string(width));
    }
    const bool missing = std::any_of(row.begin(), row.end(),
                                     [](const std::string& s) { return s.empty(); });
    if (missing) {
      if (options.missing_policy == MissingPolicy::Error) {
        throw Error(ErrorCode::MissingValue,
                    "record " + std::to_string(line) + " has an empty cell");
      }
      continue;
    }
    cells.push_back(std::move(row));
  }
  if (cells.empty()) throw Error(ErrorCode::EmptyTable, "no data rows");

  std::vector<Record> rows(cells.size(), Record(width));
  for (std::size_t c = 0; c < width; ++c) {
    if (auto bins = options.bin_spec.find(header[c]); bins != options.bin_spec.end()) {
      std::vector<double> numbers;
      numbers.reserve(cells.size());
      for (const auto& row : cells) {
        auto v = parse_real(row[c]);
        if (!v) {
          throw Error(ErrorCode::NonNumericValue,
                      "column '" + header[c] + "' has non-numeric cell '" + row[c] + "'");
        }
        numbers.push_back(*v);
      }
      std::vector<std::int64_t> codes;
      try {
        codes = bin_numeric(numbers, bins->second);
      } catch (const Error& e) {
        throw Error(e.code(), "column '" + header[c] + "': " + e.what());
      }
      for (std::size_t r = 0; r < cells.size(); ++r) rows[r][c] = codes[r];
      continue;
    }

    std::vector<std::int64_t> ints;
    ints.reserve(cells.size());
    for (const auto& row : cells) {
      auto v = parse_integer(row[c]);
      if (!v) break;
      ints.push_back(*v);
    }
    if (ints.size() == cells.size()) {
      for (std::size_t r = 0; r < cells.size(); ++r) rows[r][c] = ints[r];
    } else {
      for (std::size_t r = 0; r < cells.size(); ++r) rows[r][c] = std::move(cells[r][c]);
    }
  }
  return CategoricalTable(std::move(header), std::move(rows));
}

CategoricalTable read_csv(const std::filesystem::path& path, const IngestOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::FileNotFound, "cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_csv(buffer.str(), options);
}

std::vector<std::int64_t> bin_numeric(std::span<const double> values, int k) {
  if (k < 2) throw Error(ErrorCode::InvalidBinCount, "bin count must be at least 2");
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "no values to bin");
  const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
  const double lo = *lo_it;
  const double hi = *hi_it;
  if (!(lo < hi)) throw Error(ErrorCode::ConstantColumn, "all values are equal");

  const double width = (hi - lo) / k;
  std::vector<std::int64_t> codes;
  codes.reserve(values.size());
  for (double v : values) {
    auto code = static_cast<std::int64_t>(std::floor((v - lo) / width));
    codes.push_back(std::clamp<std::int64_t>(code, 0, k - 1));
  }
  return codes;
}

}  // namespace probtree
