#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace probtree {

enum class ValueKind { Integer, Text };

// A categorical cell: either an integer code or a text label. Integers order
// numerically, text orders by byte-wise lexicographic comparison. A column
// never mixes both kinds; if two kinds are ever compared, integers sort first.
class CategoricalValue {
 public:
  CategoricalValue() : repr_(std::int64_t{0}) {}
  CategoricalValue(std::int64_t v) : repr_(v) {}
  CategoricalValue(int v) : repr_(std::int64_t{v}) {}
  CategoricalValue(std::string v) : repr_(std::move(v)) {}
  CategoricalValue(const char* v) : repr_(std::string(v)) {}

  ValueKind kind() const noexcept {
    return std::holds_alternative<std::int64_t>(repr_) ? ValueKind::Integer
                                                       : ValueKind::Text;
  }
  bool is_integer() const noexcept { return kind() == ValueKind::Integer; }

  std::int64_t as_integer() const { return std::get<std::int64_t>(repr_); }
  const std::string& as_text() const { return std::get<std::string>(repr_); }

  // Plain rendering: decimal for integers, the raw label for text.
  std::string to_string() const;

  friend bool operator==(const CategoricalValue&, const CategoricalValue&) = default;
  friend std::strong_ordering operator<=>(const CategoricalValue& a,
                                          const CategoricalValue& b);

 private:
  std::variant<std::int64_t, std::string> repr_;
};

using Record = std::vector<CategoricalValue>;

// Parses a whole token as a base-10 signed 64-bit integer.
std::optional<std::int64_t> parse_integer(std::string_view token);

// Interprets `token` as a value of the given kind; Integer kind falls back to
// text when the token is not an integer.
CategoricalValue parse_value(std::string_view token, ValueKind kind);

}  // namespace probtree

template <>
struct std::hash<probtree::CategoricalValue> {
  std::size_t operator()(const probtree::CategoricalValue& v) const noexcept {
    if (v.is_integer()) return std::hash<std::int64_t>{}(v.as_integer());
    return std::hash<std::string>{}(v.as_text()) ^ 0x9e3779b97f4a7c15ULL;
  }
};
