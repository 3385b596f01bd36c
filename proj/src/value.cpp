#include "probtree/value.hpp"

#include <charconv>

namespace probtree {

std::string CategoricalValue::to_string() const {
  if (is_integer()) return std::to_string(as_integer());
  return as_text();
}

std::strong_ordering operator<=>(const CategoricalValue& a,
                                 const CategoricalValue& b) {
  if (a.kind() != b.kind()) {
    return a.is_integer() ? std::strong_ordering::less
                          : std::strong_ordering::greater;
  }
  if (a.is_integer()) return a.as_integer() <=> b.as_integer();
  // std::string compares through char_traits<char>, which orders like
  // unsigned bytes.
  const int c = a.as_text().compare(b.as_text());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::optional<std::int64_t> parse_integer(std::string_view token) {
  if (token.empty()) return std::nullopt;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (*first == '+') ++first;
  if (first == last) return std::nullopt;
  std::int64_t out = 0;
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc{} || ptr != last) return std::nullopt;
  return out;
}

CategoricalValue parse_value(std::string_view token, ValueKind kind) {
  if (kind == ValueKind::Integer) {
    if (auto v = parse_integer(token)) return CategoricalValue(*v);
  }
  return CategoricalValue(std::string(token));
}

}  // namespace probtree
