#pragma once

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <string_view>

namespace casekit {

inline std::string_view trim(std::string_view s) {
  auto is_space = [](char c) {
    return c == ' ' || c == '\t' || c == '\r' || c == '\n' || c == '\f' || c == '\v';
  };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

// Matching key for category labels: trimmed, ASCII-lowercased, '_' and ' '
// treated as the same character. "very_low", "Very Low" and " VERY LOW "
// all map to "very low".
inline std::string canonical_key(std::string_view label) {
  std::string_view t = trim(label);
  std::string key;
  key.reserve(t.size());
  for (char c : t) {
    if (c == '_') c = ' ';
    key.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return key;
}

inline bool labels_equal(std::string_view a, std::string_view b) {
  return canonical_key(a) == canonical_key(b);
}

// Locale-independent decimal parse; the whole (trimmed) token must be
// consumed and the value must be finite.
inline std::optional<double> parse_decimal(std::string_view raw) {
  std::string_view t = trim(raw);
  if (t.empty()) return std::nullopt;
  double value = 0.0;
  const char* first = t.data();
  const char* last = t.data() + t.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last) return std::nullopt;
  if (!std::isfinite(value)) return std::nullopt;
  return value;
}

inline std::optional<std::int64_t> parse_integer(std::string_view raw) {
  std::string_view t = trim(raw);
  if (t.empty()) return std::nullopt;
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), value);
  if (ec != std::errc() || ptr != t.data() + t.size()) return std::nullopt;
  return value;
}

// Fixed-point display rounding, decimal half-up (ties away from zero).
// Used for all human-readable output; report files keep full precision.
inline std::string format_fixed(double value, int places) {
  double scale = std::pow(10.0, places);
  double scaled = value * scale;
  double rounded = std::floor(std::abs(scaled) + 0.5);
  long long units = static_cast<long long>(rounded);
  std::string digits = std::to_string(units);
  if (static_cast<int>(digits.size()) <= places)
    digits.insert(0, places + 1 - digits.size(), '0');
  digits.insert(digits.size() - places, ".");
  if (value < 0 && units != 0) digits.insert(0, "-");
  return digits;
}

// Orders case ids: integer ids numerically, everything else lexicographically,
// integers before non-integers. Default row-index ids therefore sort 0,1,2,...
inline int compare_case_ids(const std::string& a, const std::string& b) {
  auto ia = parse_integer(a);
  auto ib = parse_integer(b);
  if (ia && ib) {
    if (*ia != *ib) return *ia < *ib ? -1 : 1;
    return 0;
  }
  if (ia != ib) return ia ? -1 : 1;  // integer ids first
  return a.compare(b) < 0 ? -1 : (a == b ? 0 : 1);
}

}  // namespace casekit
