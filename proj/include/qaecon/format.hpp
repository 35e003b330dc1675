#pragma once

#include <charconv>
#include <stdexcept>
#include <string>

namespace qaecon {

// Locale-independent number rendering: '.' decimal separator, six significant
// digits, shortest form. Every number the tool emits goes through here so
// golden-file comparisons stay byte-stable.
inline std::string format_number(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value,
                                 std::chars_format::general, 6);
  if (ec != std::errc()) throw std::runtime_error("format_number failed");
  return std::string(buffer, ptr);
}

inline double parse_number(const std::string& text) {
  double value = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last)
    throw std::runtime_error("not a number: '" + text + "'");
  return value;
}

}  // namespace qaecon
