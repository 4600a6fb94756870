#pragma once

#include <charconv>
#include <span>
#include <string>
#include <vector>

namespace osc {

// Shortest locale-independent decimal with 17 significant digits.
inline std::string fmt17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

inline std::string csv_row(std::span<const double> values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += fmt17(values[i]);
  }
  return out;
}

std::vector<double> parse_real_list(const std::string& text);
std::vector<int> parse_int_list(const std::string& text);

}  // namespace osc
