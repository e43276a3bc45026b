#pragma once

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>

namespace cavityqed {

/// Shortest-form %g-style text with `digits` significant digits, '.' as the
/// decimal separator regardless of locale.
inline std::string format_double(double v, int digits = 12) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, digits);
  if (res.ec != std::errc()) return "nan";
  return std::string(buf, res.ptr);
}

}  // namespace cavityqed
