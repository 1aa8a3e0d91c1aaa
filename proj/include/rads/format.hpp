#pragma once

#include <charconv>
#include <cstdio>
#include <string>

namespace rads {

// Shortest decimal form that parses back to the identical double.
inline std::string format_shortest(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

inline std::string format_sig(double v, int digits) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v);
  return buf;
}

}  // namespace rads
