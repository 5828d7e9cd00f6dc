#pragma once

#include <cstdio>
#include <string>

namespace ccst {

/// 17 significant digits, enough to round-trip any double.
inline std::string format_double(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

}  // namespace ccst
