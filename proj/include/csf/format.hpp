#pragma once

#include <cstdio>
#include <string>

namespace csf {

// 17 significant digits: enough to round-trip an IEEE double exactly,
// so serialized files are bit-stable across save/load cycles.
inline std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

}  // namespace csf
