#ifndef TRACEBOUND_FORMAT_HPP_
#define TRACEBOUND_FORMAT_HPP_

#include <cstdio>
#include <string>

namespace tracebound {

// Fixed 12-significant-digit rendering used by every text output.
inline std::string format_double(double v) {
  if (v == 0.0) {
    return "0";
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

}  // namespace tracebound

#endif  // TRACEBOUND_FORMAT_HPP_
