#pragma once

#include <charconv>
#include <string>

namespace sgc {

/// Shortest round-trip decimal form, locale independent; used by every text
/// export so identical inputs give byte-identical files.
inline std::string format_double(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, p);
}

}  // namespace sgc
