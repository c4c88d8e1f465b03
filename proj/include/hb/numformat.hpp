#ifndef HB_NUMFORMAT_HPP
#define HB_NUMFORMAT_HPP

#include <cstdio>
#include <cstdlib>
#include <string>

namespace hb {

/// 17 significant digits: enough to round-trip an IEEE double bit-exactly.
inline std::string formatG17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

inline std::string formatG3(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", v);
  return buf;
}

/// Full-token double parse; rejects trailing garbage and empty input.
inline bool parseDoubleStrict(const std::string& text, double& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtod(text.c_str(), &end);
  return end == text.c_str() + text.size();
}

inline bool parseLongStrict(const std::string& text, long long& out) {
  if (text.empty()) return false;
  char* end = nullptr;
  out = std::strtoll(text.c_str(), &end, 10);
  return end == text.c_str() + text.size();
}

}  // namespace hb

#endif  // HB_NUMFORMAT_HPP
