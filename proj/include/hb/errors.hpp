#ifndef HB_ERRORS_HPP
#define HB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace hb {

/// Bad usage, bad config file, or incompatible shapes. CLI exit status 1.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Unreadable, unwritable, or malformed files. CLI exit status 2.
struct IoError : std::runtime_error {
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite loss or gradient during training. CLI exit status 3.
struct DivergenceError : std::runtime_error {
  explicit DivergenceError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace hb

#endif  // HB_ERRORS_HPP
