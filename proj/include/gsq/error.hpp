#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>

namespace gsq {

/// Invalid caller input: bad spec fields, mismatched spaces, unknown selectors.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// A numeric or regime failure: truncation leakage, tolerance breach,
/// violated theorem. Usually means the cutoff is too small.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what) : std::runtime_error(what) {}
};

/// Short "%.3g" rendering for error messages.
inline std::string brief(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

}  // namespace gsq
