#pragma once

#include <stdexcept>
#include <string>

namespace oblong {

/// Bad user input: out-of-range parameter, malformed config, invalid flag combination.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Numerical failure: tolerance not met, missing tail bound, solver breakdown.
class NumericsError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oblong
