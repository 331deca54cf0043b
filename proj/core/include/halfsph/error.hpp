#pragma once

#include <stdexcept>
#include <string>

namespace halfsph {

/// Base class for every error raised by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown preset names, bad arities, out-of-range indices.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace halfsph
