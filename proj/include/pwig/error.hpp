#pragma once

#include <stdexcept>
#include <string>

namespace pwig {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller supplied parameters outside an operation's domain.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized input (hex strings, matrix files).
class FormatError : public Error {
 public:
  using Error::Error;
};

// An internal invariant did not hold; indicates a bug or corrupt input.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

}  // namespace pwig
