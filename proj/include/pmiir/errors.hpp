#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmiir {

// Base of every error the library raises on bad input or bad usage. Anything
// else escaping the library is an internal failure.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Unreadable or missing input files.
class InputError : public Error {
 public:
  using Error::Error;
};

// Readable input whose content breaks a data invariant.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Caller broke an operation's precondition.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Key not present (unknown term, missing injected query).
class LookupError : public Error {
 public:
  using Error::Error;
};

// Query is well formed but cannot be evaluated (NEAR over a non-positional operand).
class QueryError : public Error {
 public:
  using Error::Error;
};

// Cosine against a zero vector.
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& message, std::size_t offset)
      : Error(message + " at offset " + std::to_string(offset)), offset_(offset) {}

  [[nodiscard]] std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace pmiir
