#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hhc {

// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public Error {
 public:
  enum class Kind { syntax, unknown_identifier };

  ParseError(Kind kind, std::size_t offset, const std::string& what)
      : Error(what + " at offset " + std::to_string(offset)), kind_(kind), offset_(offset) {}

  Kind kind() const noexcept { return kind_; }
  std::size_t offset() const noexcept { return offset_; }

 private:
  Kind kind_;
  std::size_t offset_;
};

// Evaluation outside the natural domain (ln of non-positive, division by
// zero, bad power, non-finite result).
class DomainError : public Error {
 public:
  using Error::Error;
};

// A precondition on the inputs failed (e.g. a function required to be
// non-negative is not). Distinct from a counterexample.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConvergenceError : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

}  // namespace hhc
