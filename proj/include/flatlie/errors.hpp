#pragma once

#include <stdexcept>
#include <string>

namespace flatlie {

/// Malformed input: dimension mismatch, bad shape, non-antisymmetric data.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its domain (e.g. a subspace that is not
/// a subalgebra, a bivector that does not solve the Yang-Baxter equation).
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Two independent computations of the same quantity disagreed.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Instance-file syntax error. Carries the offending line number (1-based).
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

}  // namespace flatlie
