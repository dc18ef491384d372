#ifndef OPHOLDER_ERRORS_HPP
#define OPHOLDER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opholder {

// Shapes or lengths that do not line up.
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// NaN/Inf entries, non-positive weights and similar malformed values.
class InvalidInputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value outside the domain of an operation. `witness` carries the
// offending number (an eigenvalue, an exponent) when there is one.
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what, double witness = 0.0)
      : std::domain_error(what), witness_(witness) {}
  double witness() const noexcept { return witness_; }

 private:
  double witness_;
};

// A verifier was handed an instance its theorem does not cover.
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Malformed JSON or fixture files. The message names the location.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace opholder

#endif  // OPHOLDER_ERRORS_HPP
