#pragma once

#include <stdexcept>
#include <string>

namespace spdchg {

// Invalid physical or mathematical argument (nonpositive width, index out of
// range, inconsistent parameter combination, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The request exceeds a configured implementation limit (e.g. the polynomial
// order cap or the exact-arithmetic range of the basis-change convolution).
class CapabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A caller violated an operation precondition (e.g. Schmidt analysis of a
// matrix that was not normalized).
class PreconditionError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// A numeric evaluation could not reach its accuracy budget.  Carries the
// partial result and the estimated error bound so the caller can decide what
// to do with them.
class NumericError : public std::runtime_error {
 public:
  NumericError(const std::string& what, double partial, double bound)
      : std::runtime_error(what), partial_sum(partial), error_bound(bound) {}

  double partial_sum;
  double error_bound;
};

}  // namespace spdchg
