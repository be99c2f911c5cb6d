#pragma once

#include <stdexcept>
#include <string>

namespace polymix {

// Malformed input (bad JSON, wrong exponent lengths, non-prime modulus).
struct ParseError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input is well-formed but the requested computation is meaningless for it,
// e.g. a monomial or zero defining polynomial.
struct DegenerateInput : std::domain_error {
  using std::domain_error::domain_error;
};

struct BudgetExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A machine check that must hold mathematically did not. Always a bug.
struct InternalInconsistency : std::logic_error {
  using std::logic_error::logic_error;
};

}  // namespace polymix
