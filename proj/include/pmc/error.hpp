#pragma once

#include <stdexcept>

namespace pmc {

// Root of the library's error hierarchy.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Scalars or polynomials from different coefficient fields were combined.
struct FieldMismatch : Error {
  using Error::Error;
};

// gcd(0, 0) has no monic normal form.
struct BothZero : Error {
  using Error::Error;
};

// An operation received a zero input it cannot handle (lcm with zero,
// division by zero, ...).
struct ZeroInput : Error {
  using Error::Error;
};

// The degree of the zero polynomial was used as a number.  The zero
// polynomial has no finite degree; callers must test is_zero() first.
struct DegreeOfZero : Error {
  using Error::Error;
};

// No monic divisor of the required degree exists over the coefficient field
// (or, over the rationals, none could be exhibited by the partial
// factorizer, which is allowed to give up).
struct FieldObstruction : Error {
  using Error::Error;
};

// Structural invariants violate the degree-sum identity
// (total chain degree + column indices + row indices = rank * grade).
// Indicates corrupt input invariants or an internal inconsistency.
struct IndexSumViolation : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

// An entry degree exceeds the declared grade, or a stacked block declares a
// larger grade than the base.
struct GradeExceeded : Error {
  using Error::Error;
};

struct LengthMismatch : Error {
  using Error::Error;
};

// A prescription violates its structural requirements: component lengths,
// chain divisibility, monotonicity, variant field usage, parameter ranges.
struct InvalidPrescription : Error {
  using Error::Error;
};

// A construction was requested for an infeasible prescription.
struct NotFeasible : Error {
  using Error::Error;
};

// A staged construction produced data that fails the final validity check.
// Indicates an internal bug, never a user error.
struct AssemblyMismatch : Error {
  using Error::Error;
};

// An exhaustive enumeration would exceed the configured budget.
struct BudgetExceeded : Error {
  using Error::Error;
};

// Malformed input document.
struct ParseError : Error {
  using Error::Error;
};

}  // namespace pmc
