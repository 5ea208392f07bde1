#pragma once

#include <vector>

#include "pmc/poly.hpp"

namespace pmc {

struct PolyFactor {
  Poly base;        // monic, nonconstant
  i64 multiplicity;
};

struct Factorization {
  Scalar leading;                 // overall leading coefficient
  std::vector<PolyFactor> parts;  // sorted by (degree, coefficients)
  // Over a prime field the parts are always irreducible and `complete` is
  // true.  Over the rationals the factorizer extracts square-free parts and
  // rational roots only; a part that resisted splitting leaves `complete`
  // false.
  bool complete = true;
};

// Factor a nonzero polynomial.  Prime fields get a full factorization
// (square-free decomposition, then distinct-degree and equal-degree
// splitting); the rationals get a best-effort one as described above.
Factorization factorize(const Poly& f);

// The smallest (by degree-then-coefficient order) monic tau with
// lo | tau | hi and deg(tau) = w.  Requires lo | hi, both nonzero, and
// deg(lo) <= w <= deg(hi).  Throws FieldObstruction when no such divisor
// exists over the coefficient field, or when the rational factorizer
// cannot split finely enough to exhibit one.
Poly divisor_of_degree(const Poly& lo, const Poly& hi, i64 w);

// Chain-factor analogue: a factor tau with lo | tau | hi and total degree w.
// Requires lo.divides(hi) and total degrees lo <= w <= hi.  The infinite
// multiplicity is chosen as large as the constraints allow, so the finite
// part is the smallest that works; ties on the finite part follow
// divisor_of_degree.  Throws FieldObstruction when no admissible split of w
// yields a finite-part divisor.
HomogFactor divisor_of_total_degree(const HomogFactor& lo,
                                    const HomogFactor& hi, i64 w);

}  // namespace pmc
