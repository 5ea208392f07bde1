#pragma once

#include <random>
#include <vector>

#include "pmc/polymatrix.hpp"
#include "pmc/prescription.hpp"

namespace pmc {

// Deterministic instance generation and small-space enumeration for tests
// and sweeps. Everything is seed-stable: the same seed yields the same
// stream on every platform.

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  // Uniform integer in [lo, hi] inclusive.
  i64 uniform(i64 lo, i64 hi);
  bool coin() { return uniform(0, 1) == 1; }
  std::uint64_t raw() { return eng_(); }

 private:
  std::mt19937_64 eng_;
};

// Random scalar / polynomial / matrix with small coefficients.
Scalar random_scalar(Rng& rng, const Field& f);
Poly random_poly(Rng& rng, const Field& f, i64 max_degree);
Poly random_monic(Rng& rng, const Field& f, i64 degree);
PolyMatrix random_matrix(Rng& rng, const Field& f, i64 rows, i64 cols,
                         i64 grade);

// Random abstract eigenstructure for an m x n matrix of the given grade:
// rank, invariant-factor chain, multiplicities at infinity, and minimal
// indices drawn so the index-sum identity holds exactly.
Eigenstructure random_eigenstructure(Rng& rng, const Field& f, i64 m, i64 n,
                                     i64 grade);

// Random structurally valid prescription of the given variant (valid under
// Prescription::validate; feasibility is not forced). Mixes fresh draws
// with draws seeded from the base structure so both outcomes appear.
Prescription random_prescription(Rng& rng, const Eigenstructure& base,
                                 Variant variant);

// Nonincreasing nonnegative vectors of the given length with sum <= max_sum.
std::vector<std::vector<i64>> all_nonincreasing(i64 len, i64 max_sum);
// Nondecreasing counterpart.
std::vector<std::vector<i64>> all_nondecreasing(i64 len, i64 max_sum);

// All monic polynomials of exact degree over a finite field.
std::vector<Poly> all_monic(const Field& f, i64 degree);
// All monic divisors of a polynomial (complete factorization required).
std::vector<Poly> monic_divisors(const Poly& a);
// All divisibility chains q_1 | ... | q_len of monic polynomials over a
// finite field with total degree <= max_deg_sum.
std::vector<std::vector<Poly>> all_divisor_chains(const Field& f, i64 len,
                                                  i64 max_deg_sum);

// Every structurally valid prescription of one variant for appending z
// rows to the base: all rank rises and all component tuples that fit the
// degree-sum budget of the completed matrix.  Exhaustive at desk scale;
// the ground-truth sweeps check each of these against enumeration.
std::vector<Prescription> enumerate_targets(const Eigenstructure& base,
                                            i64 z, Variant variant);

}  // namespace pmc
