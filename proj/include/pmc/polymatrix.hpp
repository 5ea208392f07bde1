#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "pmc/poly.hpp"

namespace pmc {

// Matrix over F[s] with a declared grade: every entry must have degree at
// most the grade, but the grade may exceed the actual maximum degree.  The
// grade is part of the data; it fixes the reversal window and therefore the
// multiplicities at infinity.
class PolyMatrix {
 public:
  PolyMatrix(const Field& f, std::size_t rows, std::size_t cols, i64 grade);
  static PolyMatrix from_rows(const Field& f, i64 grade,
                              const std::vector<std::vector<Poly>>& rows);

  const Field& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  i64 grade() const { return grade_; }

  const Poly& at(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, Poly p);

  PolyMatrix transposed() const;
  // Coefficient reversal of every entry within the grade window.
  PolyMatrix reversed() const;
  // Largest entry degree (0 for the zero matrix).
  i64 true_degree() const;
  bool is_zero() const;

  bool operator==(const PolyMatrix& o) const;

 private:
  Field field_;
  std::size_t rows_, cols_;
  i64 grade_;
  std::vector<Poly> e_;  // row-major
};

// Rows of `top` above rows of `bottom`; the result keeps the grade of
// `top`.  Column counts must agree and the bottom grade must not exceed the
// top grade.
PolyMatrix stack(const PolyMatrix& top, const PolyMatrix& bottom);

// Rank over the rational function field, by fraction-free elimination.
std::size_t rank(const PolyMatrix& a);

// Invariant factors (monic, each dividing the next), by elementary row and
// column operations with minimal-degree pivoting; ties are broken by
// row-major position.
std::vector<Poly> smith_form(const PolyMatrix& a);

// Reference implementation of the invariant factors through determinantal
// divisors (gcds of all k x k minors).  Exponentially slower; kept as an
// independent cross-check of smith_form.
std::vector<Poly> smith_form_minors(const PolyMatrix& a);

// Multiplicities of the eigenvalue at infinity relative to the declared
// grade: the t-adic valuations of the invariant factors of the reversal.
// Nondecreasing, one per invariant factor.
std::vector<i64> infinite_multiplicities(const PolyMatrix& a);

// Minimal indices of the right and left rational null spaces: degrees of a
// minimal polynomial basis, each list nonincreasing.  Computed by a kernel
// search on the block-convolution (coefficient) matrices of ascending
// degree.
std::pair<std::vector<i64>, std::vector<i64>> minimal_indices(
    const PolyMatrix& a);

// Complete structural data of a polynomial matrix: rank, finite structure
// (invariant factors), infinite structure (multiplicities at infinity
// relative to the grade), and the two lists of minimal indices.
//
// The data satisfies the degree-sum identity
//   sum(deg alpha_i + e_i) + sum(cmi) + sum(rmi) = rank * grade,
// which validate() enforces.
struct Eigenstructure {
  Field field = Field::rationals();
  i64 grade = 0;
  i64 rank = 0;
  std::vector<Poly> alphas;  // monic divisibility chain, size = rank
  std::vector<i64> es;       // nondecreasing, size = rank
  std::vector<i64> cmi;      // nonincreasing
  std::vector<i64> rmi;      // nonincreasing

  i64 n() const { return rank + static_cast<i64>(cmi.size()); }
  i64 m() const { return rank + static_cast<i64>(rmi.size()); }
  i64 eta() const;            // count of positive rmi
  i64 alpha_deg_sum() const;  // total degree of the invariant factors
  i64 e_sum() const;
  HomogFactor phi(i64 i) const;  // i-th chain factor, 1-based

  void validate() const;
};

Eigenstructure eigenstructure(const PolyMatrix& a);

// The transposed matrix has the same rank and chains with the two lists of
// minimal indices exchanged.
Eigenstructure transposed(const Eigenstructure& e);

}  // namespace pmc
