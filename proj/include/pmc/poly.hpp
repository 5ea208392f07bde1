#pragma once

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "pmc/field.hpp"

namespace pmc {

// Univariate polynomial over an exact field, stored as ascending
// coefficients with no trailing zeros.  The zero polynomial has an empty
// coefficient vector and no degree: degree() throws DegreeOfZero, so a
// zero degree can never silently enter a degree sum.
class Poly {
 public:
  explicit Poly(const Field& f) : field_(f) {}
  Poly(const Field& f, std::vector<Scalar> coeffs);

  static Poly constant(const Scalar& c);
  static Poly one(const Field& f);
  static Poly monomial(const Field& f, i64 deg);  // s^deg
  // Convenience: ascending integer coefficients mapped into the field.
  static Poly of(const Field& f, std::initializer_list<i64> coeffs);
  static Poly of(const Field& f, const std::vector<i64>& coeffs);

  const Field& field() const { return field_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const;
  i64 degree() const;
  Scalar coeff(i64 k) const;  // 0 beyond the degree
  const Scalar& leading() const;
  const std::vector<Scalar>& coeffs() const { return c_; }

  Poly operator-() const;
  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly scaled(const Scalar& c) const;
  Poly monic() const;  // throws ZeroInput on the zero polynomial
  Poly derivative() const;

  // Coefficient reversal within a window of the given grade:
  // coefficient k maps to coefficient grade - k.  Requires degree <= grade.
  Poly reversed(i64 grade) const;

  Scalar operator()(const Scalar& at) const;

  bool operator==(const Poly& o) const;

 private:
  void trim();

  Field field_;
  std::vector<Scalar> c_;
};

// Quotient and remainder; the divisor must be nonzero.
std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den);
Poly exact_div(const Poly& num, const Poly& den);  // throws Error if inexact
Poly mod(const Poly& num, const Poly& den);
bool divides(const Poly& d, const Poly& n);  // d | n (everything divides 0)

// Monic gcd / lcm.  gcd(0, 0) throws BothZero; lcm with a zero argument
// throws ZeroInput.
Poly poly_gcd(const Poly& a, const Poly& b);
Poly poly_lcm(const Poly& a, const Poly& b);

Poly poly_pow_mod(const Poly& base, std::uint64_t e, const Poly& m);

// Deterministic total order: by degree, then ascending coefficient
// comparison from the constant term up.  The zero polynomial sorts first.
bool poly_less(const Poly& a, const Poly& b);

std::string to_string(const Poly& p, const char* var = "s");

// A factor of the invariant structure at a single chain position, combining
// an infinite-eigenvalue multiplicity with a monic finite part.  Ordered by
// componentwise divisibility; the total degree is the sum of both parts.
class HomogFactor {
 public:
  HomogFactor(i64 inf_mult, Poly finite);
  static HomogFactor unit(const Field& f);

  i64 inf_mult() const { return e_; }
  const Poly& finite() const { return alpha_; }
  i64 total_degree() const;
  bool is_unit() const;
  bool divides(const HomogFactor& o) const;
  HomogFactor operator*(const HomogFactor& o) const;
  bool operator==(const HomogFactor& o) const;

 private:
  i64 e_;
  Poly alpha_;
};

// Degree of the least common multiple of two chain factors:
// max of the infinite multiplicities plus deg lcm of the finite parts.
i64 hlcm_deg(const HomogFactor& a, const HomogFactor& b);

std::string to_string(const HomogFactor& h, const char* var = "s");

}  // namespace pmc
