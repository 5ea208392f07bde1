#pragma once

#include <cstdint>
#include <string>
#include <variant>

#include <gmpxx.h>

#include "pmc/error.hpp"

namespace pmc {

using i64 = std::int64_t;

// Descriptor of a coefficient field: the rationals, or a prime field GF(p).
class Field {
 public:
  static Field rationals() { return Field(0); }
  static Field gf(std::uint32_t p);

  bool is_rational() const { return p_ == 0; }
  bool is_gf() const { return p_ != 0; }
  std::uint32_t characteristic() const { return p_; }

  bool operator==(const Field&) const = default;

  std::string name() const;

 private:
  explicit Field(std::uint32_t p) : p_(p) {}
  std::uint32_t p_;  // 0 encodes the rationals
};

// Exact scalar: an arbitrary-precision rational or a residue mod p.
// Arithmetic between scalars of different fields throws FieldMismatch.
class Scalar {
 public:
  explicit Scalar(const Field& f);  // zero of the field
  static Scalar of(const Field& f, i64 value);
  static Scalar rational(mpq_class value);
  static Scalar rational(i64 num, i64 den);
  static Scalar residue(std::uint32_t p, i64 value);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;  // throws ZeroInput on zero divisor
  Scalar inverse() const;

  bool operator==(const Scalar& o) const;

  // Value access; wrong-field access throws FieldMismatch.
  const mpq_class& rat() const;
  i64 res() const;

  std::string str() const;

 private:
  struct Gf {
    std::uint32_t p;
    i64 v;  // normalized to [0, p)
    bool operator==(const Gf&) const = default;
  };

  explicit Scalar(Gf g) : v_(g) {}
  explicit Scalar(mpq_class q) : v_(std::move(q)) {}

  const Gf& gf() const { return std::get<Gf>(v_); }

  std::variant<mpq_class, Gf> v_;
};

// Total order used for deterministic tie-breaking (residue order over GF(p),
// numeric order over the rationals).
bool scalar_less(const Scalar& a, const Scalar& b);

}  // namespace pmc
