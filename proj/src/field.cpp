#include "pmc/field.hpp"

#include <utility>

namespace pmc {

namespace {

bool is_prime(std::uint32_t p) {
  if (p < 2) return false;
  for (std::uint64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

i64 normalize_mod(i64 v, std::uint32_t p) {
  i64 m = static_cast<i64>(p);
  i64 r = v % m;
  return r < 0 ? r + m : r;
}

// Modular inverse by the extended Euclidean algorithm; a in [1, p).
i64 mod_inverse(i64 a, i64 p) {
  i64 old_r = a, r = p;
  i64 old_s = 1, s = 0;
  while (r != 0) {
    i64 q = old_r / r;
    old_r = std::exchange(r, old_r - q * r);
    old_s = std::exchange(s, old_s - q * s);
  }
  // old_r == gcd(a, p) == 1 since p is prime and a != 0 mod p
  return normalize_mod(old_s, static_cast<std::uint32_t>(p));
}

}  // namespace

Field Field::gf(std::uint32_t p) {
  if (!is_prime(p)) {
    throw Error("gf: modulus " + std::to_string(p) + " is not prime");
  }
  return Field(p);
}

std::string Field::name() const {
  return is_rational() ? "rational" : "gf(" + std::to_string(p_) + ")";
}

Scalar::Scalar(const Field& f) {
  if (f.is_rational()) {
    v_ = mpq_class(0);
  } else {
    v_ = Gf{f.characteristic(), 0};
  }
}

Scalar Scalar::of(const Field& f, i64 value) {
  if (f.is_rational()) {
    mpq_class q(static_cast<long>(value));
    return Scalar(std::move(q));
  }
  return residue(f.characteristic(), value);
}

Scalar Scalar::rational(mpq_class value) {
  value.canonicalize();
  return Scalar(std::move(value));
}

Scalar Scalar::rational(i64 num, i64 den) {
  if (den == 0) throw ZeroInput("rational: zero denominator");
  mpq_class q(static_cast<long>(num), static_cast<long>(den));
  q.canonicalize();
  return Scalar(std::move(q));
}

Scalar Scalar::residue(std::uint32_t p, i64 value) {
  Field f = Field::gf(p);  // validates primality
  return Scalar(Gf{f.characteristic(), normalize_mod(value, p)});
}

Field Scalar::field() const {
  if (std::holds_alternative<mpq_class>(v_)) return Field::rationals();
  return Field::gf(gf().p);
}

bool Scalar::is_zero() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return sgn(*q) == 0;
  return gf().v == 0;
}

bool Scalar::is_one() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q == 1;
  return gf().v == 1;
}

namespace {

void require_same_field(const Scalar& a, const Scalar& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch("scalar arithmetic across fields: " + a.field().name() +
                        " vs " + b.field().name());
  }
}

}  // namespace

Scalar Scalar::operator-() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) {
    return Scalar(mpq_class(-*q));
  }
  const Gf& g = gf();
  return Scalar(Gf{g.p, g.v == 0 ? 0 : static_cast<i64>(g.p) - g.v});
}

Scalar Scalar::operator+(const Scalar& o) const {
  require_same_field(*this, o);
  if (const auto* q = std::get_if<mpq_class>(&v_)) {
    return Scalar(mpq_class(*q + o.rat()));
  }
  const Gf& g = gf();
  return Scalar(Gf{g.p, (g.v + o.gf().v) % static_cast<i64>(g.p)});
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  require_same_field(*this, o);
  if (const auto* q = std::get_if<mpq_class>(&v_)) {
    return Scalar(mpq_class(*q * o.rat()));
  }
  const Gf& g = gf();
  return Scalar(Gf{g.p, (g.v * o.gf().v) % static_cast<i64>(g.p)});
}

Scalar Scalar::operator/(const Scalar& o) const { return *this * o.inverse(); }

Scalar Scalar::inverse() const {
  if (is_zero()) throw ZeroInput("inverse of zero scalar");
  if (const auto* q = std::get_if<mpq_class>(&v_)) {
    return Scalar(mpq_class(1 / *q));
  }
  const Gf& g = gf();
  return Scalar(Gf{g.p, mod_inverse(g.v, static_cast<i64>(g.p))});
}

bool Scalar::operator==(const Scalar& o) const {
  if (v_.index() != o.v_.index()) return false;
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q == o.rat();
  return gf() == o.gf();
}

const mpq_class& Scalar::rat() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return *q;
  throw FieldMismatch("rat() on a prime-field scalar");
}

i64 Scalar::res() const {
  if (const auto* g = std::get_if<Gf>(&v_)) return g->v;
  throw FieldMismatch("res() on a rational scalar");
}

std::string Scalar::str() const {
  if (const auto* q = std::get_if<mpq_class>(&v_)) return q->get_str();
  return std::to_string(gf().v);
}

bool scalar_less(const Scalar& a, const Scalar& b) {
  require_same_field(a, b);
  if (a.field().is_rational()) return a.rat() < b.rat();
  return a.res() < b.res();
}

}  // namespace pmc
