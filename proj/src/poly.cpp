#include "pmc/poly.hpp"

#include <algorithm>
#include <sstream>

namespace pmc {

namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) {
    throw FieldMismatch("polynomial arithmetic across fields: " +
                        a.field().name() + " vs " + b.field().name());
  }
}

}  // namespace

Poly::Poly(const Field& f, std::vector<Scalar> coeffs)
    : field_(f), c_(std::move(coeffs)) {
  for (const Scalar& c : c_) {
    if (!(c.field() == field_)) {
      throw FieldMismatch("coefficient field differs from polynomial field");
    }
  }
  trim();
}

Poly Poly::constant(const Scalar& c) { return Poly(c.field(), {c}); }

Poly Poly::one(const Field& f) { return constant(Scalar::of(f, 1)); }

Poly Poly::monomial(const Field& f, i64 deg) {
  if (deg < 0) throw Error("monomial: negative degree");
  std::vector<Scalar> c(static_cast<std::size_t>(deg) + 1, Scalar(f));
  c.back() = Scalar::of(f, 1);
  return Poly(f, std::move(c));
}

Poly Poly::of(const Field& f, std::initializer_list<i64> coeffs) {
  return of(f, std::vector<i64>(coeffs));
}

Poly Poly::of(const Field& f, const std::vector<i64>& coeffs) {
  std::vector<Scalar> c;
  c.reserve(coeffs.size());
  for (i64 v : coeffs) c.push_back(Scalar::of(f, v));
  return Poly(f, std::move(c));
}

bool Poly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

bool Poly::is_monic() const { return !is_zero() && c_.back().is_one(); }

i64 Poly::degree() const {
  if (is_zero()) {
    throw DegreeOfZero("degree of the zero polynomial used as a number");
  }
  return static_cast<i64>(c_.size()) - 1;
}

Scalar Poly::coeff(i64 k) const {
  if (k < 0 || k >= static_cast<i64>(c_.size())) return Scalar(field_);
  return c_[static_cast<std::size_t>(k)];
}

const Scalar& Poly::leading() const {
  if (is_zero()) throw DegreeOfZero("leading coefficient of zero polynomial");
  return c_.back();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::operator-() const {
  Poly r(field_);
  r.c_.reserve(c_.size());
  for (const Scalar& c : c_) r.c_.push_back(-c);
  return r;
}

Poly Poly::operator+(const Poly& o) const {
  require_same_field(*this, o);
  Poly r(field_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), Scalar(field_));
  for (std::size_t i = 0; i < r.c_.size(); ++i) {
    if (i < c_.size()) r.c_[i] = r.c_[i] + c_[i];
    if (i < o.c_.size()) r.c_[i] = r.c_[i] + o.c_[i];
  }
  r.trim();
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  require_same_field(*this, o);
  if (is_zero() || o.is_zero()) return Poly(field_);
  Poly r(field_);
  r.c_.assign(c_.size() + o.c_.size() - 1, Scalar(field_));
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (std::size_t j = 0; j < o.c_.size(); ++j) {
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
    }
  }
  r.trim();
  return r;
}

Poly Poly::scaled(const Scalar& c) const {
  Poly r(field_);
  r.c_.reserve(c_.size());
  for (const Scalar& x : c_) r.c_.push_back(x * c);
  r.trim();
  return r;
}

Poly Poly::monic() const {
  if (is_zero()) throw ZeroInput("monic normalization of the zero polynomial");
  if (is_monic()) return *this;
  return scaled(leading().inverse());
}

Poly Poly::derivative() const {
  Poly r(field_);
  for (std::size_t k = 1; k < c_.size(); ++k) {
    r.c_.push_back(c_[k] * Scalar::of(field_, static_cast<i64>(k)));
  }
  r.trim();
  return r;
}

Poly Poly::reversed(i64 grade) const {
  if (grade < 0) throw GradeExceeded("reversal with negative grade");
  if (!is_zero() && degree() > grade) {
    throw GradeExceeded("reversal window smaller than the degree");
  }
  std::vector<Scalar> c(static_cast<std::size_t>(grade) + 1, Scalar(field_));
  for (std::size_t k = 0; k < c_.size(); ++k) {
    c[static_cast<std::size_t>(grade) - k] = c_[k];
  }
  return Poly(field_, std::move(c));
}

Scalar Poly::operator()(const Scalar& at) const {
  Scalar acc(field_);
  for (std::size_t i = c_.size(); i-- > 0;) {
    acc = acc * at + c_[i];
  }
  return acc;
}

bool Poly::operator==(const Poly& o) const {
  return field_ == o.field_ && c_ == o.c_;
}

std::pair<Poly, Poly> divmod(const Poly& num, const Poly& den) {
  require_same_field(num, den);
  if (den.is_zero()) throw ZeroInput("polynomial division by zero");
  const Field& f = num.field();
  if (num.is_zero() || num.degree() < den.degree()) {
    return {Poly(f), num};
  }
  Scalar lead_inv = den.leading().inverse();
  std::vector<Scalar> rem(num.coeffs());
  std::vector<Scalar> quo(
      static_cast<std::size_t>(num.degree() - den.degree()) + 1, Scalar(f));
  i64 dd = den.degree();
  for (i64 k = num.degree(); k >= dd; --k) {
    Scalar c = rem[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    Scalar q = c * lead_inv;
    quo[static_cast<std::size_t>(k - dd)] = q;
    for (i64 j = 0; j <= dd; ++j) {
      std::size_t idx = static_cast<std::size_t>(k - dd + j);
      rem[idx] = rem[idx] - q * den.coeff(j);
    }
  }
  return {Poly(f, std::move(quo)), Poly(f, std::move(rem))};
}

Poly exact_div(const Poly& num, const Poly& den) {
  auto [q, r] = divmod(num, den);
  if (!r.is_zero()) throw Error("exact_div: nonzero remainder");
  return q;
}

Poly mod(const Poly& num, const Poly& den) { return divmod(num, den).second; }

bool divides(const Poly& d, const Poly& n) {
  if (n.is_zero()) return true;
  if (d.is_zero()) return false;
  return mod(n, d).is_zero();
}

Poly poly_gcd(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (a.is_zero() && b.is_zero()) {
    throw BothZero("gcd(0, 0) has no monic normal form");
  }
  Poly x = a, y = b;
  while (!y.is_zero()) {
    Poly r = mod(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Poly poly_lcm(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) throw ZeroInput("lcm with a zero argument");
  Poly g = poly_gcd(a, b);
  return exact_div(a * b, g).monic();
}

Poly poly_pow_mod(const Poly& base, std::uint64_t e, const Poly& m) {
  Poly acc = Poly::one(base.field());
  Poly b = mod(base, m);
  while (e > 0) {
    if (e & 1) acc = mod(acc * b, m);
    b = mod(b * b, m);
    e >>= 1;
  }
  return acc;
}

bool poly_less(const Poly& a, const Poly& b) {
  if (a.is_zero() || b.is_zero()) return a.is_zero() && !b.is_zero();
  if (a.degree() != b.degree()) return a.degree() < b.degree();
  for (i64 k = 0; k <= a.degree(); ++k) {
    Scalar ca = a.coeff(k), cb = b.coeff(k);
    if (!(ca == cb)) return scalar_less(ca, cb);
  }
  return false;
}

std::string to_string(const Poly& p, const char* var) {
  if (p.is_zero()) return "0";
  std::ostringstream out;
  bool first = true;
  for (i64 k = p.degree(); k >= 0; --k) {
    Scalar c = p.coeff(k);
    if (c.is_zero()) continue;
    if (!first) out << " + ";
    first = false;
    if (k == 0 || !c.is_one()) {
      out << c.str();
      if (k > 0) out << "*";
    }
    if (k > 0) {
      out << var;
      if (k > 1) out << "^" << k;
    }
  }
  return out.str();
}

HomogFactor::HomogFactor(i64 inf_mult, Poly finite)
    : e_(inf_mult), alpha_(std::move(finite)) {
  if (e_ < 0) throw Error("chain factor: negative infinite multiplicity");
  if (!alpha_.is_monic()) {
    throw Error("chain factor: finite part must be monic");
  }
}

HomogFactor HomogFactor::unit(const Field& f) {
  return HomogFactor(0, Poly::one(f));
}

i64 HomogFactor::total_degree() const { return e_ + alpha_.degree(); }

bool HomogFactor::is_unit() const { return e_ == 0 && alpha_.is_one(); }

bool HomogFactor::divides(const HomogFactor& o) const {
  return e_ <= o.e_ && pmc::divides(alpha_, o.alpha_);
}

HomogFactor HomogFactor::operator*(const HomogFactor& o) const {
  return HomogFactor(e_ + o.e_, alpha_ * o.alpha_);
}

bool HomogFactor::operator==(const HomogFactor& o) const {
  return e_ == o.e_ && alpha_ == o.alpha_;
}

i64 hlcm_deg(const HomogFactor& a, const HomogFactor& b) {
  return std::max(a.inf_mult(), b.inf_mult()) +
         poly_lcm(a.finite(), b.finite()).degree();
}

std::string to_string(const HomogFactor& h, const char* var) {
  std::ostringstream out;
  out << "{inf^" << h.inf_mult() << ", " << to_string(h.finite(), var) << "}";
  return out.str();
}

}  // namespace pmc
