#include "pmc/factor.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>

namespace pmc {

namespace {

// Map of monic factor -> multiplicity with deterministic ordering.
struct PolyLess {
  bool operator()(const Poly& a, const Poly& b) const {
    return poly_less(a, b);
  }
};
using FactorMap = std::map<Poly, i64, PolyLess>;

void add_factor(FactorMap& m, const Poly& f, i64 mult) {
  if (f.is_one()) return;
  m[f] += mult;
}

// --- prime fields ---------------------------------------------------------

// p-th root of f = g(s^p) over GF(p); on the prime field the coefficients
// are their own p-th roots, so g just keeps every p-th coefficient.
Poly pth_root(const Poly& f) {
  const i64 p = f.field().characteristic();
  std::vector<Scalar> c;
  for (i64 k = 0; k <= f.degree(); k += p) c.push_back(f.coeff(k));
  return Poly(f.field(), std::move(c));
}

// Square-free decomposition of a monic f over GF(p):
// pairwise-coprime square-free parts with their multiplicities.
void squarefree_gf(const Poly& f, i64 outer_mult, FactorMap& out) {
  if (f.is_constant()) return;
  Poly df = f.derivative();
  if (df.is_zero()) {
    // f = g(s^p) = g(s)^p on the prime field
    squarefree_gf(pth_root(f), outer_mult * f.field().characteristic(), out);
    return;
  }
  Poly c = poly_gcd(f, df);
  Poly w = exact_div(f, c).monic();
  i64 i = 1;
  while (!w.is_one()) {
    Poly y = poly_gcd(w, c);
    Poly z = exact_div(w, y).monic();
    if (!z.is_one()) add_factor(out, z, i * outer_mult);
    w = std::move(y);
    c = exact_div(c, w).monic();
    ++i;
  }
  if (!c.is_one()) {
    squarefree_gf(pth_root(c), outer_mult * f.field().characteristic(), out);
  }
}

std::uint64_t pow_u64(std::uint64_t b, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

// Pseudo-random nonconstant polynomial of degree < deg(h), seeded
// deterministically so factorizations are reproducible and thread-safe.
Poly random_splitter(const Poly& h, std::uint64_t salt) {
  std::uint64_t seed = 0x9e3779b97f4a7c15ull ^ salt;
  for (i64 k = 0; k <= h.degree(); ++k) {
    seed = seed * 1099511628211ull + static_cast<std::uint64_t>(h.coeff(k).res());
  }
  std::mt19937_64 eng(seed);
  const Field& f = h.field();
  const i64 p = f.characteristic();
  while (true) {
    std::vector<Scalar> c;
    for (i64 k = 0; k < h.degree(); ++k) {
      c.push_back(Scalar::of(f, static_cast<i64>(eng() % static_cast<std::uint64_t>(p))));
    }
    Poly a(f, std::move(c));
    if (!a.is_constant()) return a;
  }
}

// Equal-degree splitting of a monic square-free h whose irreducible factors
// all have degree k.
void equal_degree_gf(const Poly& h, i64 k, std::vector<Poly>& out) {
  if (h.degree() == k) {
    out.push_back(h);
    return;
  }
  const std::uint64_t p = h.field().characteristic();
  for (std::uint64_t attempt = 0;; ++attempt) {
    Poly a = random_splitter(h, attempt);
    Poly g = poly_gcd(a, h);
    if (g.is_one()) {
      if (p == 2) {
        // Trace map: a + a^2 + a^4 + ... splits the product of the
        // degree-k irreducible factors with probability about 1/2.
        Poly t(h.field());
        Poly ai = mod(a, h);
        for (i64 i = 0; i < k; ++i) {
          t = t + ai;
          ai = mod(ai * ai, h);
        }
        if (t.is_zero()) continue;
        g = poly_gcd(t, h);
      } else {
        std::uint64_t e = (pow_u64(p, static_cast<std::uint64_t>(k)) - 1) / 2;
        Poly b = poly_pow_mod(a, e, h);
        Poly bm1 = b - Poly::one(h.field());
        if (bm1.is_zero()) continue;
        g = poly_gcd(bm1, h);
      }
    }
    if (!g.is_one() && g.degree() < h.degree()) {
      equal_degree_gf(g, k, out);
      equal_degree_gf(exact_div(h, g).monic(), k, out);
      return;
    }
  }
}

// Full factorization of a monic square-free g over GF(p): distinct-degree
// buckets via gcd with s^(p^k) - s, then equal-degree splitting.
void factor_squarefree_gf(const Poly& g, i64 mult, FactorMap& out) {
  const std::uint64_t p = g.field().characteristic();
  Poly v = g;
  Poly h = mod(Poly::monomial(g.field(), 1), v);  // s^(p^k) mod v as k grows
  i64 k = 0;
  while (!v.is_constant() && v.degree() >= 2 * (k + 1)) {
    ++k;
    h = poly_pow_mod(h, p, v);
    Poly diff = h - Poly::monomial(g.field(), 1);
    Poly gk = diff.is_zero() ? v : poly_gcd(diff, v);
    if (!gk.is_one()) {
      std::vector<Poly> irreducibles;
      equal_degree_gf(gk, k, irreducibles);
      for (const Poly& q : irreducibles) add_factor(out, q, mult);
      v = exact_div(v, gk).monic();
      h = mod(h, v);
    }
  }
  if (!v.is_constant()) add_factor(out, v, mult);
}

Factorization factorize_gf(const Poly& f) {
  Factorization res{f.leading(), {}, true};
  FactorMap squarefree;
  squarefree_gf(f.monic(), 1, squarefree);
  FactorMap irreducible;
  for (const auto& [part, mult] : squarefree) {
    factor_squarefree_gf(part, mult, irreducible);
  }
  for (const auto& [base, mult] : irreducible) {
    res.parts.push_back({base, mult});
  }
  return res;
}

// --- rationals -------------------------------------------------------------

// Square-free decomposition in characteristic zero (Yun's algorithm).
void squarefree_q(const Poly& f, FactorMap& out) {
  if (f.is_constant()) return;
  Poly df = f.derivative();
  Poly g = poly_gcd(f, df);
  Poly w = exact_div(f, g).monic();
  Poly y = exact_div(df, g);
  i64 i = 1;
  while (!w.is_one()) {
    Poly z = y - w.derivative();
    if (z.is_zero()) {
      add_factor(out, w, i);
      break;
    }
    Poly a = poly_gcd(w, z);
    if (!a.is_one()) add_factor(out, a, i);
    w = exact_div(w, a).monic();
    y = exact_div(z, a);
    ++i;
  }
}

// Divisors of |n|, by trial division; gives up (empty result) past the guard.
std::vector<mpz_class> integer_divisors(const mpz_class& n) {
  std::vector<mpz_class> divs;
  mpz_class a = abs(n);
  if (a == 0) return divs;
  const mpz_class guard("1000000000000");
  if (a > guard) return divs;
  for (mpz_class d = 1; d * d <= a; ++d) {
    if (a % d == 0) {
      divs.push_back(d);
      divs.push_back(a / d);
    }
  }
  return divs;
}

// Extract the rational roots of a monic square-free part; returns the list
// of roots and leaves the unsplittable cofactor in `f`.  Sets `gave_up` when
// the integer divisor search was abandoned.
std::vector<mpq_class> rational_roots(Poly& f, bool& gave_up) {
  std::vector<mpq_class> roots;
  const Field& q = f.field();
  // Root at zero first.
  while (!f.is_constant() && f.coeff(0).is_zero()) {
    roots.emplace_back(0);
    f = exact_div(f, Poly::monomial(q, 1));
  }
  if (f.is_constant()) return roots;
  // Clear denominators: integer candidates p/r with p | c0, r | cn.
  mpz_class den_lcm = 1;
  for (i64 k = 0; k <= f.degree(); ++k) {
    den_lcm = lcm(den_lcm, f.coeff(k).rat().get_den());
  }
  Poly z = f.scaled(Scalar::rational(mpq_class(den_lcm)));
  auto nums = integer_divisors(z.coeff(0).rat().get_num());
  auto dens = integer_divisors(z.leading().rat().get_num());
  if (nums.empty() || dens.empty()) {
    gave_up = true;
    return roots;
  }
  for (const mpz_class& num : nums) {
    for (const mpz_class& den : dens) {
      for (int sign = 1; sign >= -1; sign -= 2) {
        mpq_class cand(sign * num, den);
        cand.canonicalize();
        Scalar at = Scalar::rational(cand);
        while (!f.is_constant() && f(at).is_zero()) {
          roots.push_back(cand);
          Poly lin(q, {Scalar::rational(-cand), Scalar::of(q, 1)});
          f = exact_div(f, lin);
        }
      }
    }
  }
  return roots;
}

Factorization factorize_q(const Poly& f) {
  Factorization res{f.leading(), {}, true};
  FactorMap squarefree;
  squarefree_q(f.monic(), squarefree);
  FactorMap parts;
  for (const auto& [part, mult] : squarefree) {
    Poly rest = part;
    bool gave_up = false;
    for (const mpq_class& root : rational_roots(rest, gave_up)) {
      Poly lin(f.field(), {Scalar::rational(-mpq_class(root)),
                           Scalar::of(f.field(), 1)});
      add_factor(parts, lin, mult);
    }
    if (!rest.is_constant()) {
      add_factor(parts, rest.monic(), mult);
      // A leftover quadratic-or-higher block (or an abandoned divisor
      // search) means the factorization is not guaranteed irreducible.
      res.complete = false;
      (void)gave_up;
    }
  }
  for (const auto& [base, mult] : parts) res.parts.push_back({base, mult});
  return res;
}

}  // namespace

Factorization factorize(const Poly& f) {
  if (f.is_zero()) throw ZeroInput("factorize: zero polynomial");
  if (f.is_constant()) return Factorization{f.leading(), {}, true};
  return f.field().is_gf() ? factorize_gf(f) : factorize_q(f);
}

Poly divisor_of_degree(const Poly& lo, const Poly& hi, i64 w) {
  if (lo.is_zero() || hi.is_zero()) {
    throw ZeroInput("divisor_of_degree: zero bound");
  }
  if (!divides(lo, hi)) {
    throw Error("divisor_of_degree: lower bound does not divide upper bound");
  }
  if (w < lo.degree() || w > hi.degree()) {
    throw Error("divisor_of_degree: target degree outside [deg lo, deg hi]");
  }
  Poly lo_m = lo.monic(), hi_m = hi.monic();
  const i64 extra = w - lo_m.degree();
  if (extra == 0) return lo_m;
  if (w == hi_m.degree()) return hi_m;

  Factorization fac = factorize(exact_div(hi_m, lo_m).monic());

  // Pick multiplicities k_i <= m_i of the quotient's factors with
  // sum k_i * deg(base_i) = extra; among all hits keep the product that is
  // smallest in (degree, coefficient) order.  The factor lists are tiny at
  // this problem scale, so plain backtracking is fine.
  const std::size_t nparts = fac.parts.size();
  std::vector<i64> chosen(nparts, 0);
  Poly best(lo.field());
  bool found = false;
  auto search = [&](auto&& self, std::size_t idx, i64 remaining) -> void {
    if (remaining == 0) {
      Poly cand = lo_m;
      for (std::size_t i = 0; i < nparts; ++i) {
        for (i64 k = 0; k < chosen[i]; ++k) cand = cand * fac.parts[i].base;
      }
      if (!found || poly_less(cand, best)) {
        best = cand;
        found = true;
      }
      return;
    }
    if (idx == nparts) return;
    const i64 d = fac.parts[idx].base.degree();
    const i64 top = std::min(fac.parts[idx].multiplicity, remaining / d);
    for (i64 k = top; k >= 0; --k) {
      chosen[idx] = k;
      self(self, idx + 1, remaining - k * d);
    }
    chosen[idx] = 0;
  };
  search(search, 0, extra);

  if (!found) {
    throw FieldObstruction(
        "no monic divisor of degree " + std::to_string(w) + " between " +
        to_string(lo_m) + " and " + to_string(hi_m) + " over " +
        lo.field().name() + (fac.complete ? "" : " (partial factorization)"));
  }
  return best;
}

HomogFactor divisor_of_total_degree(const HomogFactor& lo,
                                    const HomogFactor& hi, i64 w) {
  if (!lo.divides(hi)) {
    throw Error("divisor_of_total_degree: bounds are not nested");
  }
  if (w < lo.total_degree() || w > hi.total_degree()) {
    throw Error("divisor_of_total_degree: target degree out of range");
  }
  // Feasible infinite multiplicities: within [lo.e, hi.e] and leaving the
  // finite part a degree within [deg lo, deg hi].  Prefer the largest, which
  // minimizes the finite part.
  const i64 e_top = std::min(hi.inf_mult(), w - lo.finite().degree());
  const i64 e_bot = std::max(lo.inf_mult(), w - hi.finite().degree());
  for (i64 e = e_top; e >= e_bot; --e) {
    try {
      Poly tau = divisor_of_degree(lo.finite(), hi.finite(), w - e);
      return HomogFactor(e, tau);
    } catch (const FieldObstruction&) {
      // try the next admissible multiplicity
    }
  }
  throw FieldObstruction("no chain factor of total degree " +
                         std::to_string(w) + " between " + to_string(lo) +
                         " and " + to_string(hi));
}

}  // namespace pmc
