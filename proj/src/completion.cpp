#include "pmc/completion.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <string>

#include "pmc/error.hpp"
#include "pmc/factor.hpp"
#include "pmc/generate.hpp"

namespace pmc {

namespace {

i64 vec_sum(const std::vector<i64>& v) {
  return std::accumulate(v.begin(), v.end(), i64{0});
}

i64 head_sum(const std::vector<i64>& v, i64 k) {
  i64 s = 0;
  for (i64 i = 0; i < k; ++i) s += v[static_cast<std::size_t>(i)];
  return s;
}

std::vector<i64> head(const std::vector<i64>& v, i64 k) {
  return {v.begin(), v.begin() + k};
}

std::vector<i64> drop(const std::vector<i64>& v, i64 k) {
  return {v.begin() + k, v.end()};
}

// Shared index conventions of all the predicates over a base structure and
// a prescription: chain positions are 1-based, positions at or below zero
// read as trivial factors (multiplicity 0, unit polynomial), and every
// in-formula index provably stays at or below the rank.
struct Ctx {
  const Eigenstructure& base;
  const Prescription& p;
  i64 r, x, z, grade, rx;
  i64 sum_c, sum_u, sum_d, sum_v;
  i64 eta, eta_bar;

  Ctx(const Eigenstructure& b, const Prescription& pr)
      : base(b),
        p(pr),
        r(b.rank),
        x(pr.x),
        z(pr.z),
        grade(b.grade),
        rx(b.rank + pr.x),
        sum_c(vec_sum(b.cmi)),
        sum_u(vec_sum(b.rmi)),
        sum_d(vec_sum(pr.d)),
        sum_v(vec_sum(pr.v)),
        eta(b.eta()),
        eta_bar(pr.eta_bar()) {}

  i64 e(i64 k) const {
    if (k <= 0) return 0;
    if (k > r) throw Error("multiplicity index beyond the rank");
    return base.es[static_cast<std::size_t>(k - 1)];
  }
  Poly alpha(i64 k) const {
    if (k <= 0) return Poly::one(base.field);
    if (k > r) throw Error("invariant factor index beyond the rank");
    return base.alphas[static_cast<std::size_t>(k - 1)];
  }
  i64 deg_alpha(i64 k) const {
    if (k <= 0) return 0;
    if (k > r) throw Error("invariant factor index beyond the rank");
    const Poly& a = base.alphas[static_cast<std::size_t>(k - 1)];
    return a.is_constant() ? 0 : a.degree();
  }
  HomogFactor phi(i64 k) const {
    if (k <= 0) return HomogFactor::unit(base.field);
    return HomogFactor(e(k), alpha(k));
  }
  i64 deg_phi(i64 k) const { return k <= 0 ? 0 : e(k) + deg_alpha(k); }

  // Sum over the last k chain positions (clipped to the available range).
  i64 tail_e(i64 k) const {
    i64 s = 0;
    for (i64 i = std::max<i64>(1, r - k + 1); i <= r; ++i) s += e(i);
    return s;
  }
  i64 tail_deg_alpha(i64 k) const {
    i64 s = 0;
    for (i64 i = std::max<i64>(1, r - k + 1); i <= r; ++i) s += deg_alpha(i);
    return s;
  }
  i64 tail_deg_phi(i64 k) const {
    i64 s = 0;
    for (i64 i = std::max<i64>(1, r - k + 1); i <= r; ++i) s += deg_phi(i);
    return s;
  }

  i64 sum_e() const { return base.e_sum(); }
  i64 sum_deg_alpha() const { return base.alpha_deg_sum(); }
  i64 sum_deg_phi() const { return sum_e() + sum_deg_alpha(); }
  i64 sum_f() const { return vec_sum(p.f); }
  i64 sum_deg_beta() const {
    i64 s = 0;
    for (const Poly& b : p.beta) s += b.is_constant() ? 0 : b.degree();
    return s;
  }
  i64 sum_deg_gamma() const {
    i64 s = 0;
    for (const HomogFactor& g : p.gamma) s += g.total_degree();
    return s;
  }

  // sum_{i=1}^{count} max{ e(i - x + shift), f_i }
  i64 sum_max(i64 shift, i64 count) const {
    i64 s = 0;
    for (i64 i = 1; i <= count; ++i)
      s += std::max(e_clip(i - x + shift),
                    p.f[static_cast<std::size_t>(i - 1)]);
    return s;
  }
  // sum_{i=1}^{count} deg lcm( alpha(i - x + shift), beta_i )
  i64 sum_lcm(i64 shift, i64 count) const {
    i64 s = 0;
    for (i64 i = 1; i <= count; ++i)
      s += lcm_deg(i - x + shift, p.beta[static_cast<std::size_t>(i - 1)]);
    return s;
  }
  // sum_{i=1}^{count} hlcm_deg( phi(i - x + shift), gamma_i )
  i64 sum_hlcm(i64 shift, i64 count) const {
    i64 s = 0;
    for (i64 i = 1; i <= count; ++i)
      s += hlcm_deg(phi(i - x + shift),
                    p.gamma[static_cast<std::size_t>(i - 1)]);
    return s;
  }

 private:
  i64 e_clip(i64 k) const { return k <= 0 ? 0 : e(k); }
  i64 lcm_deg(i64 k, const Poly& b) const {
    i64 db = b.is_constant() ? 0 : b.degree();
    if (k <= 0) return db;
    Poly a = alpha(k);
    return deg_alpha(k) + db - poly_gcd(a, b).degree();
  }
};

ConditionResult num_cond(const char* id, i64 lhs, i64 rhs, bool holds) {
  ConditionResult c;
  c.id = id;
  c.holds = holds;
  c.lhs = lhs;
  c.rhs = rhs;
  return c;
}

ConditionResult flag_cond(const char* id, bool holds) {
  ConditionResult c;
  c.id = id;
  c.holds = holds;
  return c;
}

ConditionResult gmaj_cond(const char* id, const GenMajorizeResult& g) {
  ConditionResult c;
  c.id = id;
  c.holds = g.holds;
  c.h = g.h;
  return c;
}

FeasibilityReport finish(Variant variant, std::vector<ConditionResult> conds,
                         std::vector<i64> a, std::vector<i64> b,
                         std::optional<i64> constant,
                         const char* constant_name, bool caveat_family) {
  FeasibilityReport rep;
  rep.variant = variant;
  rep.conditions = std::move(conds);
  rep.a = std::move(a);
  rep.b = std::move(b);
  rep.constant = constant;
  if (constant) rep.constant_name = constant_name;
  rep.feasible = std::all_of(rep.conditions.begin(), rep.conditions.end(),
                             [](const ConditionResult& c) { return c.holds; });
  rep.field_caveat =
      caveat_family && rep.feasible && constant && *constant > 0;
  return rep;
}

// eta-count: the completion cannot lose positive row minimal indices.
ConditionResult eta_cond(const Ctx& c) {
  return num_cond("eta-count", c.eta_bar, c.eta, c.eta_bar >= c.eta);
}

// interlacing of the prescribed multiplicities at infinity with the base:
// f_i <= e_i <= f_{i+z}, positions past the prescribed chain unbounded.
ConditionResult inf_interlace_cond(const Ctx& c) {
  bool ok = true;
  for (i64 i = 1; i <= c.r; ++i) {
    if (c.p.f[static_cast<std::size_t>(i - 1)] > c.e(i)) ok = false;
    if (i + c.z <= c.rx &&
        c.e(i) > c.p.f[static_cast<std::size_t>(i + c.z - 1)])
      ok = false;
  }
  return flag_cond("interlacing", ok);
}

// interlacing of the prescribed invariant factors with the base:
// beta_i | alpha_i | beta_{i+z}.
ConditionResult fin_interlace_cond(const Ctx& c) {
  bool ok = true;
  for (i64 i = 1; i <= c.r; ++i) {
    Poly ai = c.alpha(i);
    if (!divides(c.p.beta[static_cast<std::size_t>(i - 1)], ai)) ok = false;
    if (i + c.z <= c.rx &&
        !divides(ai, c.p.beta[static_cast<std::size_t>(i + c.z - 1)]))
      ok = false;
  }
  return flag_cond("interlacing", ok);
}

// interlacing of the prescribed homogeneous chain with the base:
// gamma_i | phi_i | gamma_{i+z}.
ConditionResult full_interlace_cond(const Ctx& c) {
  bool ok = true;
  for (i64 i = 1; i <= c.r; ++i) {
    HomogFactor ph = c.phi(i);
    if (!c.p.gamma[static_cast<std::size_t>(i - 1)].divides(ph)) ok = false;
    if (i + c.z <= c.rx &&
        !ph.divides(c.p.gamma[static_cast<std::size_t>(i + c.z - 1)]))
      ok = false;
  }
  return flag_cond("interlacing", ok);
}

constexpr const char* kFiniteSlack = "finite-degree-slack";
constexpr const char* kInfiniteSlack = "infinite-multiplicity-slack";
constexpr const char* kHomogSlack = "homogeneous-degree-slack";

}  // namespace

std::pair<std::vector<i64>, std::vector<i64>> build_ab_full(
    const Eigenstructure& base, const Prescription& p) {
  p.validate(base);
  Ctx c(base, p);
  std::vector<i64> a, b;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      a.push_back(c.sum_v - c.sum_u + c.sum_deg_gamma() -
                  c.sum_hlcm(1, c.rx - 1) - c.grade);
    else
      a.push_back(c.sum_hlcm(j - 1, c.rx - j + 1) - c.sum_hlcm(j, c.rx - j) -
                  c.grade);
  }
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      b.push_back(c.sum_v - c.sum_u + c.sum_deg_gamma() -
                  c.sum_hlcm(-1, c.rx));
    else
      b.push_back(c.sum_hlcm(-j + 1, c.rx) - c.sum_hlcm(-j, c.rx));
  }
  return {std::move(a), std::move(b)};
}

std::pair<std::vector<i64>, std::vector<i64>> build_ab_alt(
    const Eigenstructure& base, const Prescription& p) {
  p.validate(base);
  Ctx c(base, p);
  std::vector<i64> a, b;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      a.push_back(c.sum_c - c.sum_d + c.sum_deg_phi() -
                  c.sum_hlcm(1, c.rx - 1) + (c.x - 1) * c.grade);
    else
      a.push_back(c.sum_hlcm(j - 1, c.rx - j + 1) - c.sum_hlcm(j, c.rx - j) -
                  c.grade);
  }
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      b.push_back(c.sum_c - c.sum_d + c.sum_deg_phi() -
                  c.sum_hlcm(-1, c.rx) + c.x * c.grade);
    else
      b.push_back(c.sum_hlcm(-j + 1, c.rx) - c.sum_hlcm(-j, c.rx));
  }
  return {std::move(a), std::move(b)};
}

namespace {

FeasibilityReport check_full_impl(const Eigenstructure& base,
                                  const Prescription& p, bool alt) {
  if (p.variant != Variant::full)
    throw InvalidPrescription("full predicate needs a full prescription");
  p.validate(base);
  Ctx c(base, p);
  auto [a, b] = alt ? build_ab_alt(base, p) : build_ab_full(base, p);

  std::vector<ConditionResult> conds;
  conds.push_back(full_interlace_cond(c));
  conds.push_back(eta_cond(c));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, a)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, b)));

  i64 lhs = c.sum_hlcm(0, c.rx);
  i64 rhs, pivot;
  if (alt) {
    // Column-side budget: equality is forced when the rank rises by a full
    // row count (x = z).
    rhs = c.sum_c - c.sum_d + c.sum_deg_phi() + c.x * c.grade;
    pivot = c.z;
  } else {
    // Row-side budget: equality is forced when the rank does not rise.
    rhs = c.sum_v - c.sum_u + c.sum_deg_gamma();
    pivot = 0;
  }
  bool holds = (c.x == pivot) ? lhs == rhs : lhs <= rhs;
  conds.push_back(num_cond("degree-sum", lhs, rhs, holds));

  return finish(Variant::full, std::move(conds), std::move(a), std::move(b),
                std::nullopt, "", false);
}

}  // namespace

FeasibilityReport check_full(const Eigenstructure& base,
                             const Prescription& p) {
  return check_full_impl(base, p, false);
}

FeasibilityReport check_full_alt(const Eigenstructure& base,
                                 const Prescription& p) {
  return check_full_impl(base, p, true);
}

FeasibilityReport check_inf_sing(const Eigenstructure& base,
                                 const Prescription& p) {
  if (p.variant != Variant::inf_sing)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  i64 A = c.sum_f() - c.sum_e() + c.sum_d - c.sum_c + c.sum_v - c.sum_u -
          c.x * c.grade;

  std::vector<i64> ah, bh;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      ah.push_back(c.sum_v - c.sum_u + c.sum_f() - c.sum_max(1, c.rx - 1) -
                   A - c.grade);
    else
      ah.push_back(c.sum_max(j - 1, c.rx - j + 1) - c.sum_max(j, c.rx - j) -
                   c.grade);
  }
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bh.push_back(c.sum_v - c.sum_u +
                   std::min<i64>(0, c.tail_deg_alpha(1) - A) + c.sum_f() -
                   c.sum_max(-1, c.rx));
    else
      bh.push_back(std::min<i64>(0, c.tail_deg_alpha(j) - A) -
                   std::min<i64>(0, c.tail_deg_alpha(j - 1) - A) +
                   c.sum_max(-j + 1, c.rx) - c.sum_max(-j, c.rx));
  }

  std::vector<ConditionResult> conds;
  conds.push_back(eta_cond(c));
  conds.push_back(inf_interlace_cond(c));
  conds.push_back(num_cond("constant-bound", A, c.tail_deg_alpha(c.z - c.x),
                           A <= c.tail_deg_alpha(c.z - c.x)));
  i64 slack_rhs = std::max<i64>(0, A) + c.sum_max(0, c.rx) - c.sum_f();
  conds.push_back(num_cond("slack-bound", c.sum_v - c.sum_u, slack_rhs,
                           c.sum_v - c.sum_u >= slack_rhs));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, ah)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, bh)));

  return finish(Variant::inf_sing, std::move(conds), std::move(ah),
                std::move(bh), A, kFiniteSlack, true);
}

FeasibilityReport check_inf_cmi(const Eigenstructure& base,
                                const Prescription& p) {
  if (p.variant != Variant::inf_cmi)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  std::vector<i64> at;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      at.push_back(c.sum_c - c.sum_d + c.sum_e() - c.sum_max(1, c.rx - 1) +
                   (c.x - 1) * c.grade);
    else
      at.push_back(c.sum_max(j - 1, c.rx - j + 1) - c.sum_max(j, c.rx - j) -
                   c.grade);
  }

  std::vector<ConditionResult> conds;
  conds.push_back(inf_interlace_cond(c));
  i64 rhs = c.sum_max(0, c.rx) - c.sum_e() - c.x * c.grade;
  conds.push_back(
      num_cond("cmi-slack", c.sum_c - c.sum_d, rhs, c.sum_c - c.sum_d >= rhs));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, at)));

  return finish(Variant::inf_cmi, std::move(conds), std::move(at), {},
                std::nullopt, "", false);
}

FeasibilityReport check_inf_rmi(const Eigenstructure& base,
                                const Prescription& p) {
  if (p.variant != Variant::inf_rmi)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  i64 At = c.sum_f() - c.sum_e() - head_sum(base.cmi, c.x) + c.sum_v -
           c.sum_u - c.x * c.grade;

  std::vector<i64> at, bt;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      at.push_back(c.sum_v - c.sum_u + c.sum_f() - c.sum_max(1, c.rx - 1) -
                   At - c.grade);
    else
      at.push_back(c.sum_max(j - 1, c.rx - j + 1) - c.sum_max(j, c.rx - j) -
                   c.grade);
  }
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bt.push_back(c.sum_v - c.sum_u +
                   std::min<i64>(0, c.tail_deg_alpha(1) - At) + c.sum_f() -
                   c.sum_max(-1, c.rx));
    else
      bt.push_back(std::min<i64>(0, c.tail_deg_alpha(j) - At) -
                   std::min<i64>(0, c.tail_deg_alpha(j - 1) - At) +
                   c.sum_max(-j + 1, c.rx) - c.sum_max(-j, c.rx));
  }

  std::vector<ConditionResult> conds;
  conds.push_back(eta_cond(c));
  conds.push_back(inf_interlace_cond(c));
  conds.push_back(num_cond("constant-bound", At, c.tail_deg_alpha(c.z - c.x),
                           At <= c.tail_deg_alpha(c.z - c.x)));
  i64 slack_rhs = std::max<i64>(0, At) + c.sum_max(0, c.rx) - c.sum_f();
  conds.push_back(num_cond("slack-bound", c.sum_v - c.sum_u, slack_rhs,
                           c.sum_v - c.sum_u >= slack_rhs));
  conds.push_back(flag_cond("head-cmi-majorization",
                            majorize(head(base.cmi, c.x), at)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, bt)));

  return finish(Variant::inf_rmi, std::move(conds), std::move(at),
                std::move(bt), At, kFiniteSlack, true);
}

FeasibilityReport check_fin_sing(const Eigenstructure& base,
                                 const Prescription& p) {
  if (p.variant != Variant::fin_sing)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  i64 B = c.sum_deg_beta() - c.sum_deg_alpha() + c.sum_d - c.sum_c +
          c.sum_v - c.sum_u - c.x * c.grade;

  std::vector<i64> ah, bh;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      ah.push_back(c.sum_v - c.sum_u + c.sum_deg_beta() -
                   c.sum_lcm(1, c.rx - 1) - B - c.grade);
    else
      ah.push_back(c.sum_lcm(j - 1, c.rx - j + 1) - c.sum_lcm(j, c.rx - j) -
                   c.grade);
  }
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bh.push_back(c.sum_v - c.sum_u + std::min<i64>(0, c.tail_e(1) - B) +
                   c.sum_deg_beta() - c.sum_lcm(-1, c.rx));
    else
      bh.push_back(std::min<i64>(0, c.tail_e(j) - B) -
                   std::min<i64>(0, c.tail_e(j - 1) - B) +
                   c.sum_lcm(-j + 1, c.rx) - c.sum_lcm(-j, c.rx));
  }

  std::vector<ConditionResult> conds;
  conds.push_back(eta_cond(c));
  conds.push_back(fin_interlace_cond(c));
  conds.push_back(num_cond("constant-bound", B, c.tail_e(c.z - c.x),
                           B <= c.tail_e(c.z - c.x)));
  i64 slack_rhs =
      std::max<i64>(0, B) + c.sum_lcm(0, c.rx) - c.sum_deg_beta();
  conds.push_back(num_cond("slack-bound", c.sum_v - c.sum_u, slack_rhs,
                           c.sum_v - c.sum_u >= slack_rhs));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, ah)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, bh)));

  return finish(Variant::fin_sing, std::move(conds), std::move(ah),
                std::move(bh), B, kInfiniteSlack, false);
}

FeasibilityReport check_fin_cmi(const Eigenstructure& base,
                                const Prescription& p) {
  if (p.variant != Variant::fin_cmi)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  std::vector<i64> at;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      at.push_back(c.sum_c - c.sum_d + c.sum_deg_alpha() -
                   c.sum_lcm(1, c.rx - 1) + (c.x - 1) * c.grade);
    else
      at.push_back(c.sum_lcm(j - 1, c.rx - j + 1) - c.sum_lcm(j, c.rx - j) -
                   c.grade);
  }

  std::vector<ConditionResult> conds;
  conds.push_back(fin_interlace_cond(c));
  i64 rhs = c.sum_lcm(0, c.rx) - c.sum_deg_alpha() - c.x * c.grade;
  conds.push_back(
      num_cond("cmi-slack", c.sum_c - c.sum_d, rhs, c.sum_c - c.sum_d >= rhs));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, at)));

  return finish(Variant::fin_cmi, std::move(conds), std::move(at), {},
                std::nullopt, "", false);
}

FeasibilityReport check_fin_rmi(const Eigenstructure& base,
                                const Prescription& p) {
  if (p.variant != Variant::fin_rmi)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  i64 Bt = c.sum_deg_beta() - c.sum_deg_alpha() - head_sum(base.cmi, c.x) +
           c.sum_v - c.sum_u - c.x * c.grade;

  std::vector<i64> at, bt;
  for (i64 j = 1; j <= c.x; ++j) {
    if (j == 1)
      at.push_back(c.sum_v - c.sum_u + c.sum_deg_beta() -
                   c.sum_lcm(1, c.rx - 1) - Bt - c.grade);
    else
      at.push_back(c.sum_lcm(j - 1, c.rx - j + 1) - c.sum_lcm(j, c.rx - j) -
                   c.grade);
  }
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bt.push_back(c.sum_v - c.sum_u + std::min<i64>(0, c.tail_e(1) - Bt) +
                   c.sum_deg_beta() - c.sum_lcm(-1, c.rx));
    else
      bt.push_back(std::min<i64>(0, c.tail_e(j) - Bt) -
                   std::min<i64>(0, c.tail_e(j - 1) - Bt) +
                   c.sum_lcm(-j + 1, c.rx) - c.sum_lcm(-j, c.rx));
  }

  std::vector<ConditionResult> conds;
  conds.push_back(eta_cond(c));
  conds.push_back(fin_interlace_cond(c));
  conds.push_back(num_cond("constant-bound", Bt, c.tail_e(c.z - c.x),
                           Bt <= c.tail_e(c.z - c.x)));
  i64 slack_rhs =
      std::max<i64>(0, Bt) + c.sum_lcm(0, c.rx) - c.sum_deg_beta();
  conds.push_back(num_cond("slack-bound", c.sum_v - c.sum_u, slack_rhs,
                           c.sum_v - c.sum_u >= slack_rhs));
  conds.push_back(flag_cond("head-cmi-majorization",
                            majorize(head(base.cmi, c.x), at)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, bt)));

  return finish(Variant::fin_rmi, std::move(conds), std::move(at),
                std::move(bt), Bt, kInfiniteSlack, false);
}

FeasibilityReport check_sing(const Eigenstructure& base,
                             const Prescription& p) {
  if (p.variant != Variant::sing)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  i64 E = c.sum_d - c.sum_c + c.sum_v - c.sum_u - c.x * c.grade;

  std::vector<i64> at, bt;
  for (i64 j = 1; j <= c.x; ++j)
    at.push_back(j == 1 ? c.sum_v - c.sum_u - E - c.grade : -c.grade);
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bt.push_back(c.sum_v - c.sum_u +
                   std::min<i64>(0, c.tail_deg_phi(1) - E));
    else
      bt.push_back(std::min<i64>(0, c.tail_deg_phi(j) - E) -
                   std::min<i64>(0, c.tail_deg_phi(j - 1) - E));
  }

  std::vector<ConditionResult> conds;
  conds.push_back(eta_cond(c));
  conds.push_back(num_cond("constant-bound", E, c.tail_deg_phi(c.z - c.x),
                           E <= c.tail_deg_phi(c.z - c.x)));
  conds.push_back(num_cond("slack-bound", c.sum_v - c.sum_u,
                           std::max<i64>(0, E),
                           c.sum_v - c.sum_u >= std::max<i64>(0, E)));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, at)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, bt)));

  return finish(Variant::sing, std::move(conds), std::move(at), std::move(bt),
                E, kHomogSlack, true);
}

FeasibilityReport check_rmi(const Eigenstructure& base,
                            const Prescription& p) {
  if (p.variant != Variant::rmi)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  i64 Eh = -head_sum(base.cmi, c.x) + c.sum_v - c.sum_u - c.x * c.grade;

  std::vector<i64> bh;
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bh.push_back(c.sum_v - c.sum_u +
                   std::min<i64>(0, c.tail_deg_phi(1) - Eh));
    else
      bh.push_back(std::min<i64>(0, c.tail_deg_phi(j) - Eh) -
                   std::min<i64>(0, c.tail_deg_phi(j - 1) - Eh));
  }

  std::vector<ConditionResult> conds;
  conds.push_back(eta_cond(c));
  conds.push_back(num_cond("constant-bound", Eh, c.tail_deg_phi(c.z - c.x),
                           Eh <= c.tail_deg_phi(c.z - c.x)));
  conds.push_back(num_cond("slack-bound", c.sum_v - c.sum_u,
                           std::max<i64>(0, Eh),
                           c.sum_v - c.sum_u >= std::max<i64>(0, Eh)));
  conds.push_back(gmaj_cond("rmi-majorization",
                            gen_majorize(p.v, base.rmi, bh)));

  return finish(Variant::rmi, std::move(conds), {}, std::move(bh), Eh,
                kHomogSlack, true);
}

FeasibilityReport check_cmi(const Eigenstructure& base,
                            const Prescription& p) {
  if (p.variant != Variant::cmi)
    throw InvalidPrescription("predicate/prescription variant mismatch");
  p.validate(base);
  Ctx c(base, p);

  std::vector<i64> ah;
  for (i64 j = 1; j <= c.x; ++j)
    ah.push_back(j == 1 ? c.sum_c - c.sum_d + (c.x - 1) * c.grade
                        : -c.grade);

  std::vector<ConditionResult> conds;
  conds.push_back(num_cond("cmi-budget", c.sum_d - c.sum_c,
                           c.x * c.grade,
                           c.sum_d - c.sum_c <= c.x * c.grade));
  conds.push_back(gmaj_cond("cmi-majorization",
                            gen_majorize(base.cmi, p.d, ah)));

  return finish(Variant::cmi, std::move(conds), std::move(ah), {},
                std::nullopt, "", false);
}

FeasibilityReport check(const Eigenstructure& base, const Prescription& p) {
  switch (p.variant) {
    case Variant::full: return check_full(base, p);
    case Variant::inf_sing: return check_inf_sing(base, p);
    case Variant::inf_cmi: return check_inf_cmi(base, p);
    case Variant::inf_rmi: return check_inf_rmi(base, p);
    case Variant::fin_sing: return check_fin_sing(base, p);
    case Variant::fin_cmi: return check_fin_cmi(base, p);
    case Variant::fin_rmi: return check_fin_rmi(base, p);
    case Variant::sing: return check_sing(base, p);
    case Variant::rmi: return check_rmi(base, p);
    case Variant::cmi: return check_cmi(base, p);
  }
  throw Error("unknown variant");
}

namespace {

void require_feasible(const FeasibilityReport& report) {
  if (!report.feasible)
    throw NotFeasible("chain construction needs a feasible report");
}

// First k >= 0 whose tail sum reaches the constant; the feasibility bound
// guarantees one exists at or below z - x.
i64 find_g(i64 constant, i64 limit, const std::function<i64(i64)>& tail) {
  for (i64 k = 0; k <= limit; ++k)
    if (constant <= tail(k)) return k;
  throw Error("no tail covers the constant despite a feasible report");
}

i64 pdeg(const Poly& a) { return a.is_constant() ? 0 : a.degree(); }

// Exhaustive fallback for the connecting-factor variants over finite
// fields.  The closed-form insertion rule needs a divisor of one exact
// degree between two adjacent base factors; over a non-closed field that
// divisor can be missing even though the target is reachable, because
// chain positions beyond the base rank are not pinned to base factors.
// Any realizing completion forces the chain's degree sum, so the space of
// candidate chains is finite over GF(p): walk it and accept the first
// chain whose assembled full prescription is feasible (the full predicate
// is exact over every field).  Over infinite fields the free positions
// range over unboundedly many polynomials, so the search is unavailable
// and the closed-form obstruction stands.
constexpr i64 kChainSearchDegreeCap = 16;

std::optional<std::vector<Poly>> search_beta_chain(const Eigenstructure& base,
                                                   const Prescription& p,
                                                   i64 deg_budget) {
  if (!base.field.is_gf() || deg_budget < 0 ||
      deg_budget > kChainSearchDegreeCap)
    return std::nullopt;
  Ctx c(base, p);
  Prescription full;
  full.variant = Variant::full;
  full.z = p.z;
  full.x = p.x;
  full.d = p.d;
  full.v = p.v;

  // Divisor lists for positions pinned by the base, cofactor lists by
  // degree for the free positions above the rank.
  std::vector<std::vector<Poly>> pinned;
  for (i64 i = 1; i <= std::min(c.r, c.rx); ++i)
    pinned.push_back(monic_divisors(c.alpha(i)));
  std::map<i64, std::vector<Poly>> monics;
  auto monic_of = [&](i64 t) -> const std::vector<Poly>& {
    auto it = monics.find(t);
    if (it == monics.end())
      it = monics.emplace(t, all_monic(base.field, t)).first;
    return it->second;
  };

  std::vector<Poly> chain;
  std::optional<std::vector<Poly>> found;
  std::function<void(i64, const Poly&, i64)> dfs = [&](i64 i, const Poly& prev,
                                                       i64 used) {
    if (found) return;
    if (i > c.rx) {
      if (used != deg_budget) return;
      std::vector<HomogFactor> gamma;
      gamma.reserve(chain.size());
      for (std::size_t k = 0; k < chain.size(); ++k)
        gamma.emplace_back(p.f[k], chain[k]);
      full.gamma = std::move(gamma);
      if (check_full(base, full).feasible) found = chain;
      return;
    }
    Poly lower = prev;
    if (i - c.z >= 1) lower = poly_lcm(lower, c.alpha(i - c.z));
    const i64 slots_left = c.rx - i;  // positions after this one
    if (i <= c.r) {
      if (!divides(lower, c.alpha(i))) return;
      for (const Poly& q : pinned[static_cast<std::size_t>(i - 1)]) {
        if (found) return;
        if (!divides(lower, q)) continue;
        i64 dq = pdeg(q);
        // Chain divisibility forces nondecreasing degrees.
        if (used + dq * (slots_left + 1) > deg_budget) continue;
        chain.push_back(q);
        dfs(i + 1, q, used + dq);
        chain.pop_back();
      }
    } else {
      i64 dl = pdeg(lower);
      for (i64 t = 0; used + (dl + t) * (slots_left + 1) <= deg_budget; ++t) {
        for (const Poly& cof : monic_of(t)) {
          if (found) return;
          Poly q = lower * cof;
          chain.push_back(q);
          dfs(i + 1, q, used + dl + t);
          chain.pop_back();
        }
      }
    }
  };
  dfs(1, Poly::one(base.field), 0);
  return found;
}

std::optional<std::vector<HomogFactor>> search_gamma_chain(
    const Eigenstructure& base, const Prescription& p, i64 deg_budget) {
  if (!base.field.is_gf() || deg_budget < 0 ||
      deg_budget > kChainSearchDegreeCap)
    return std::nullopt;
  Ctx c(base, p);
  Prescription full;
  full.variant = Variant::full;
  full.z = p.z;
  full.x = p.x;
  full.d = p.d;
  full.v = p.v;

  std::vector<std::vector<Poly>> pinned;
  for (i64 i = 1; i <= std::min(c.r, c.rx); ++i)
    pinned.push_back(monic_divisors(c.alpha(i)));
  std::map<i64, std::vector<Poly>> monics;
  auto monic_of = [&](i64 t) -> const std::vector<Poly>& {
    auto it = monics.find(t);
    if (it == monics.end())
      it = monics.emplace(t, all_monic(base.field, t)).first;
    return it->second;
  };

  std::vector<HomogFactor> chain;
  std::optional<std::vector<HomogFactor>> found;
  std::function<void(i64, i64, const Poly&, i64)> dfs =
      [&](i64 i, i64 prev_inf, const Poly& prev_fin, i64 used) {
        if (found) return;
        if (i > c.rx) {
          if (used != deg_budget) return;
          full.gamma = chain;
          if (check_full(base, full).feasible) found = chain;
          return;
        }
        Poly lower = prev_fin;
        i64 lo_inf = prev_inf;
        if (i - c.z >= 1) {
          lower = poly_lcm(lower, c.alpha(i - c.z));
          lo_inf = std::max(lo_inf, c.e(i - c.z));
        }
        const i64 slots_left = c.rx - i;
        auto try_fin = [&](const Poly& q) {
          i64 dq = pdeg(q);
          i64 hi_inf = i <= c.r ? c.e(i)
                                : deg_budget;  // budget prunes further below
          for (i64 m = lo_inf; m <= hi_inf; ++m) {
            if (found) return;
            // Chain divisibility forces nondecreasing total degrees.
            if (used + (m + dq) * (slots_left + 1) > deg_budget) break;
            chain.emplace_back(m, q);
            dfs(i + 1, m, q, used + m + dq);
            chain.pop_back();
          }
        };
        if (i <= c.r) {
          if (!divides(lower, c.alpha(i)) || lo_inf > c.e(i)) return;
          for (const Poly& q : pinned[static_cast<std::size_t>(i - 1)]) {
            if (found) return;
            if (!divides(lower, q)) continue;
            try_fin(q);
          }
        } else {
          i64 dl = pdeg(lower);
          for (i64 t = 0;
               used + (lo_inf + dl + t) * (slots_left + 1) <= deg_budget;
               ++t) {
            for (const Poly& cof : monic_of(t)) {
              if (found) return;
              try_fin(lower * cof);
            }
          }
        }
      };
  dfs(1, 0, Poly::one(base.field), 0);
  return found;
}

}  // namespace

ChainConstruction construct_beta_chain(const Eigenstructure& base,
                                       const Prescription& p,
                                       const FeasibilityReport& report) {
  if (p.variant != Variant::inf_sing || report.variant != Variant::inf_sing)
    throw InvalidPrescription(
        "invariant-factor chain construction needs the inf-sing variant");
  require_feasible(report);
  p.validate(base);
  Ctx c(base, p);
  i64 A = *report.constant;

  ChainConstruction out;
  out.variant = Variant::inf_sing;
  out.constant = A;
  out.positive_branch = A > 0;

  if (c.rx == 0) {
    if (A != 0) throw AssemblyMismatch("empty chain with nonzero constant");
    return out;
  }

  if (A > 0) {
    out.g = find_g(A, c.z - c.x,
                   [&](i64 k) { return c.tail_deg_alpha(k); });
    i64 rem = A - c.tail_deg_alpha(out.g - 1);
    out.h = 0;
    for (i64 k = 1; k <= c.r; ++k)
      if (rem <= c.deg_alpha(k - out.g + 1)) {
        out.h = k;
        break;
      }
    if (out.h == 0)
      throw Error("no insertion point despite a feasible report");
    out.w = c.deg_alpha(out.h - out.g) + c.deg_alpha(out.h - out.g + 1) +
            c.tail_deg_alpha(out.g - 1) - A;
    // The connecting factor sits strictly between two adjacent invariant
    // factors; existence of a divisor of the exact degree depends on how
    // the quotient splits over the field.
    try {
      out.tau = divisor_of_degree(c.alpha(out.h - out.g),
                                  c.alpha(out.h - out.g + 1), out.w);
    } catch (const FieldObstruction&) {
      // The closed-form rule failed over this field; over a finite field
      // the exhaustive search decides whether any chain works at all.
      auto alt = search_beta_chain(base, p, c.sum_deg_alpha() - A);
      if (!alt) throw;
      out.canonical = false;
      out.beta = *alt;
    }
    if (out.canonical) {
      for (i64 i = 1; i <= c.rx; ++i) {
        if (i < out.h + c.x)
          out.beta.push_back(c.alpha(i - c.x - out.g));
        else if (i == out.h + c.x)
          out.beta.push_back(*out.tau);
        else
          out.beta.push_back(c.alpha(i - c.x - out.g + 1));
      }
    }
  } else {
    out.tau = Poly::monomial(base.field, -A);
    for (i64 i = 1; i < c.rx; ++i) out.beta.push_back(c.alpha(i - c.x));
    out.beta.push_back(c.alpha(c.r) * *out.tau);
  }

  i64 deg_sum = 0;
  for (const Poly& b : out.beta) deg_sum += b.is_constant() ? 0 : b.degree();
  if (c.sum_deg_alpha() - deg_sum != A)
    throw AssemblyMismatch("constructed chain misses the degree identity");
  return out;
}

ChainConstruction construct_f_chain(const Eigenstructure& base,
                                    const Prescription& p,
                                    const FeasibilityReport& report) {
  if (p.variant != Variant::fin_sing || report.variant != Variant::fin_sing)
    throw InvalidPrescription(
        "infinite-multiplicity chain construction needs the fin-sing "
        "variant");
  require_feasible(report);
  p.validate(base);
  Ctx c(base, p);
  i64 B = *report.constant;

  ChainConstruction out;
  out.variant = Variant::fin_sing;
  out.constant = B;
  out.positive_branch = B > 0;

  if (c.rx == 0) {
    if (B != 0) throw AssemblyMismatch("empty chain with nonzero constant");
    return out;
  }

  if (B > 0) {
    out.g = find_g(B, c.z - c.x, [&](i64 k) { return c.tail_e(k); });
    i64 rem = B - c.tail_e(out.g - 1);
    out.h = 0;
    for (i64 k = 1; k <= c.r; ++k)
      if (rem <= c.e(k - out.g + 1)) {
        out.h = k;
        break;
      }
    if (out.h == 0)
      throw Error("no insertion point despite a feasible report");
    out.w = c.e(out.h - out.g) + c.e(out.h - out.g + 1) +
            c.tail_e(out.g - 1) - B;
    for (i64 i = 1; i <= c.rx; ++i) {
      if (i < out.h + c.x)
        out.f.push_back(i - c.x - out.g <= 0 ? 0 : c.e(i - c.x - out.g));
      else if (i == out.h + c.x)
        out.f.push_back(out.w);
      else
        out.f.push_back(c.e(i - c.x - out.g + 1));
    }
  } else {
    for (i64 i = 1; i < c.rx; ++i)
      out.f.push_back(i - c.x <= 0 ? 0 : c.e(i - c.x));
    out.f.push_back((c.r == 0 ? 0 : c.e(c.r)) - B);
  }

  if (c.sum_e() - vec_sum(out.f) != B)
    throw AssemblyMismatch("constructed chain misses the degree identity");
  for (std::size_t i = 1; i < out.f.size(); ++i)
    if (out.f[i - 1] > out.f[i])
      throw AssemblyMismatch("constructed multiplicities not nondecreasing");
  return out;
}

ChainConstruction construct_gamma_chain(const Eigenstructure& base,
                                        const Prescription& p,
                                        const FeasibilityReport& report) {
  if (p.variant != Variant::sing || report.variant != Variant::sing)
    throw InvalidPrescription(
        "homogeneous chain construction needs the sing variant");
  require_feasible(report);
  p.validate(base);
  Ctx c(base, p);
  i64 E = *report.constant;

  ChainConstruction out;
  out.variant = Variant::sing;
  out.constant = E;
  out.positive_branch = E > 0;

  if (c.rx == 0) {
    if (E != 0) throw AssemblyMismatch("empty chain with nonzero constant");
    return out;
  }

  if (E > 0) {
    out.g = find_g(E, c.z - c.x, [&](i64 k) { return c.tail_deg_phi(k); });
    i64 rem = E - c.tail_deg_phi(out.g - 1);
    out.h = 0;
    for (i64 k = 1; k <= c.r; ++k)
      if (rem <= c.deg_phi(k - out.g + 1)) {
        out.h = k;
        break;
      }
    if (out.h == 0)
      throw Error("no insertion point despite a feasible report");
    out.w = c.deg_phi(out.h - out.g) + c.deg_phi(out.h - out.g + 1) +
            c.tail_deg_phi(out.g - 1) - E;
    try {
      out.tau_h = divisor_of_total_degree(c.phi(out.h - out.g),
                                          c.phi(out.h - out.g + 1), out.w);
    } catch (const FieldObstruction&) {
      auto alt = search_gamma_chain(base, p, c.sum_deg_phi() - E);
      if (!alt) throw;
      out.canonical = false;
      out.gamma = *alt;
    }
    if (out.canonical) {
      for (i64 i = 1; i <= c.rx; ++i) {
        if (i < out.h + c.x)
          out.gamma.push_back(c.phi(i - c.x - out.g));
        else if (i == out.h + c.x)
          out.gamma.push_back(*out.tau_h);
        else
          out.gamma.push_back(c.phi(i - c.x - out.g + 1));
      }
    }
  } else {
    // Any homogeneous factor of total degree -E extends the chain;
    // pin the choice to the pure infinite part.
    out.tau_h = HomogFactor(-E, Poly::one(base.field));
    for (i64 i = 1; i < c.rx; ++i) out.gamma.push_back(c.phi(i - c.x));
    out.gamma.push_back(c.phi(c.r) * *out.tau_h);
  }

  i64 deg_sum = 0;
  for (const HomogFactor& gm : out.gamma) deg_sum += gm.total_degree();
  if (c.sum_deg_phi() - deg_sum != E)
    throw AssemblyMismatch("constructed chain misses the degree identity");
  return out;
}

namespace {

Prescription make_full(const Prescription& src,
                       std::vector<HomogFactor> gamma, std::vector<i64> d,
                       std::vector<i64> v) {
  Prescription full;
  full.variant = Variant::full;
  full.z = src.z;
  full.x = src.x;
  full.gamma = std::move(gamma);
  full.d = std::move(d);
  full.v = std::move(v);
  return full;
}

std::vector<HomogFactor> zip_gamma(const std::vector<i64>& f,
                                   const std::vector<Poly>& beta) {
  if (f.size() != beta.size())
    throw AssemblyMismatch("chain lengths disagree during assembly");
  std::vector<HomogFactor> gamma;
  gamma.reserve(f.size());
  for (std::size_t i = 0; i < f.size(); ++i)
    gamma.emplace_back(f[i], beta[i]);
  return gamma;
}

CompletionWitness finish_witness(const Eigenstructure& base,
                                 Prescription full,
                                 std::vector<ChainConstruction> stages) {
  CompletionWitness w;
  w.full = std::move(full);
  w.stages = std::move(stages);
  w.report = check_full(base, w.full);
  if (!w.report.feasible)
    throw AssemblyMismatch(
        "assembled full prescription fails the full predicate");
  return w;
}

// The two staged reductions shared by the one-sided variants: either the
// free row indices are fixed as the base ones extended by the residual
// budget sequence, or the free column indices absorb the base tail.
std::vector<i64> residual_b_inf(const Ctx& c) {
  std::vector<i64> bt;
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bt.push_back(c.sum_c - c.sum_d + c.sum_e() + c.x * c.grade -
                   c.sum_max(-1, c.rx));
    else
      bt.push_back(c.sum_max(-j + 1, c.rx) - c.sum_max(-j, c.rx));
  }
  return bt;
}

std::vector<i64> residual_b_fin(const Ctx& c) {
  std::vector<i64> bt;
  for (i64 j = 1; j <= c.z - c.x; ++j) {
    if (j == 1)
      bt.push_back(c.sum_c - c.sum_d + c.sum_deg_alpha() + c.x * c.grade -
                   c.sum_lcm(-1, c.rx));
    else
      bt.push_back(c.sum_lcm(-j + 1, c.rx) - c.sum_lcm(-j, c.rx));
  }
  return bt;
}

void expect_constant(const FeasibilityReport& staged, i64 want,
                     const char* what) {
  if (!staged.feasible)
    throw AssemblyMismatch(std::string("staged ") + what +
                           " reduction is infeasible");
  if (!staged.constant || *staged.constant != want)
    throw AssemblyMismatch(std::string("staged ") + what +
                           " constant mismatch");
}

// Fixing the row indices by the residual sequence absorbs the whole budget
// when new rows remain rank-neutral; if every new row raises the rank there
// is no residual and only the sign of the constant is pinned.
void expect_absorbed(const FeasibilityReport& staged, i64 z, i64 x,
                     const char* what) {
  if (!staged.feasible)
    throw AssemblyMismatch(std::string("staged ") + what +
                           " reduction is infeasible");
  if (!staged.constant ||
      (z > x ? *staged.constant != 0 : *staged.constant > 0))
    throw AssemblyMismatch(std::string("staged ") + what +
                           " constant mismatch");
}

}  // namespace

CompletionWitness witness_to_full(const Eigenstructure& base,
                                  const Prescription& p) {
  p.validate(base);
  switch (p.variant) {
    case Variant::full: {
      FeasibilityReport rep = check_full(base, p);
      if (!rep.feasible) throw NotFeasible("full prescription infeasible");
      CompletionWitness w;
      w.full = p;
      w.report = std::move(rep);
      return w;
    }

    case Variant::inf_sing: {
      FeasibilityReport rep = check_inf_sing(base, p);
      if (!rep.feasible) throw NotFeasible("inf-sing prescription infeasible");
      ChainConstruction chain = construct_beta_chain(base, p, rep);
      Prescription full = make_full(p, zip_gamma(p.f, chain.beta), p.d, p.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::fin_sing: {
      FeasibilityReport rep = check_fin_sing(base, p);
      if (!rep.feasible) throw NotFeasible("fin-sing prescription infeasible");
      ChainConstruction chain = construct_f_chain(base, p, rep);
      Prescription full = make_full(p, zip_gamma(chain.f, p.beta), p.d, p.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::sing: {
      FeasibilityReport rep = check_sing(base, p);
      if (!rep.feasible) throw NotFeasible("sing prescription infeasible");
      ChainConstruction chain = construct_gamma_chain(base, p, rep);
      Prescription full = make_full(p, chain.gamma, p.d, p.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::inf_cmi: {
      FeasibilityReport rep = check_inf_cmi(base, p);
      if (!rep.feasible) throw NotFeasible("inf-cmi prescription infeasible");
      Ctx c(base, p);
      Prescription staged = p;
      staged.variant = Variant::inf_sing;
      staged.v = seq_union(base.rmi, residual_b_inf(c));
      FeasibilityReport srep = check_inf_sing(base, staged);
      expect_absorbed(srep, p.z, p.x, "inf-sing");
      ChainConstruction chain = construct_beta_chain(base, staged, srep);
      Prescription full =
          make_full(p, zip_gamma(p.f, chain.beta), staged.d, staged.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::fin_cmi: {
      FeasibilityReport rep = check_fin_cmi(base, p);
      if (!rep.feasible) throw NotFeasible("fin-cmi prescription infeasible");
      Ctx c(base, p);
      Prescription staged = p;
      staged.variant = Variant::fin_sing;
      staged.v = seq_union(base.rmi, residual_b_fin(c));
      FeasibilityReport srep = check_fin_sing(base, staged);
      expect_absorbed(srep, p.z, p.x, "fin-sing");
      ChainConstruction chain = construct_f_chain(base, staged, srep);
      Prescription full =
          make_full(p, zip_gamma(chain.f, p.beta), staged.d, staged.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::inf_rmi: {
      FeasibilityReport rep = check_inf_rmi(base, p);
      if (!rep.feasible) throw NotFeasible("inf-rmi prescription infeasible");
      Prescription staged = p;
      staged.variant = Variant::inf_sing;
      staged.d = drop(base.cmi, p.x);  // keep the base tail as column indices
      FeasibilityReport srep = check_inf_sing(base, staged);
      expect_constant(srep, *rep.constant, "inf-sing");
      ChainConstruction chain = construct_beta_chain(base, staged, srep);
      Prescription full =
          make_full(p, zip_gamma(p.f, chain.beta), staged.d, staged.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::fin_rmi: {
      FeasibilityReport rep = check_fin_rmi(base, p);
      if (!rep.feasible) throw NotFeasible("fin-rmi prescription infeasible");
      Prescription staged = p;
      staged.variant = Variant::fin_sing;
      staged.d = drop(base.cmi, p.x);
      FeasibilityReport srep = check_fin_sing(base, staged);
      expect_constant(srep, *rep.constant, "fin-sing");
      ChainConstruction chain = construct_f_chain(base, staged, srep);
      Prescription full =
          make_full(p, zip_gamma(chain.f, p.beta), staged.d, staged.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::rmi: {
      FeasibilityReport rep = check_rmi(base, p);
      if (!rep.feasible) throw NotFeasible("rmi prescription infeasible");
      Prescription staged = p;
      staged.variant = Variant::sing;
      staged.d = drop(base.cmi, p.x);
      FeasibilityReport srep = check_sing(base, staged);
      expect_constant(srep, *rep.constant, "sing");
      ChainConstruction chain = construct_gamma_chain(base, staged, srep);
      Prescription full = make_full(p, chain.gamma, staged.d, staged.v);
      return finish_witness(base, std::move(full), {std::move(chain)});
    }

    case Variant::cmi: {
      FeasibilityReport rep = check_cmi(base, p);
      if (!rep.feasible) throw NotFeasible("cmi prescription infeasible");
      Prescription staged = p;
      staged.variant = Variant::inf_cmi;
      staged.f.clear();
      for (i64 i = 1; i <= base.rank + p.x; ++i)
        staged.f.push_back(i - p.x <= 0
                               ? 0
                               : base.es[static_cast<std::size_t>(
                                     i - p.x - 1)]);
      FeasibilityReport srep = check_inf_cmi(base, staged);
      if (!srep.feasible)
        throw AssemblyMismatch("staged inf-cmi reduction is infeasible");
      // With the base multiplicities shifted in, the column test must
      // reduce to the bare one.
      if (srep.a != rep.a)
        throw AssemblyMismatch("staged inf-cmi auxiliary sequence mismatch");
      CompletionWitness inner = witness_to_full(base, staged);
      return inner;
    }
  }
  throw Error("unknown variant");
}

namespace {

Variant transposed_variant(Variant v) {
  switch (v) {
    case Variant::inf_cmi: return Variant::inf_rmi;
    case Variant::inf_rmi: return Variant::inf_cmi;
    case Variant::fin_cmi: return Variant::fin_rmi;
    case Variant::fin_rmi: return Variant::fin_cmi;
    case Variant::rmi: return Variant::cmi;
    case Variant::cmi: return Variant::rmi;
    default: return v;  // full, inf_sing, fin_sing, sing are self-dual
  }
}

}  // namespace

Prescription transposed(const Prescription& p) {
  Prescription t = p;
  t.variant = transposed_variant(p.variant);
  std::swap(t.d, t.v);
  return t;
}

FeasibilityReport check_columns(const Eigenstructure& base,
                                const Prescription& p) {
  return check(transposed(base), transposed(p));
}

}  // namespace pmc
