// Feasibility predicates for row completion with prescribed partial
// eigenstructure, the constructive chain procedures behind them, and the
// assembly of partial prescriptions into fully pinned ones.

#include <algorithm>
#include <vector>

#include "doctest.h"
#include "pmc/completion.hpp"
#include "pmc/error.hpp"
#include "pmc/generate.hpp"
#include "pmc/io.hpp"
#include "pmc/polymatrix.hpp"

using namespace pmc;

namespace {

Poly pp(const Field& f, std::vector<i64> cs) { return Poly::of(f, cs); }

// [[s, 1], [-1, s]], grade 1: rank 2, factors (1, s^2+1), no index lists.
Eigenstructure rot_base(const Field& f) {
  PolyMatrix m(f, 2, 2, 1);
  m.set(0, 0, pp(f, {0, 1}));
  m.set(0, 1, pp(f, {1}));
  m.set(1, 0, pp(f, {-1}));
  m.set(1, 1, pp(f, {0, 1}));
  return eigenstructure(m);
}

// [[s^2, -1, 0], [0, 0, 0]], grade 2: rank 1, c = (2,0), u = (0).
Eigenstructure wide_base(const Field& f) {
  PolyMatrix m(f, 2, 3, 2);
  m.set(0, 0, pp(f, {0, 0, 1}));
  m.set(0, 1, pp(f, {-1}));
  return eigenstructure(m);
}

bool nonincreasing(const std::vector<i64>& v) {
  return std::is_sorted(v.rbegin(), v.rend());
}

}  // namespace

TEST_CASE("multiplicities-and-indices target on the rotation base") {
  Eigenstructure e = rot_base(Field::rationals());
  REQUIRE(e.rank == 2);
  Prescription p;
  p.variant = Variant::inf_sing;
  p.z = 1;
  p.x = 0;
  p.f = {0, 0};
  p.v = {1};
  FeasibilityReport rep = check_inf_sing(e, p);
  CHECK(rep.feasible);
  CHECK(rep.field_caveat);  // needs a degree-1 divisor of s^2 + 1
  REQUIRE(rep.constant);
  CHECK(*rep.constant == 1);
  CHECK(rep.constant_name == "finite-degree-slack");
  CHECK(rep.b == std::vector<i64>{1});
  CHECK(rep.a.empty());

  // Lowering the row index to zero removes both the slack and the caveat.
  p.v = {0};
  FeasibilityReport rep0 = check_inf_sing(e, p);
  CHECK(rep0.feasible);
  CHECK(!rep0.field_caveat);
  CHECK(*rep0.constant == 0);

  // An index above the total degree budget fails the constant bound.
  p.v = {5};
  FeasibilityReport rep5 = check_inf_sing(e, p);
  CHECK(!rep5.feasible);
  REQUIRE(rep5.find("constant-bound"));
  CHECK(!rep5.find("constant-bound")->holds);
}

TEST_CASE("connecting divisor exists over GF(5) but not GF(3) or Q") {
  Prescription p;
  p.variant = Variant::inf_sing;
  p.z = 1;
  p.x = 0;
  p.f = {0, 0};
  p.v = {1};

  // GF(5): s^2 + 1 = (s+2)(s+3), the smaller root factor is chosen.
  CompletionWitness w = witness_to_full(rot_base(Field::gf(5)), p);
  REQUIRE(w.stages.size() == 1);
  const ChainConstruction& ch = w.stages[0];
  CHECK(ch.positive_branch);
  CHECK(ch.constant == 1);
  CHECK(ch.g == 1);
  CHECK(ch.h == 2);
  CHECK(ch.w == 1);
  CHECK(ch.canonical);
  REQUIRE(ch.tau);
  CHECK(to_string(*ch.tau) == "s + 2");
  REQUIRE(ch.beta.size() == 2);
  CHECK(to_string(ch.beta[0]) == "1");
  CHECK(to_string(ch.beta[1]) == "s + 2");
  CHECK(w.report.feasible);
  CHECK(w.full.variant == Variant::full);

  // GF(2): s^2 + 1 = (s+1)^2 still yields a degree-1 divisor.
  CompletionWitness w2 = witness_to_full(rot_base(Field::gf(2)), p);
  CHECK(to_string(*w2.stages[0].tau) == "s + 1");
  CHECK(w2.report.feasible);

  // GF(3) and Q: s^2 + 1 is irreducible, no chain exists at all.
  CHECK_THROWS_AS(witness_to_full(rot_base(Field::gf(3)), p),
                  FieldObstruction);
  CHECK_THROWS_AS(witness_to_full(rot_base(Field::rationals()), p),
                  FieldObstruction);
}

TEST_CASE("nonpositive slack pins the chain without any divisor search") {
  // v = (0) gives constant 0: the construction must succeed over every
  // field, including ones where s^2 + 1 is irreducible.
  Prescription p;
  p.variant = Variant::inf_sing;
  p.z = 1;
  p.x = 0;
  p.f = {0, 0};
  p.v = {0};
  for (const Field& f : {Field::gf(3), Field::rationals()}) {
    CompletionWitness w = witness_to_full(rot_base(f), p);
    CHECK(!w.stages[0].positive_branch);
    CHECK(w.stages[0].canonical);
    CHECK(w.report.feasible);
    // Everything is absorbed: the last factor keeps the full s^2 + 1.
    CHECK(to_string(w.full.gamma.back().finite()) == "s^2 + 1");
  }
}

TEST_CASE("index-only targets on the rotation base") {
  Eigenstructure e = rot_base(Field::rationals());
  Prescription p;
  p.variant = Variant::sing;
  p.z = 1;
  p.x = 0;
  p.v = {1};
  FeasibilityReport rep = check_sing(e, p);
  CHECK(rep.feasible);
  CHECK(rep.field_caveat);
  CHECK(*rep.constant == 1);
  CHECK(rep.constant_name == "homogeneous-degree-slack");
  CHECK(rep.b == std::vector<i64>{1});

  p.v = {5};
  FeasibilityReport rep5 = check_sing(e, p);
  CHECK(!rep5.feasible);
  CHECK(!rep5.find("constant-bound")->holds);

  // Homogeneous witness over GF(5) takes the positive branch.
  Prescription p5 = p;
  p5.v = {1};
  CompletionWitness w = witness_to_full(rot_base(Field::gf(5)), p5);
  CHECK(w.report.feasible);
  CHECK(w.stages[0].positive_branch);
  CHECK(w.stages[0].variant == Variant::sing);

  // Row-only variants carry the same slack.
  Prescription pr;
  pr.variant = Variant::rmi;
  pr.z = 1;
  pr.x = 0;
  pr.v = {1};
  FeasibilityReport rr = check_rmi(e, pr);
  CHECK(rr.feasible);
  CHECK(rr.field_caveat);
  CHECK(*rr.constant == 1);

  Prescription pi;
  pi.variant = Variant::inf_rmi;
  pi.z = 1;
  pi.x = 0;
  pi.f = {0, 0};
  pi.v = {1};
  FeasibilityReport ri = check_inf_rmi(e, pi);
  CHECK(ri.feasible);
  CHECK(*ri.constant == 1);
}

TEST_CASE("multiplicities-and-columns target assembles its free rows") {
  Eigenstructure e = rot_base(Field::rationals());
  Prescription p;
  p.variant = Variant::inf_cmi;
  p.z = 1;
  p.x = 0;
  p.f = {0, 0};
  FeasibilityReport rep = check_inf_cmi(e, p);
  CHECK(rep.feasible);
  CHECK(!rep.field_caveat);  // this variant is exact over any field
  CompletionWitness w = witness_to_full(e, p);
  CHECK(w.full.v == std::vector<i64>{0});
  REQUIRE(w.full.gamma.size() == 2);
  CHECK(to_string(w.full.gamma[1].finite()) == "s^2 + 1");
  CHECK(w.report.feasible);
}

TEST_CASE("factor-and-index targets on the wide base") {
  Eigenstructure e = wide_base(Field::rationals());
  REQUIRE(e.rank == 1);
  REQUIRE(e.cmi == std::vector<i64>{2, 0});
  REQUIRE(e.rmi == std::vector<i64>{0});

  // Trivial factors, one free column index: region over d1 is {0,2,3,4}.
  for (i64 d1 = 0; d1 <= 6; ++d1) {
    Prescription p;
    p.variant = Variant::fin_sing;
    p.z = 1;
    p.x = 1;
    p.beta = {Poly::one(e.field), Poly::one(e.field)};
    p.d = {d1};
    p.v = {0};
    FeasibilityReport rep = check_fin_sing(e, p);
    bool want = d1 == 0 || d1 == 2 || d1 == 3 || d1 == 4;
    CHECK(rep.feasible == want);
    if (d1 == 3) {
      CHECK(*rep.constant == -1);
      CHECK(rep.constant_name == "infinite-multiplicity-slack");
      CHECK(!rep.field_caveat);  // negative slack never needs roots
      CompletionWitness w = witness_to_full(e, p);
      CHECK(w.stages[0].f == std::vector<i64>{0, 1});
      CHECK(!w.stages[0].positive_branch);
      CHECK(w.report.feasible);
    }
  }
}

TEST_CASE("column-only region on the wide base") {
  Eigenstructure e = wide_base(Field::rationals());
  for (i64 d1 = 0; d1 <= 6; ++d1) {
    Prescription p;
    p.variant = Variant::cmi;
    p.z = 1;
    p.x = 1;
    p.d = {d1};
    FeasibilityReport rep = check_cmi(e, p);
    bool want = d1 == 0 || d1 == 2 || d1 == 3 || d1 == 4;
    CHECK(rep.feasible == want);
  }
  Prescription p;
  p.variant = Variant::cmi;
  p.z = 1;
  p.x = 1;
  p.d = {3};
  CompletionWitness w = witness_to_full(e, p);
  CHECK(w.report.feasible);
  CHECK(w.full.v == std::vector<i64>{0});
}

TEST_CASE("factor-and-column target on the wide base") {
  Eigenstructure e = wide_base(Field::rationals());
  Prescription p;
  p.variant = Variant::fin_cmi;
  p.z = 1;
  p.x = 1;
  p.beta = {Poly::one(e.field), Poly::one(e.field)};
  p.d = {3};
  FeasibilityReport rep = check_fin_cmi(e, p);
  CHECK(rep.feasible);
  CHECK(rep.a == std::vector<i64>{-1});
  CompletionWitness w = witness_to_full(e, p);
  CHECK(w.report.feasible);

  p.d = {5};
  FeasibilityReport rep5 = check_fin_cmi(e, p);
  CHECK(!rep5.feasible);
  REQUIRE(rep5.find("cmi-slack"));
  CHECK(!rep5.find("cmi-slack")->holds);
}

TEST_CASE("factor-and-row target on the wide base") {
  Eigenstructure e = wide_base(Field::rationals());
  Prescription p;
  p.variant = Variant::fin_rmi;
  p.z = 1;
  p.x = 1;
  p.beta = {Poly::one(e.field), Poly::one(e.field)};
  p.v = {0};
  FeasibilityReport rep = check_fin_rmi(e, p);
  CHECK(rep.feasible);
  CHECK(!rep.field_caveat);
  CHECK(*rep.constant == -4);
  CHECK(rep.a == std::vector<i64>{2});
  CompletionWitness w = witness_to_full(e, p);
  CHECK(w.report.feasible);
}

TEST_CASE("fallback chain search rescues a non-canonical insertion") {
  // Base [[0,0],[s^2+s+1,0]] over GF(2), grade 2: rank 1, alpha = s^2+s+1
  // (irreducible), c = (0), u = (0).  Appending two rows with rank rise 1,
  // multiplicities (0,1) and row indices (2,0): the closed-form insertion
  // wants a degree-1 divisor of s^2+s+1, which does not exist, yet the
  // chain (1, s) is valid because the new top factor need not divide the
  // old one.  The exhaustive fallback must find it.
  Field f2 = Field::gf(2);
  PolyMatrix m(f2, 2, 2, 2);
  m.set(1, 0, pp(f2, {1, 1, 1}));
  Eigenstructure e = eigenstructure(m);
  REQUIRE(e.rank == 1);
  REQUIRE(to_string(e.alphas[0]) == "s^2 + s + 1");

  Prescription p;
  p.variant = Variant::inf_sing;
  p.z = 2;
  p.x = 1;
  p.f = {0, 1};
  p.v = {2, 0};
  FeasibilityReport rep = check_inf_sing(e, p);
  CHECK(rep.feasible);
  CHECK(rep.field_caveat);
  CHECK(*rep.constant == 1);

  CompletionWitness w = witness_to_full(e, p);
  CHECK(!w.stages[0].canonical);  // closed-form rule failed, search ran
  CHECK(w.report.feasible);
  i64 beta_deg = 0;
  for (const Poly& b : w.stages[0].beta) beta_deg += b.degree();
  CHECK(beta_deg == e.alpha_deg_sum() - *rep.constant);

  // The prescription really is achievable: exhaustive enumeration agrees.
  OracleVerdict verdict = verify_predicate(m, p);
  CHECK(verdict.consistent);
  CHECK(verdict.achieved);
  CHECK(!verdict.obstructed);
  CHECK(verdict.witness_closed);
}

TEST_CASE("assembled witnesses re-check as fully pinned targets") {
  // Across random bases over GF(5), every feasible unobstructed partial
  // target must assemble into a full prescription that itself passes.
  Rng rng(0x5eed3001);
  int assembled = 0;
  for (int it = 0; it < 400; ++it) {
    Field f = Field::gf(5);
    Eigenstructure e = random_eigenstructure(rng, f, rng.uniform(1, 3),
                                             rng.uniform(1, 3),
                                             rng.uniform(0, 2));
    Variant v = static_cast<Variant>(rng.uniform(1, 9));  // partial variants
    Prescription p = random_prescription(rng, e, v);
    FeasibilityReport rep = check(e, p);
    if (!rep.feasible) continue;
    CompletionWitness w;
    try {
      w = witness_to_full(e, p);
    } catch (const FieldObstruction&) {
      CHECK(rep.field_caveat);  // only caveat cases may be obstructed
      continue;
    }
    CHECK(w.report.feasible);
    CHECK(w.full.variant == Variant::full);
    w.full.validate(e);
    ++assembled;
  }
  CHECK(assembled > 100);
}

TEST_CASE("row-side and column-side accounting agree on the full target") {
  Eigenstructure e = wide_base(Field::rationals());
  Prescription p;
  p.variant = Variant::full;
  p.z = 1;
  p.x = 1;
  p.gamma = {HomogFactor::unit(e.field), HomogFactor(1, Poly::one(e.field))};
  p.d = {3};
  p.v = {0};
  FeasibilityReport r1 = check_full(e, p);
  FeasibilityReport r2 = check_full_alt(e, p);
  CHECK(r1.feasible);
  CHECK(r1.feasible == r2.feasible);

  Rng rng(0x5eed3002);
  int cases = 0, hits = 0;
  while (cases < 1200) {
    Field f = rng.coin() ? Field::gf(3) : Field::rationals();
    Eigenstructure base = random_eigenstructure(rng, f, rng.uniform(1, 3),
                                                rng.uniform(1, 3),
                                                rng.uniform(0, 2));
    Prescription q = random_prescription(rng, base, Variant::full);
    FeasibilityReport a = check_full(base, q);
    FeasibilityReport b = check_full_alt(base, q);
    CHECK(a.feasible == b.feasible);
    hits += a.feasible;
    ++cases;
  }
  CHECK(hits > 100);  // both outcomes must actually occur
  CHECK(hits < cases);
}

TEST_CASE("auxiliary sequences are monotone when the bounds hold") {
  // Whenever the slack bound holds the column-side sequence decreases, and
  // with the constant bound as well the row-side sequence decreases and
  // stays nonnegative.
  Rng rng(0x5eed3003);
  int slack_hits = 0, both_hits = 0;
  for (int it = 0; it < 6000; ++it) {
    Field f = Field::gf(3);
    Eigenstructure e = random_eigenstructure(rng, f, rng.uniform(1, 3),
                                             rng.uniform(1, 3),
                                             rng.uniform(0, 2));
    Prescription p = random_prescription(rng, e, Variant::inf_sing);
    FeasibilityReport rep = check_inf_sing(e, p);
    const ConditionResult* cb = rep.find("constant-bound");
    const ConditionResult* sb = rep.find("slack-bound");
    REQUIRE(cb);
    REQUIRE(sb);
    if (sb->holds) {
      ++slack_hits;
      CHECK(nonincreasing(rep.a));
      if (cb->holds) {
        ++both_hits;
        CHECK(nonincreasing(rep.b));
        if (!rep.b.empty()) CHECK(rep.b.back() >= 0);
      }
    }
  }
  CHECK(slack_hits >= 1000);
  CHECK(both_hits >= 1000);
}

TEST_CASE("dropping one index list keeps the target feasible") {
  // A completion hitting multiplicities and both index lists also hits the
  // two one-list projections, so predicate feasibility must be monotone
  // under dropping a list.  Same for factor-based and index-only targets.
  Rng rng(0x5eed3004);
  int sing_hits = 0;
  for (int it = 0; it < 4000; ++it) {
    Field f = rng.coin() ? Field::gf(2) : Field::gf(5);
    Eigenstructure e = random_eigenstructure(rng, f, rng.uniform(1, 3),
                                             rng.uniform(1, 3),
                                             rng.uniform(0, 2));
    Variant v = rng.coin() ? (rng.coin() ? Variant::inf_sing
                                         : Variant::fin_sing)
                           : Variant::sing;
    Prescription p = random_prescription(rng, e, v);
    if (!check(e, p).feasible) continue;
    ++sing_hits;

    Prescription pc = p, pr = p;
    pc.v.clear();
    pr.d.clear();
    switch (v) {
      case Variant::inf_sing:
        pc.variant = Variant::inf_cmi;
        pr.variant = Variant::inf_rmi;
        break;
      case Variant::fin_sing:
        pc.variant = Variant::fin_cmi;
        pr.variant = Variant::fin_rmi;
        break;
      default:
        pc.variant = Variant::cmi;
        pr.variant = Variant::rmi;
        break;
    }
    CHECK(check(e, pc).feasible);
    CHECK(check(e, pr).feasible);
  }
  CHECK(sing_hits > 400);
}

TEST_CASE("full targets project onto every partial variant") {
  Rng rng(0x5eed3005);
  int hits = 0;
  for (int it = 0; it < 3000; ++it) {
    Field f = Field::gf(3);
    Eigenstructure e = random_eigenstructure(rng, f, rng.uniform(1, 2),
                                             rng.uniform(1, 3),
                                             rng.uniform(0, 2));
    Prescription p = random_prescription(rng, e, Variant::full);
    if (!check_full(e, p).feasible) continue;
    ++hits;
    Prescription q = p;
    q.variant = Variant::inf_sing;
    q.gamma.clear();
    for (const HomogFactor& h : p.gamma) q.f.push_back(h.inf_mult());
    CHECK(check_inf_sing(e, q).feasible);

    Prescription b = p;
    b.variant = Variant::fin_sing;
    b.gamma.clear();
    for (const HomogFactor& h : p.gamma) b.beta.push_back(h.finite());
    CHECK(check_fin_sing(e, b).feasible);

    Prescription s = p;
    s.variant = Variant::sing;
    s.gamma.clear();
    CHECK(check_sing(e, s).feasible);
  }
  CHECK(hits > 150);
}

TEST_CASE("transposition duality across all variants") {
  // The eigenstructure transpose swaps the index lists; prescriptions map
  // involutively onto the dual variant; and deciding a column completion
  // through the transpose reproduces the row verdict exactly.
  Rng rng(0x5eed3006);
  for (int it = 0; it < 1200; ++it) {
    Field f = rng.coin() ? Field::gf(2) : Field::gf(3);
    Eigenstructure e = random_eigenstructure(rng, f, rng.uniform(1, 3),
                                             rng.uniform(1, 3),
                                             rng.uniform(0, 2));
    Variant v = static_cast<Variant>(rng.uniform(0, 9));
    Prescription p = random_prescription(rng, e, v);

    Prescription round = transposed(transposed(p));
    CHECK(round.variant == p.variant);
    CHECK(round.d == p.d);
    CHECK(round.v == p.v);

    Eigenstructure et = transposed(e);
    CHECK(et.cmi == e.rmi);
    CHECK(et.rmi == e.cmi);

    FeasibilityReport row = check(e, p);
    FeasibilityReport col = check_columns(et, transposed(p));
    CHECK(col.variant == p.variant);
    CHECK(col.feasible == row.feasible);
    CHECK(col.field_caveat == row.field_caveat);
    CHECK(to_json(col) == to_json(row));
  }
}

TEST_CASE("structural validation rejects malformed targets") {
  Eigenstructure e = rot_base(Field::rationals());
  Prescription p;
  p.variant = Variant::inf_sing;
  p.z = 1;
  p.x = 0;
  p.f = {0, 0};
  p.v = {1};

  Prescription bad = p;
  bad.z = 0;
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.x = 1;  // n - r = 0 forbids any rank rise
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.f = {0};  // wrong length
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.f = {1, 0};  // not nondecreasing
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.f = {0, -1};
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.d = {1};  // variant does not use column indices here (n-r-x = 0)
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.v = {1, 1};  // wrong length
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);
  bad = p;
  bad.beta = {Poly::one(e.field)};  // variant does not take factors
  CHECK_THROWS_AS(bad.validate(e), InvalidPrescription);

  // Factor chains must be monic and divide in order.
  Eigenstructure w = wide_base(Field::rationals());
  Prescription q;
  q.variant = Variant::fin_sing;
  q.z = 1;
  q.x = 1;
  q.beta = {pp(w.field, {1, 1}), Poly::one(w.field)};  // s+1 does not divide 1
  q.d = {0};
  q.v = {0};
  CHECK_THROWS_AS(q.validate(w), InvalidPrescription);
  q.beta = {pp(w.field, {1, 2}), pp(w.field, {2, 4})};  // 2s+4 is not monic
  CHECK_THROWS_AS(q.validate(w), InvalidPrescription);

  // Predicate/prescription variant mismatch.
  CHECK_THROWS_AS(check_sing(e, p), InvalidPrescription);
  // Construction on an infeasible target.
  Prescription far = p;
  far.v = {5};
  CHECK_THROWS_AS(construct_beta_chain(e, far, check_inf_sing(e, far)),
                  NotFeasible);
}

TEST_CASE("report conditions carry exact evidence") {
  Eigenstructure e = wide_base(Field::rationals());
  Prescription p;
  p.variant = Variant::fin_sing;
  p.z = 1;
  p.x = 1;
  p.beta = {Poly::one(e.field), Poly::one(e.field)};
  p.d = {5};
  p.v = {0};
  FeasibilityReport rep = check_fin_sing(e, p);
  CHECK(!rep.feasible);
  // Every condition reports an id; failing numeric ones carry lhs/rhs.
  for (const ConditionResult& c : rep.conditions) {
    CHECK(!c.id.empty());
    if (!c.holds && c.lhs) CHECK(c.rhs);
  }
  // The report names its variant and finds conditions by id.
  CHECK(rep.variant == Variant::fin_sing);
  CHECK(rep.find("no-such-condition") == nullptr);
}
