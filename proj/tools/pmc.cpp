// Command-line front end: analyze polynomial matrices, check row-completion
// prescriptions, emit constructed chains, and compare predicates against
// exhaustive enumeration over small prime fields.
//
// Exit codes: 0 success / feasible / consistent, 1 usage or input error,
// 2 infeasible prescription, 3 field obstruction, 4 oracle mismatch or
// selftest failure.

#include <exception>
#include <iostream>
#include <numeric>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pmc/completion.hpp"
#include "pmc/error.hpp"
#include "pmc/generate.hpp"
#include "pmc/io.hpp"
#include "pmc/oracle.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kError = 1;
constexpr int kInfeasible = 2;
constexpr int kObstructed = 3;
constexpr int kMismatch = 4;

using pmc::i64;

std::string join_ints(const std::vector<i64>& v) {
  if (v.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + std::to_string(v[i]);
  return out;
}

std::string join_polys(const std::vector<pmc::Poly>& v) {
  if (v.empty()) return "(none)";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out += (i ? ", " : "") + to_string(v[i]);
  return out;
}

void print_eigenstructure(const pmc::Eigenstructure& e) {
  std::cout << "field: " << e.field.name() << "  grade: " << e.grade
            << "  rank: " << e.rank << "\n";
  std::cout << "invariant factors: " << join_polys(e.alphas) << "\n";
  std::cout << "multiplicities at infinity: " << join_ints(e.es) << "\n";
  std::cout << "column minimal indices: " << join_ints(e.cmi) << "\n";
  std::cout << "row minimal indices: " << join_ints(e.rmi) << "\n";
  const i64 cs = std::accumulate(e.cmi.begin(), e.cmi.end(), i64{0});
  const i64 us = std::accumulate(e.rmi.begin(), e.rmi.end(), i64{0});
  const i64 lhs = e.alpha_deg_sum() + e.e_sum() + cs + us;
  std::cout << "degree sum: " << e.alpha_deg_sum() << " + " << e.e_sum()
            << " + " << cs << " + " << us << " = " << lhs
            << "  |  rank * grade = " << e.rank * e.grade << "\n";
}

void print_report(const pmc::FeasibilityReport& r) {
  std::cout << "variant: " << variant_name(r.variant) << "\n";
  std::cout << "conditions:\n";
  for (const pmc::ConditionResult& c : r.conditions) {
    std::cout << "  " << c.id;
    if (c.lhs || c.rhs) {
      std::cout << "  [";
      if (c.lhs) std::cout << *c.lhs;
      std::cout << " vs ";
      if (c.rhs) std::cout << *c.rhs;
      std::cout << "]";
    }
    if (!c.h.empty()) std::cout << "  pivots " << join_ints(c.h);
    std::cout << "  " << (c.holds ? "holds" : "FAILS") << "\n";
  }
  if (r.constant)
    std::cout << "constant " << r.constant_name << " = " << *r.constant
              << "\n";
  if (!r.a.empty()) std::cout << "column auxiliary: " << join_ints(r.a) << "\n";
  if (!r.b.empty()) std::cout << "row auxiliary: " << join_ints(r.b) << "\n";
  std::cout << "field caveat: " << (r.field_caveat ? "yes" : "no") << "\n";
  std::cout << "feasible: " << (r.feasible ? "yes" : "no") << "\n";
}

void print_chain(const pmc::ChainConstruction& c) {
  std::cout << "variant: " << variant_name(c.variant) << "\n";
  std::cout << "constant: " << c.constant << "  branch: "
            << (c.positive_branch ? "positive" : "nonpositive") << "\n";
  if (c.positive_branch)
    std::cout << "insertion: g=" << c.g << " h=" << c.h << " w=" << c.w
              << "\n";
  if (c.tau) std::cout << "connecting factor: " << to_string(*c.tau) << "\n";
  if (c.tau_h)
    std::cout << "connecting factor: " << to_string(*c.tau_h) << "\n";
  if (!c.f.empty())
    std::cout << "multiplicity chain: " << join_ints(c.f) << "\n";
  if (!c.beta.empty())
    std::cout << "invariant factor chain: " << join_polys(c.beta) << "\n";
  if (!c.gamma.empty()) {
    std::cout << "homogeneous chain: ";
    for (std::size_t i = 0; i < c.gamma.size(); ++i)
      std::cout << (i ? ", " : "") << to_string(c.gamma[i]);
    std::cout << "\n";
  }
  std::cout << "canonical: " << (c.canonical ? "yes" : "no") << "\n";
}

pmc::ProblemFile load_or_exit(const std::string& path) {
  return pmc::load_problem(path);  // ParseError propagates to main's handler
}

const pmc::Prescription& need_prescription(const pmc::ProblemFile& pf) {
  if (!pf.prescription)
    throw pmc::Error("the problem file has no prescription");
  return *pf.prescription;
}

int cmd_analyze(const std::string& path, bool as_json) {
  pmc::ProblemFile pf = load_or_exit(path);
  pmc::Eigenstructure e = pf.analyze();
  if (as_json)
    std::cout << to_json(e) << "\n";
  else
    print_eigenstructure(e);
  return kOk;
}

int cmd_check(const std::string& path, bool as_json) {
  pmc::ProblemFile pf = load_or_exit(path);
  pmc::Eigenstructure base = pf.analyze();
  pmc::FeasibilityReport rep = pmc::check(base, need_prescription(pf));
  if (as_json)
    std::cout << to_json(rep) << "\n";
  else
    print_report(rep);
  return rep.feasible ? kOk : kInfeasible;
}

int cmd_chain(const std::string& path, bool as_json) {
  pmc::ProblemFile pf = load_or_exit(path);
  pmc::Eigenstructure base = pf.analyze();
  const pmc::Prescription& p = need_prescription(pf);
  pmc::FeasibilityReport rep = pmc::check(base, p);
  if (!rep.feasible) {
    if (as_json)
      std::cout << to_json(rep) << "\n";
    else
      print_report(rep);
    return kInfeasible;
  }
  pmc::ChainConstruction chain;
  switch (p.variant) {
    case pmc::Variant::inf_sing:
      chain = pmc::construct_beta_chain(base, p, rep);
      break;
    case pmc::Variant::fin_sing:
      chain = pmc::construct_f_chain(base, p, rep);
      break;
    case pmc::Variant::sing:
      chain = pmc::construct_gamma_chain(base, p, rep);
      break;
    default:
      throw pmc::Error(
          "chain construction applies to the inf-sing, fin-sing and sing "
          "variants; for the others use a full witness instead");
  }
  if (as_json)
    std::cout << to_json(chain) << "\n";
  else
    print_chain(chain);
  return kOk;
}

int cmd_oracle(const std::string& path, bool as_json, i64 budget, i64 threads,
               bool force, bool inject_bug) {
  pmc::ProblemFile pf = load_or_exit(path);
  if (!pf.matrix)
    throw pmc::Error("the oracle needs a concrete matrix, not an abstract "
                     "eigenstructure");
  const pmc::Prescription& p = need_prescription(pf);
  pmc::OracleConfig cfg = pf.oracle.value_or(pmc::OracleConfig{});
  if (budget >= 0) cfg.budget_cap = budget;
  if (threads >= 0) cfg.threads = threads;
  if (force) cfg.override_budget = true;

  pmc::Eigenstructure base = pmc::eigenstructure(*pf.matrix);
  pmc::FeasibilityReport rep = pmc::check(base, p);
  if (inject_bug) {
    // Deliberate fault for harness self-tests: flip the verdict so the
    // comparison against enumeration must report a mismatch.
    rep.feasible = !rep.feasible;
    rep.field_caveat = false;
  }
  pmc::OracleResult result = pmc::enumerate_completions(*pf.matrix, p.z, cfg);
  pmc::OracleVerdict verdict = pmc::verify_predicate(base, p, rep, result);

  if (as_json) {
    nlohmann::json out;
    out["verdict"] = nlohmann::json::parse(to_json(verdict));
    out["result"] =
        nlohmann::json::parse(oracle_result_to_json(*pf.matrix, result));
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << "candidates: " << result.total
              << (result.exhausted ? " (exhausted)" : " (not exhausted)")
              << "\n";
    std::cout << "achieved tuples: " << result.achieved.size() << "\n";
    std::cout << "feasible: " << (verdict.feasible ? "yes" : "no")
              << (verdict.field_caveat ? " (field caveat)" : "") << "\n";
    std::cout << "achieved: " << (verdict.achieved ? "yes" : "no");
    if (verdict.witness_index)
      std::cout << "  witness index: " << *verdict.witness_index;
    std::cout << "\n";
    std::cout << "chain obstructed: " << (verdict.obstructed ? "yes" : "no")
              << "\n";
    std::cout << "witness closed: " << (verdict.witness_closed ? "yes" : "no")
              << "\n";
    std::cout << "consistent: " << (verdict.consistent ? "yes" : "no")
              << "  -- " << verdict.message << "\n";
  }
  return verdict.consistent ? kOk : kMismatch;
}

// Curated battery of exact checks, then a seeded randomized sweep against
// exhaustive enumeration.
int cmd_selftest(std::uint64_t seed, i64 instances,
                 std::vector<i64> field_list) {
  int failures = 0;
  auto expect = [&](bool ok, const std::string& name) {
    std::cout << (ok ? "  ok    " : "  FAIL  ") << name << "\n";
    if (!ok) ++failures;
  };

  auto rotation = [](const pmc::Field& F) {
    pmc::PolyMatrix M(F, 2, 2, 1);
    M.set(0, 0, pmc::Poly::of(F, {0, 1}));
    M.set(0, 1, pmc::Poly::of(F, {1}));
    M.set(1, 0, pmc::Poly::of(F, {-1}));
    M.set(1, 1, pmc::Poly::of(F, {0, 1}));
    return M;
  };
  auto target = [](const pmc::Field&) {
    pmc::Prescription p;
    p.variant = pmc::Variant::inf_sing;
    p.z = 1;
    p.x = 0;
    p.f = {0, 0};
    p.v = {1};
    return p;
  };

  std::cout << "curated battery:\n";
  {
    pmc::Field Q = pmc::Field::rationals();
    pmc::Eigenstructure e = pmc::eigenstructure(rotation(Q));
    expect(e.rank == 2 && e.alphas.size() == 2 && e.alphas[0].is_one() &&
               e.alphas[1] == pmc::Poly::of(Q, {1, 0, 1}) &&
               e.es == std::vector<i64>{0, 0} && e.cmi.empty() &&
               e.rmi.empty(),
           "rotation-matrix eigenstructure");

    pmc::FeasibilityReport rep = pmc::check_inf_sing(e, target(Q));
    expect(rep.feasible && rep.field_caveat && rep.constant &&
               *rep.constant == 1 && rep.b == std::vector<i64>{1},
           "row-extension target feasible with field caveat");
  }
  {
    pmc::Field F5 = pmc::Field::gf(5);
    pmc::Eigenstructure e = pmc::eigenstructure(rotation(F5));
    bool built = false, closed = false;
    try {
      pmc::CompletionWitness w = pmc::witness_to_full(e, target(F5));
      built = true;
      pmc::OracleVerdict v = pmc::verify_predicate(rotation(F5), target(F5));
      closed = v.consistent && v.achieved && v.witness_closed;
    } catch (const pmc::Error&) {
    }
    expect(built, "connecting divisor exists with 5 residues");
    expect(closed, "enumeration over 625 candidates confirms the witness");
  }
  {
    pmc::Field F3 = pmc::Field::gf(3);
    pmc::Eigenstructure e = pmc::eigenstructure(rotation(F3));
    bool obstructed = false;
    try {
      pmc::witness_to_full(e, target(F3));
    } catch (const pmc::FieldObstruction&) {
      obstructed = true;
    }
    pmc::OracleVerdict v = pmc::verify_predicate(rotation(F3), target(F3));
    expect(obstructed, "no connecting divisor with 3 residues");
    expect(v.consistent && !v.achieved,
           "enumeration over 81 candidates confirms the obstruction");
  }
  {
    pmc::Field Q = pmc::Field::rationals();
    pmc::PolyMatrix M(Q, 2, 3, 2);
    M.set(0, 0, pmc::Poly::of(Q, {0, 0, 1}));
    M.set(0, 1, pmc::Poly::of(Q, {-1}));
    pmc::Eigenstructure e = pmc::eigenstructure(M);
    bool region_ok = true;
    for (i64 d1 = 0; d1 <= 6; ++d1) {
      pmc::Prescription pc;
      pc.variant = pmc::Variant::cmi;
      pc.z = 1;
      pc.x = 1;
      pc.d = {d1};
      bool want = d1 == 0 || (d1 >= 2 && d1 <= 4);
      if (pmc::check_cmi(e, pc).feasible != want) region_ok = false;
      pmc::Prescription pf2;
      pf2.variant = pmc::Variant::fin_sing;
      pf2.z = 1;
      pf2.x = 1;
      pf2.beta = {pmc::Poly::one(Q), pmc::Poly::one(Q)};
      pf2.d = {d1};
      pf2.v = {0};
      if (pmc::check_fin_sing(e, pf2).feasible != want) region_ok = false;
    }
    expect(region_ok, "free-column budget region is {0,2,3,4}");
  }

  std::cout << "randomized sweep:\n";
  pmc::SweepConfig cfg;
  cfg.instances = instances;
  cfg.seed = seed;
  if (!field_list.empty()) {
    cfg.primes.clear();
    for (i64 p : field_list)
      cfg.primes.push_back(static_cast<std::uint32_t>(p));
  }
  cfg.log = &std::cerr;
  pmc::SweepStats st = pmc::run_verification_sweep(cfg);
  std::cout << "  instances " << st.instances << ", targets " << st.targets
            << ", feasible " << st.feasible << ", caveats " << st.caveats
            << ", achieved tuples " << st.achieved_tuples << "\n";
  expect(st.ok(), "sweep finds no disagreement with enumeration");

  std::cout << (failures == 0 ? "selftest: PASS" : "selftest: FAIL") << "\n";
  return failures == 0 ? kOk : kMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Exact eigenstructure of polynomial matrices and feasibility of "
      "row completions with prescribed invariants"};
  app.require_subcommand(1);

  std::string path;
  bool as_json = false;

  CLI::App* analyze =
      app.add_subcommand("analyze", "Compute the complete eigenstructure");
  analyze->add_option("file", path, "problem JSON file")->required();
  analyze->add_flag("--json", as_json, "machine-readable output");

  CLI::App* check =
      app.add_subcommand("check", "Decide feasibility of a prescription");
  check->add_option("file", path, "problem JSON file")->required();
  check->add_flag("--json", as_json, "machine-readable output");

  CLI::App* chain = app.add_subcommand(
      "chain", "Construct the free chain of a feasible prescription");
  chain->add_option("file", path, "problem JSON file")->required();
  chain->add_flag("--json", as_json, "machine-readable output");

  i64 budget = -1, threads = -1;
  bool force = false, inject_bug = false;
  CLI::App* oracle = app.add_subcommand(
      "oracle", "Compare the predicate against exhaustive enumeration");
  oracle->add_option("file", path, "problem JSON file")->required();
  oracle->add_flag("--json", as_json, "machine-readable output");
  oracle->add_option("--budget", budget, "coefficient-slot cap");
  oracle->add_option("--threads", threads, "enumeration threads");
  oracle->add_flag("--force", force, "enumerate past the budget cap");
  oracle->add_flag("--inject-bug", inject_bug)->group("");  // harness fixture

  std::uint64_t seed = 20240801;
  i64 instances = 12;
  std::vector<i64> fields;
  CLI::App* selftest = app.add_subcommand(
      "selftest", "Run the curated battery and a randomized oracle sweep");
  selftest->add_option("--seed", seed, "sweep seed");
  selftest->add_option("--instances", instances, "sweep instances");
  selftest->add_option("--field", fields,
                       "restrict sweep fields (prime moduli, repeatable)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (analyze->parsed()) return cmd_analyze(path, as_json);
    if (check->parsed()) return cmd_check(path, as_json);
    if (chain->parsed()) return cmd_chain(path, as_json);
    if (oracle->parsed())
      return cmd_oracle(path, as_json, budget, threads, force, inject_bug);
    if (selftest->parsed()) return cmd_selftest(seed, instances, fields);
  } catch (const pmc::NotFeasible& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kInfeasible;
  } catch (const pmc::FieldObstruction& e) {
    std::cerr << "field obstruction: " << e.what() << "\n";
    return kObstructed;
  } catch (const pmc::BudgetExceeded& e) {
    std::cerr << "budget: " << e.what() << "\n";
    return kError;
  } catch (const pmc::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kError;
  }
  return kError;
}
