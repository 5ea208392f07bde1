#include "pmc/oracle.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>
#include <thread>

#include "pmc/error.hpp"
#include "pmc/generate.hpp"

namespace pmc {

namespace {

constexpr std::uint64_t kEnumerationCeiling = std::uint64_t{1} << 40;

void append_seq(std::ostringstream& os, const std::vector<i64>& v) {
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  os << ']';
}

}  // namespace

std::string eigen_key(const Eigenstructure& e) {
  std::ostringstream os;
  os << "r=" << e.rank << ";a=[";
  for (std::size_t i = 0; i < e.alphas.size(); ++i) {
    if (i) os << '|';
    os << to_string(e.alphas[i]);
  }
  os << "];e=";
  append_seq(os, e.es);
  os << ";c=";
  append_seq(os, e.cmi);
  os << ";u=";
  append_seq(os, e.rmi);
  return os.str();
}

PolyMatrix completion_matrix(const PolyMatrix& base, i64 z, i64 degree_bound,
                             const std::vector<i64>& digits) {
  const Field& F = base.field();
  i64 n = base.cols();
  if (static_cast<i64>(digits.size()) != z * n * (degree_bound + 1))
    throw DimensionMismatch("witness digit count does not match slot count");
  PolyMatrix W(F, z, n, degree_bound);
  std::size_t s = 0;
  for (i64 i = 0; i < z; ++i)
    for (i64 j = 0; j < n; ++j) {
      std::vector<Scalar> cs;
      cs.reserve(static_cast<std::size_t>(degree_bound + 1));
      for (i64 k = 0; k <= degree_bound; ++k)
        cs.push_back(Scalar::of(F, digits[s++]));
      W.set(i, j, Poly(F, cs));
    }
  return stack(base, W);
}

namespace {

struct Shard {
  std::map<std::string, std::pair<Eigenstructure, OracleWitness>> achieved;
};

void scan_range(const PolyMatrix& base, i64 z, i64 degree_bound, i64 p,
                i64 slots, std::uint64_t lo, std::uint64_t hi, Shard& out) {
  std::vector<i64> digits(static_cast<std::size_t>(slots), 0);
  for (std::uint64_t idx = lo; idx < hi; ++idx) {
    std::uint64_t rest = idx;
    for (i64 s = slots - 1; s >= 0; --s) {
      digits[static_cast<std::size_t>(s)] =
          static_cast<i64>(rest % static_cast<std::uint64_t>(p));
      rest /= static_cast<std::uint64_t>(p);
    }
    Eigenstructure eig =
        eigenstructure(completion_matrix(base, z, degree_bound, digits));
    std::string key = eigen_key(eig);
    out.achieved.try_emplace(std::move(key),
                             std::pair<Eigenstructure, OracleWitness>{
                                 std::move(eig), OracleWitness{idx, digits}});
  }
}

}  // namespace

OracleResult enumerate_completions(const PolyMatrix& base, i64 z,
                                   const OracleConfig& cfg) {
  const Field& F = base.field();
  if (!F.is_gf())
    throw Error("exhaustive enumeration needs a finite coefficient field");
  if (z < 1) throw DimensionMismatch("need at least one new row");
  i64 degree_bound = cfg.degree_bound.value_or(base.grade());
  if (degree_bound < 0 || degree_bound > base.grade())
    throw DimensionMismatch("degree bound must lie within the grade");

  OracleResult res;
  res.z = z;
  res.degree_bound = degree_bound;
  res.slots = z * base.cols() * (degree_bound + 1);
  if (res.slots > cfg.budget_cap && !cfg.override_budget) {
    std::ostringstream os;
    os << "enumeration needs " << res.slots
       << " coefficient slots, above the configured cap of " << cfg.budget_cap;
    throw BudgetExceeded(os.str());
  }

  i64 p = F.characteristic();
  std::uint64_t total = 1;
  for (i64 s = 0; s < res.slots; ++s) {
    if (total > kEnumerationCeiling / static_cast<std::uint64_t>(p))
      throw BudgetExceeded("enumeration space too large to exhaust");
    total *= static_cast<std::uint64_t>(p);
  }
  res.total = total;

  i64 threads = cfg.threads;
  if (threads <= 0)
    threads = static_cast<i64>(std::thread::hardware_concurrency());
  if (threads < 1) threads = 1;
  if (static_cast<std::uint64_t>(threads) > total)
    threads = static_cast<i64>(total);

  std::vector<Shard> shards(static_cast<std::size_t>(threads));
  if (threads == 1) {
    scan_range(base, z, degree_bound, p, res.slots, 0, total, shards[0]);
  } else {
    std::vector<std::thread> pool;
    std::uint64_t chunk = total / static_cast<std::uint64_t>(threads);
    for (i64 t = 0; t < threads; ++t) {
      std::uint64_t lo = chunk * static_cast<std::uint64_t>(t);
      std::uint64_t hi =
          (t + 1 == threads) ? total : chunk * static_cast<std::uint64_t>(t + 1);
      pool.emplace_back([&, t, lo, hi] {
        scan_range(base, z, degree_bound, p, res.slots, lo, hi,
                   shards[static_cast<std::size_t>(t)]);
      });
    }
    for (auto& th : pool) th.join();
  }

  // Shards hold ascending disjoint index ranges, so merging in shard order
  // keeps the smallest witness index per tuple.
  for (auto& sh : shards)
    for (auto& kv : sh.achieved)
      res.achieved.try_emplace(kv.first, std::move(kv.second));
  res.exhausted = true;
  return res;
}

bool projection_matches(const Prescription& p, const Eigenstructure& base_eig,
                        const Eigenstructure& completed) {
  if (completed.rank != base_eig.rank + p.x) return false;
  std::size_t rx = static_cast<std::size_t>(completed.rank);
  switch (p.variant) {
    case Variant::full:
      for (std::size_t i = 0; i < rx; ++i)
        if (p.gamma[i].inf_mult() != completed.es[i] ||
            !(p.gamma[i].finite() == completed.alphas[i]))
          return false;
      return completed.cmi == p.d && completed.rmi == p.v;
    case Variant::inf_sing:
      return completed.es == p.f && completed.cmi == p.d &&
             completed.rmi == p.v;
    case Variant::inf_cmi:
      return completed.es == p.f && completed.cmi == p.d;
    case Variant::inf_rmi:
      return completed.es == p.f && completed.rmi == p.v;
    case Variant::fin_sing:
      return completed.alphas == p.beta && completed.cmi == p.d &&
             completed.rmi == p.v;
    case Variant::fin_cmi:
      return completed.alphas == p.beta && completed.cmi == p.d;
    case Variant::fin_rmi:
      return completed.alphas == p.beta && completed.rmi == p.v;
    case Variant::sing:
      return completed.cmi == p.d && completed.rmi == p.v;
    case Variant::rmi:
      return completed.rmi == p.v;
    case Variant::cmi:
      return completed.cmi == p.d;
  }
  return false;
}

namespace {

// Smallest witness index among achieved tuples matching the prescription.
std::optional<std::uint64_t> find_match(const Prescription& p,
                                        const Eigenstructure& base_eig,
                                        const OracleResult& oracle) {
  std::optional<std::uint64_t> best;
  for (const auto& kv : oracle.achieved) {
    if (!projection_matches(p, base_eig, kv.second.first)) continue;
    if (!best || kv.second.second.index < *best)
      best = kv.second.second.index;
  }
  return best;
}

}  // namespace

OracleVerdict verify_predicate(const Eigenstructure& base_eig,
                               const Prescription& p,
                               const FeasibilityReport& report,
                               const OracleResult& oracle) {
  OracleVerdict v;
  v.feasible = report.feasible;
  v.field_caveat = report.field_caveat;
  v.witness_index = find_match(p, base_eig, oracle);
  v.achieved = v.witness_index.has_value();

  std::optional<Prescription> assembled;
  try {
    assembled = witness_to_full(base_eig, p).full;
  } catch (const FieldObstruction&) {
    v.obstructed = true;
  } catch (const NotFeasible&) {
  }

  if (assembled) {
    // The assembled full target must itself be realized by some completion.
    Prescription full = *assembled;
    v.witness_closed = find_match(full, base_eig, oracle).has_value();
  }

  if (!report.feasible) {
    v.consistent = !v.achieved;
    v.message = v.consistent ? "infeasible and unachieved"
                             : "predicate says infeasible, enumeration found "
                               "a completion";
  } else if (!report.field_caveat) {
    v.consistent = v.achieved && assembled.has_value() && v.witness_closed;
    v.message = v.consistent
                    ? "feasible, achieved, witness closed"
                    : "predicate says feasible over any field, enumeration "
                      "or witness assembly disagrees";
  } else {
    bool expect = !v.obstructed;
    v.consistent = (v.achieved == expect) &&
                   (!expect || (assembled.has_value() && v.witness_closed));
    v.message =
        v.consistent
            ? (expect ? "caveat resolved: chain constructs and target "
                        "achieved"
                      : "caveat resolved: no connecting divisor and no "
                        "completion")
            : "caveat resolution disagrees with enumeration";
  }
  return v;
}

OracleVerdict verify_predicate(const PolyMatrix& base, const Prescription& p,
                               const OracleConfig& cfg) {
  Eigenstructure base_eig = eigenstructure(base);
  FeasibilityReport report = check(base_eig, p);
  OracleResult oracle = enumerate_completions(base, p.z, cfg);
  return verify_predicate(base_eig, p, report, oracle);
}

SweepStats run_verification_sweep(const SweepConfig& cfg) {
  static const Variant kVariants[] = {
      Variant::full,    Variant::inf_sing, Variant::inf_cmi,
      Variant::inf_rmi, Variant::fin_sing, Variant::fin_cmi,
      Variant::fin_rmi, Variant::sing,     Variant::rmi,
      Variant::cmi};
  Rng rng(cfg.seed);
  SweepStats st;
  auto log = [&](const std::string& line) {
    if (cfg.log) *cfg.log << line << "\n";
  };

  while (st.instances < cfg.instances) {
    const std::uint32_t p =
        cfg.primes[static_cast<std::size_t>(rng.uniform(
            0, static_cast<i64>(cfg.primes.size()) - 1))];
    const Field F = Field::gf(p);
    const i64 m = rng.uniform(1, cfg.max_rows);
    const i64 n = rng.uniform(1, cfg.max_cols);
    const i64 g = rng.uniform(0, cfg.max_grade);
    const i64 z = rng.uniform(1, cfg.max_added);
    const i64 slots = z * n * (g + 1);
    double space = 1;
    for (i64 s = 0; s < slots; ++s) space *= p;
    if (space > static_cast<double>(cfg.candidate_cap)) continue;

    const PolyMatrix M = random_matrix(rng, F, m, n, g);
    const Eigenstructure eig = eigenstructure(M);
    OracleConfig ocfg;
    ocfg.override_budget = true;
    ocfg.threads = cfg.threads;
    const OracleResult oracle = enumerate_completions(M, z, ocfg);
    ++st.instances;
    st.achieved_tuples += static_cast<i64>(oracle.achieved.size());

    // Necessity: every achieved eigenstructure, projected onto each
    // variant's coordinates, must pass that variant's predicate.
    for (const auto& [key, hit] : oracle.achieved) {
      const Eigenstructure& ce = hit.first;
      const i64 x = ce.rank - eig.rank;
      if (x < 0) {
        ++st.necessity_failures;
        log("necessity failure: rank dropped for " + key);
        continue;
      }
      for (Variant var : kVariants) {
        Prescription proj;
        proj.variant = var;
        proj.z = z;
        proj.x = x;
        if (proj.uses_f()) proj.f = ce.es;
        if (proj.uses_beta()) proj.beta = ce.alphas;
        if (proj.uses_gamma())
          for (i64 i = 0; i < ce.rank; ++i)
            proj.gamma.emplace_back(ce.es[static_cast<std::size_t>(i)],
                                    ce.alphas[static_cast<std::size_t>(i)]);
        if (proj.uses_d()) proj.d = ce.cmi;
        if (proj.uses_v()) proj.v = ce.rmi;
        if (!check(eig, proj).feasible) {
          ++st.necessity_failures;
          log("necessity failure: achieved tuple rejected, variant " +
              variant_name(var) + ", instance " +
              std::to_string(st.instances) + ", key " + key);
        }
      }
    }

    // Sufficiency and caveat resolution: every enumerable target, both
    // directions, plus witness closure for the constructible ones.
    for (Variant var : kVariants) {
      for (const Prescription& target : enumerate_targets(eig, z, var)) {
        ++st.targets;
        const FeasibilityReport rep = check(eig, target);
        const OracleVerdict verdict =
            verify_predicate(eig, target, rep, oracle);
        if (rep.feasible) {
          ++st.feasible;
          if (rep.field_caveat) ++st.caveats;
          if (!verdict.obstructed) {
            ++st.closures;
            if (!verdict.witness_closed) ++st.closure_failures;
          }
        }
        if (!verdict.consistent) {
          i64& bucket = !rep.feasible ? st.necessity_failures
                        : rep.field_caveat
                            ? st.caveat_failures
                            : st.sufficiency_failures;
          ++bucket;
          log("verdict failure: variant " + variant_name(var) +
              ", instance " + std::to_string(st.instances) + ": " +
              verdict.message);
        }
      }
    }
  }
  return st;
}

}  // namespace pmc
