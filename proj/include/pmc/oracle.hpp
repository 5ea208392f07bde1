#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pmc/completion.hpp"
#include "pmc/polymatrix.hpp"
#include "pmc/prescription.hpp"

namespace pmc {

// Exhaustive ground truth: enumerate every block of new rows over a small
// finite field, analyze each completed matrix, and compare what is actually
// achievable against the feasibility predicates.

struct OracleConfig {
  i64 budget_cap = 14;       // max coefficient slots without an override
  bool override_budget = false;
  i64 threads = 0;           // 0 = hardware concurrency
  std::optional<i64> degree_bound;  // per-entry cap for new rows; default grade
};

// First row block achieving a given invariant tuple: its position in the
// coefficient-lexicographic enumeration and the raw digits in slot order
// (row-major over entries, coefficients in ascending degree).
struct OracleWitness {
  std::uint64_t index = 0;
  std::vector<i64> digits;
};

struct OracleResult {
  i64 z = 0;
  i64 slots = 0;
  i64 degree_bound = 0;
  std::uint64_t total = 0;
  bool exhausted = false;
  // Distinct eigenstructures of the completed matrix, keyed canonically,
  // each with its first witness.
  std::map<std::string, std::pair<Eigenstructure, OracleWitness>> achieved;
};

// Canonical text key for an eigenstructure (rank, invariant factors,
// multiplicities at infinity, minimal indices).
std::string eigen_key(const Eigenstructure& e);

// Rebuild the completed matrix [base; W] from a witness digit vector.
PolyMatrix completion_matrix(const PolyMatrix& base, i64 z, i64 degree_bound,
                             const std::vector<i64>& digits);

// Enumerate all z-row completions of a matrix over its (finite) field.
OracleResult enumerate_completions(const PolyMatrix& base, i64 z,
                                   const OracleConfig& cfg = {});

// Whether a completed eigenstructure realizes exactly the coordinates a
// prescription pins down (rank rise included; unpinned coordinates free).
bool projection_matches(const Prescription& p, const Eigenstructure& base_eig,
                        const Eigenstructure& completed);

struct OracleVerdict {
  bool consistent = false;  // predicate verdict agrees with the enumeration
  bool feasible = false;
  bool field_caveat = false;
  bool achieved = false;    // some enumerated completion hits the target
  bool obstructed = false;  // chain construction lacked a divisor
  bool witness_closed = false;  // assembled full target itself achieved
  std::optional<std::uint64_t> witness_index;
  std::string message;
};

// Compare a feasibility report against exhaustive enumeration:
// infeasible targets must be unachieved; feasible ones without a field
// caveat must be achieved; with a caveat, achieved exactly when the chain
// construction finds its connecting divisor.
OracleVerdict verify_predicate(const Eigenstructure& base_eig,
                               const Prescription& p,
                               const FeasibilityReport& report,
                               const OracleResult& oracle);

// Convenience wrapper: analyze, check, enumerate, verify.
OracleVerdict verify_predicate(const PolyMatrix& base, const Prescription& p,
                               const OracleConfig& cfg = {});

// Randomized ground-truth sweep: draw random matrices over small prime
// fields, enumerate every completion once per instance, then check every
// prescription variant against it in both directions — each achieved
// eigenstructure must pass every projected predicate (necessity), and
// every enumerable target tuple must be achieved or rejected exactly as
// the predicate plus chain construction says (sufficiency, caveat
// resolution, witness closure).

struct SweepConfig {
  i64 instances = 12;
  std::uint64_t seed = 20240801;
  std::vector<std::uint32_t> primes = {2, 3};
  i64 max_rows = 2;
  i64 max_cols = 3;
  i64 max_grade = 2;
  i64 max_added = 2;                // z range is 1..max_added
  std::uint64_t candidate_cap = 20000;  // skip larger enumeration spaces
  i64 threads = 1;
  std::ostream* log = nullptr;      // one line per failure when set
};

struct SweepStats {
  i64 instances = 0;
  i64 targets = 0;
  i64 feasible = 0;
  i64 caveats = 0;
  i64 achieved_tuples = 0;
  i64 closures = 0;  // feasible unobstructed targets whose witness closed
  i64 necessity_failures = 0;
  i64 sufficiency_failures = 0;
  i64 caveat_failures = 0;
  i64 closure_failures = 0;

  bool ok() const {
    return necessity_failures == 0 && sufficiency_failures == 0 &&
           caveat_failures == 0 && closure_failures == 0;
  }
};

SweepStats run_verification_sweep(const SweepConfig& cfg);

}  // namespace pmc
