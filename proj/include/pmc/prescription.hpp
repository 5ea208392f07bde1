#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pmc/polymatrix.hpp"

namespace pmc {

// Which part of the completed matrix's eigenstructure is prescribed.
// Naming: inf = multiplicities at infinity, fin = invariant factors,
// sing = both lists of minimal indices, cmi/rmi = one list only.
enum class Variant {
  full,      // homogeneous chain + both minimal index lists
  inf_sing,  // multiplicities at infinity + both minimal index lists
  inf_cmi,   // multiplicities at infinity + column minimal indices
  inf_rmi,   // multiplicities at infinity + row minimal indices
  fin_sing,  // invariant factors + both minimal index lists
  fin_cmi,   // invariant factors + column minimal indices
  fin_rmi,   // invariant factors + row minimal indices
  sing,      // both minimal index lists
  rmi,       // row minimal indices only
  cmi,       // column minimal indices only
};

std::string variant_name(Variant v);
Variant variant_from_name(std::string_view name);

// A row-completion target: append z rows, raise the rank by x, and hit the
// prescribed part of the eigenstructure.  Only the fields demanded by the
// variant may be filled; validate() enforces lengths, monotonicity and
// chain divisibility against a base eigenstructure.
struct Prescription {
  Variant variant = Variant::full;
  i64 z = 1;  // rows to append (>= 1)
  i64 x = 0;  // rank increase (0 <= x <= min(z, n - r))
  std::vector<HomogFactor> gamma;  // full: r+x homogeneous factors
  std::vector<i64> f;              // inf_*: r+x multiplicities at infinity
  std::vector<Poly> beta;          // fin_*: r+x monic invariant factors
  std::vector<i64> d;              // *_cmi / *_sing: n-r-x column indices
  std::vector<i64> v;              // *_rmi / *_sing: m+z-r-x row indices

  bool uses_gamma() const { return variant == Variant::full; }
  bool uses_f() const;
  bool uses_beta() const;
  bool uses_d() const;
  bool uses_v() const;

  i64 eta_bar() const;  // count of positive prescribed row indices

  // Throws InvalidPrescription when the prescription does not fit the base.
  void validate(const Eigenstructure& base) const;
};

// Single evaluated condition of a feasibility predicate.  Numeric
// comparisons record lhs/rhs; majorization conditions record the pivot
// trace h_j of the generalized-majorization test.
struct ConditionResult {
  std::string id;
  bool holds = false;
  std::optional<i64> lhs;
  std::optional<i64> rhs;
  std::vector<i64> h;
};

// Outcome of one feasibility predicate: the per-condition verdicts, the
// decision constant (when the variant has one), the auxiliary sequences fed
// to the majorization tests, and the field caveat.  The caveat flags
// instances whose feasibility additionally needs enough roots in the field
// (it can only arise with a positive constant); without the caveat the
// verdict is valid over any field.
struct FeasibilityReport {
  Variant variant = Variant::full;
  bool feasible = false;
  bool field_caveat = false;
  std::optional<i64> constant;
  std::string constant_name;
  std::vector<i64> a;  // auxiliary sequence for the column test
  std::vector<i64> b;  // auxiliary sequence for the row test
  std::vector<ConditionResult> conditions;

  const ConditionResult* find(std::string_view id) const;
};

// Output of a constructive chain procedure from a feasible partial
// prescription: the free chain it builds, plus the branch data (g, h, w and
// the connecting factor tau) when the positive branch ran.
struct ChainConstruction {
  Variant variant = Variant::inf_sing;
  bool positive_branch = false;  // constant > 0 route
  i64 constant = 0;
  i64 g = 0;
  i64 h = 0;
  i64 w = 0;
  std::vector<i64> f;              // built multiplicities at infinity
  std::vector<Poly> beta;          // built invariant factors
  std::vector<HomogFactor> gamma;  // built homogeneous factors
  std::optional<Poly> tau;
  std::optional<HomogFactor> tau_h;
  // True when the chain came from the closed-form insertion rule. False when
  // that rule had no divisor over this field and the chain was found by the
  // exhaustive finite-field fallback search instead (g/h/w still report the
  // insertion spot the closed-form rule attempted).
  bool canonical = true;
};

// A partial prescription completed to a full one, with the verdict of the
// full predicate on it and the intermediate constructions used.
struct CompletionWitness {
  Prescription full;
  FeasibilityReport report;
  std::vector<ChainConstruction> stages;
};

}  // namespace pmc
