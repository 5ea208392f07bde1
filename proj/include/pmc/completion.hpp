#pragma once

#include <utility>
#include <vector>

#include "pmc/intseq.hpp"
#include "pmc/prescription.hpp"

namespace pmc {

// Feasibility predicates for appending z rows to a matrix with the given
// eigenstructure so that the completed matrix, of rank r + x, carries the
// prescribed part of its eigenstructure.  Every check validates the
// prescription, evaluates the variant's necessary-and-sufficient condition
// list, and returns the full evidence.  The verdicts for the full, cmi,
// inf_cmi, fin_sing, fin_cmi and fin_rmi variants hold over any field; the
// other four are sufficient as stated only when the field supplies enough
// roots, which the report flags via field_caveat (possible only with a
// positive decision constant).

FeasibilityReport check(const Eigenstructure& base, const Prescription& p);

FeasibilityReport check_full(const Eigenstructure& base,
                             const Prescription& p);
// Same predicate through the equivalent column-side degree accounting
// (budget counted against the column indices instead of the row indices).
// Must agree with check_full on every valid input.
FeasibilityReport check_full_alt(const Eigenstructure& base,
                                 const Prescription& p);

// The two auxiliary-sequence constructions behind the full predicate:
// row-side accounting and the equivalent column-side accounting.
std::pair<std::vector<i64>, std::vector<i64>> build_ab_full(
    const Eigenstructure& base, const Prescription& p);
std::pair<std::vector<i64>, std::vector<i64>> build_ab_alt(
    const Eigenstructure& base, const Prescription& p);

FeasibilityReport check_inf_sing(const Eigenstructure& base,
                                 const Prescription& p);
FeasibilityReport check_inf_cmi(const Eigenstructure& base,
                                const Prescription& p);
FeasibilityReport check_inf_rmi(const Eigenstructure& base,
                                const Prescription& p);
FeasibilityReport check_fin_sing(const Eigenstructure& base,
                                 const Prescription& p);
FeasibilityReport check_fin_cmi(const Eigenstructure& base,
                                const Prescription& p);
FeasibilityReport check_fin_rmi(const Eigenstructure& base,
                                const Prescription& p);
FeasibilityReport check_sing(const Eigenstructure& base,
                             const Prescription& p);
FeasibilityReport check_rmi(const Eigenstructure& base,
                            const Prescription& p);
FeasibilityReport check_cmi(const Eigenstructure& base,
                            const Prescription& p);

// Builds the invariant-factor chain that completes a feasible inf_sing
// prescription.  With a positive constant the connecting factor tau is a
// divisor of prescribed degree between two adjacent base invariant factors
// and may not exist over a non-closed field; when it is missing over a
// finite field, an exhaustive search over every chain fitting the forced
// degree budget runs before giving up, so FieldObstruction over GF(p)
// means no valid chain exists at all (over the rationals the free chain
// positions are unbounded, so the obstruction only reports that the
// closed-form rule failed).  With constant <= 0, tau = s^(-constant)
// extends the last factor and no obstruction can arise.  Throws
// NotFeasible when the report says infeasible.
ChainConstruction construct_beta_chain(const Eigenstructure& base,
                                       const Prescription& p,
                                       const FeasibilityReport& report);

// Builds the chain of multiplicities at infinity completing a feasible
// fin_sing prescription.  Never field-obstructed.
ChainConstruction construct_f_chain(const Eigenstructure& base,
                                    const Prescription& p,
                                    const FeasibilityReport& report);

// Builds the homogeneous chain completing a feasible sing prescription.
// The positive branch needs a homogeneous divisor of prescribed total
// degree and may throw FieldObstruction, with the same finite-field
// exhaustive fallback as construct_beta_chain.
ChainConstruction construct_gamma_chain(const Eigenstructure& base,
                                        const Prescription& p,
                                        const FeasibilityReport& report);

// Completes a feasible partial prescription to a full one by running the
// staged reductions and chain constructions the sufficiency arguments use,
// then re-checks the assembled full prescription.  Throws NotFeasible when
// the partial predicate fails, FieldObstruction when a required connecting
// factor does not exist over the base field, and AssemblyMismatch if a
// staged invariant breaks (which would be a bug).
CompletionWitness witness_to_full(const Eigenstructure& base,
                                  const Prescription& p);

// Duality with column completions: appending z columns to P is appending z
// rows to the transpose.  transposed(p) swaps the two minimal-index targets
// and exchanges the cmi-side and rmi-side variants; check_columns decides
// column-completion feasibility through it.
Prescription transposed(const Prescription& p);
FeasibilityReport check_columns(const Eigenstructure& base,
                                const Prescription& p);

}  // namespace pmc
