#pragma once

#include <optional>
#include <string>

#include "pmc/oracle.hpp"

namespace pmc {

// JSON documents for matrices, abstract eigenstructures, prescriptions and
// result records.  All parsers are strict: unknown keys, wrong types,
// missing required keys, or prescription fields the variant does not use
// raise ParseError.  Polynomials serialize as ascending coefficient
// arrays; rational coefficients accept integers or "num/den" strings.

// One parsed problem document: a concrete matrix or an abstract
// eigenstructure (exactly one of the two), an optional completion target,
// and optional oracle settings.
struct ProblemFile {
  std::optional<PolyMatrix> matrix;
  std::optional<Eigenstructure> structure;
  std::optional<Prescription> prescription;
  std::optional<OracleConfig> oracle;

  const Field& field() const;
  // The stored eigenstructure, or the one computed from the matrix.
  Eigenstructure analyze() const;
};

ProblemFile problem_from_json(const std::string& text);
ProblemFile load_problem(const std::string& path);  // ParseError on IO failure

PolyMatrix matrix_from_json(const std::string& text);
Eigenstructure eigenstructure_from_json(const std::string& text);
Prescription prescription_from_json(const std::string& text, const Field& f);
FeasibilityReport report_from_json(const std::string& text);

std::string to_json(const PolyMatrix& a);
std::string to_json(const Eigenstructure& e);
std::string to_json(const Prescription& p);
std::string to_json(const FeasibilityReport& r);
std::string to_json(const ChainConstruction& c);
std::string to_json(const CompletionWitness& w);
std::string to_json(const OracleVerdict& v);

// Achieved-tuple map of an enumeration: canonical key -> eigenstructure
// plus the reconstructed completion rows of its first witness.
std::string oracle_result_to_json(const PolyMatrix& base,
                                  const OracleResult& r);

}  // namespace pmc
