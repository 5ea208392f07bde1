#include "pmc/io.hpp"

#include <fstream>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "pmc/error.hpp"

namespace pmc {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& what) { throw ParseError(what); }

const json& member(const json& j, const char* key, const char* what) {
  auto it = j.find(key);
  if (it == j.end()) bad(std::string(what) + ": missing key \"" + key + "\"");
  return *it;
}

void require_object(const json& j, const char* what,
                    std::initializer_list<const char*> allowed) {
  if (!j.is_object()) bad(std::string(what) + ": expected an object");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      bad(std::string(what) + ": unknown key \"" + item.key() + "\"");
  }
}

i64 get_int(const json& j, const char* what) {
  if (!j.is_number_integer())
    bad(std::string(what) + ": expected an integer");
  return j.get<i64>();
}

bool get_bool(const json& j, const char* what) {
  if (!j.is_boolean()) bad(std::string(what) + ": expected a boolean");
  return j.get<bool>();
}

std::string get_str(const json& j, const char* what) {
  if (!j.is_string()) bad(std::string(what) + ": expected a string");
  return j.get<std::string>();
}

std::vector<i64> get_int_array(const json& j, const char* what) {
  if (!j.is_array()) bad(std::string(what) + ": expected an array");
  std::vector<i64> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(get_int(e, what));
  return out;
}

Field field_from(const json& j) {
  require_object(j, "field", {"type", "p"});
  std::string type = get_str(member(j, "type", "field"), "field.type");
  if (type == "rational") {
    if (j.contains("p")) bad("field: \"p\" is only valid with type gfp");
    return Field::rationals();
  }
  if (type == "gfp") {
    i64 p = get_int(member(j, "p", "field"), "field.p");
    if (p < 2 || p > 0x7fffffff) bad("field: modulus out of range");
    return Field::gf(static_cast<std::uint32_t>(p));
  }
  bad("field: unknown type \"" + type + "\"");
}

json field_to(const Field& f) {
  json j = json::object();
  if (f.is_rational()) {
    j["type"] = "rational";
  } else {
    j["type"] = "gfp";
    j["p"] = static_cast<i64>(f.characteristic());
  }
  return j;
}

Scalar scalar_from(const json& j, const Field& f, const char* what) {
  if (f.is_gf()) {
    return Scalar::of(f, get_int(j, what));
  }
  if (j.is_number_integer()) return Scalar::rational(j.get<i64>(), 1);
  if (j.is_string()) {
    mpq_class q;
    try {
      q = mpq_class(j.get<std::string>());
    } catch (const std::exception&) {
      bad(std::string(what) + ": malformed rational \"" +
          j.get<std::string>() + "\"");
    }
    if (q.get_den() == 0) bad(std::string(what) + ": zero denominator");
    q.canonicalize();
    return Scalar::rational(std::move(q));
  }
  bad(std::string(what) + ": expected an integer or \"num/den\" string");
}

json scalar_to(const Scalar& s) {
  if (s.field().is_gf()) return s.res();
  const mpq_class& q = s.rat();
  if (q.get_den() == 1 && q.get_num().fits_slong_p())
    return static_cast<i64>(q.get_num().get_si());
  return q.get_str();
}

Poly poly_from(const json& j, const Field& f, const char* what) {
  if (!j.is_array())
    bad(std::string(what) + ": expected a coefficient array");
  std::vector<Scalar> coeffs;
  coeffs.reserve(j.size());
  for (const json& c : j) coeffs.push_back(scalar_from(c, f, what));
  return Poly(f, std::move(coeffs));
}

json poly_to(const Poly& p) {
  json j = json::array();
  for (const Scalar& c : p.coeffs()) j.push_back(scalar_to(c));
  return j;
}

std::vector<Poly> poly_array_from(const json& j, const Field& f,
                                  const char* what) {
  if (!j.is_array()) bad(std::string(what) + ": expected an array");
  std::vector<Poly> out;
  out.reserve(j.size());
  for (const json& e : j) out.push_back(poly_from(e, f, what));
  return out;
}

json poly_array_to(const std::vector<Poly>& v) {
  json j = json::array();
  for (const Poly& p : v) j.push_back(poly_to(p));
  return j;
}

HomogFactor homog_from(const json& j, const Field& f, const char* what) {
  require_object(j, what, {"e", "alpha"});
  i64 e = get_int(member(j, "e", what), what);
  Poly alpha = poly_from(member(j, "alpha", what), f, what);
  if (e < 0) bad(std::string(what) + ": negative multiplicity at infinity");
  return HomogFactor(e, std::move(alpha));
}

json homog_to(const HomogFactor& h) {
  json j = json::object();
  j["e"] = h.inf_mult();
  j["alpha"] = poly_to(h.finite());
  return j;
}

json homog_array_to(const std::vector<HomogFactor>& v) {
  json j = json::array();
  for (const HomogFactor& h : v) j.push_back(homog_to(h));
  return j;
}

PolyMatrix matrix_from(const json& j) {
  require_object(j, "matrix", {"field", "grade", "rows", "cols", "entries"});
  Field f = field_from(member(j, "field", "matrix"));
  i64 grade = get_int(member(j, "grade", "matrix"), "matrix.grade");
  i64 rows = get_int(member(j, "rows", "matrix"), "matrix.rows");
  i64 cols = get_int(member(j, "cols", "matrix"), "matrix.cols");
  if (grade < 0) bad("matrix: negative grade");
  if (rows < 1 || cols < 1) bad("matrix: dimensions must be positive");
  const json& entries = member(j, "entries", "matrix");
  if (!entries.is_array() || static_cast<i64>(entries.size()) != rows)
    bad("matrix.entries: expected one array per row");
  PolyMatrix out(f, static_cast<std::size_t>(rows),
                 static_cast<std::size_t>(cols), grade);
  for (i64 i = 0; i < rows; ++i) {
    const json& row = entries[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<i64>(row.size()) != cols)
      bad("matrix.entries: expected one polynomial per column");
    for (i64 k = 0; k < cols; ++k)
      out.set(static_cast<std::size_t>(i), static_cast<std::size_t>(k),
              poly_from(row[static_cast<std::size_t>(k)], f,
                        "matrix entry"));
  }
  return out;
}

json matrix_to(const PolyMatrix& a) {
  json j = json::object();
  j["field"] = field_to(a.field());
  j["grade"] = a.grade();
  j["rows"] = static_cast<i64>(a.rows());
  j["cols"] = static_cast<i64>(a.cols());
  json entries = json::array();
  for (std::size_t i = 0; i < a.rows(); ++i) {
    json row = json::array();
    for (std::size_t k = 0; k < a.cols(); ++k) row.push_back(poly_to(a.at(i, k)));
    entries.push_back(std::move(row));
  }
  j["entries"] = std::move(entries);
  return j;
}

Eigenstructure eigenstructure_from(const json& j) {
  require_object(j, "eigenstructure",
                 {"field", "grade", "rank", "alphas", "es", "cmi", "rmi"});
  Eigenstructure e;
  e.field = field_from(member(j, "field", "eigenstructure"));
  e.grade = get_int(member(j, "grade", "eigenstructure"), "grade");
  e.rank = get_int(member(j, "rank", "eigenstructure"), "rank");
  e.alphas = poly_array_from(member(j, "alphas", "eigenstructure"), e.field,
                             "alphas");
  e.es = get_int_array(member(j, "es", "eigenstructure"), "es");
  e.cmi = get_int_array(member(j, "cmi", "eigenstructure"), "cmi");
  e.rmi = get_int_array(member(j, "rmi", "eigenstructure"), "rmi");
  e.validate();
  return e;
}

json eigenstructure_to(const Eigenstructure& e) {
  json j = json::object();
  j["field"] = field_to(e.field);
  j["grade"] = e.grade;
  j["rank"] = e.rank;
  j["alphas"] = poly_array_to(e.alphas);
  j["es"] = e.es;
  j["cmi"] = e.cmi;
  j["rmi"] = e.rmi;
  return j;
}

Prescription prescription_from(const json& j, const Field& f) {
  if (!j.is_object()) bad("prescription: expected an object");
  Prescription p;
  p.variant = variant_from_name(
      get_str(member(j, "variant", "prescription"), "prescription.variant"));

  std::vector<const char*> allowed = {"variant", "z", "x"};
  if (p.uses_gamma()) allowed.push_back("gamma");
  if (p.uses_f()) allowed.push_back("f");
  if (p.uses_beta()) allowed.push_back("beta");
  if (p.uses_d()) allowed.push_back("d");
  if (p.uses_v()) allowed.push_back("v");
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* k : allowed)
      if (item.key() == k) {
        known = true;
        break;
      }
    if (!known)
      bad("prescription: key \"" + item.key() +
          "\" is not used by variant " + variant_name(p.variant));
  }

  p.z = get_int(member(j, "z", "prescription"), "prescription.z");
  p.x = get_int(member(j, "x", "prescription"), "prescription.x");
  if (p.uses_gamma()) {
    const json& g = member(j, "gamma", "prescription");
    if (!g.is_array()) bad("prescription.gamma: expected an array");
    for (const json& e : g)
      p.gamma.push_back(homog_from(e, f, "prescription.gamma"));
  }
  if (p.uses_f())
    p.f = get_int_array(member(j, "f", "prescription"), "prescription.f");
  if (p.uses_beta())
    p.beta = poly_array_from(member(j, "beta", "prescription"), f,
                             "prescription.beta");
  if (p.uses_d())
    p.d = get_int_array(member(j, "d", "prescription"), "prescription.d");
  if (p.uses_v())
    p.v = get_int_array(member(j, "v", "prescription"), "prescription.v");
  return p;
}

json prescription_to(const Prescription& p) {
  json j = json::object();
  j["variant"] = variant_name(p.variant);
  j["z"] = p.z;
  j["x"] = p.x;
  if (p.uses_gamma()) j["gamma"] = homog_array_to(p.gamma);
  if (p.uses_f()) j["f"] = p.f;
  if (p.uses_beta()) j["beta"] = poly_array_to(p.beta);
  if (p.uses_d()) j["d"] = p.d;
  if (p.uses_v()) j["v"] = p.v;
  return j;
}

json condition_to(const ConditionResult& c) {
  json j = json::object();
  j["id"] = c.id;
  j["holds"] = c.holds;
  j["lhs"] = c.lhs ? json(*c.lhs) : json();
  j["rhs"] = c.rhs ? json(*c.rhs) : json();
  j["h"] = c.h;
  return j;
}

ConditionResult condition_from(const json& j) {
  require_object(j, "condition", {"id", "holds", "lhs", "rhs", "h"});
  ConditionResult c;
  c.id = get_str(member(j, "id", "condition"), "condition.id");
  c.holds = get_bool(member(j, "holds", "condition"), "condition.holds");
  const json& lhs = member(j, "lhs", "condition");
  if (!lhs.is_null()) c.lhs = get_int(lhs, "condition.lhs");
  const json& rhs = member(j, "rhs", "condition");
  if (!rhs.is_null()) c.rhs = get_int(rhs, "condition.rhs");
  c.h = get_int_array(member(j, "h", "condition"), "condition.h");
  return c;
}

json report_to(const FeasibilityReport& r) {
  json j = json::object();
  j["variant"] = variant_name(r.variant);
  j["feasible"] = r.feasible;
  j["field_caveat"] = r.field_caveat;
  j["constant"] = r.constant ? json(*r.constant) : json();
  j["constant_name"] = r.constant_name;
  j["a"] = r.a;
  j["b"] = r.b;
  json conds = json::array();
  for (const ConditionResult& c : r.conditions) conds.push_back(condition_to(c));
  j["conditions"] = std::move(conds);
  return j;
}

FeasibilityReport report_from(const json& j) {
  require_object(j, "report",
                 {"variant", "feasible", "field_caveat", "constant",
                  "constant_name", "a", "b", "conditions"});
  FeasibilityReport r;
  r.variant = variant_from_name(
      get_str(member(j, "variant", "report"), "report.variant"));
  r.feasible = get_bool(member(j, "feasible", "report"), "report.feasible");
  r.field_caveat =
      get_bool(member(j, "field_caveat", "report"), "report.field_caveat");
  const json& constant = member(j, "constant", "report");
  if (!constant.is_null()) r.constant = get_int(constant, "report.constant");
  r.constant_name = get_str(member(j, "constant_name", "report"),
                            "report.constant_name");
  r.a = get_int_array(member(j, "a", "report"), "report.a");
  r.b = get_int_array(member(j, "b", "report"), "report.b");
  const json& conds = member(j, "conditions", "report");
  if (!conds.is_array()) bad("report.conditions: expected an array");
  for (const json& c : conds) r.conditions.push_back(condition_from(c));
  return r;
}

json chain_to(const ChainConstruction& c) {
  json j = json::object();
  j["variant"] = variant_name(c.variant);
  j["positive_branch"] = c.positive_branch;
  j["constant"] = c.constant;
  j["g"] = c.g;
  j["h"] = c.h;
  j["w"] = c.w;
  j["canonical"] = c.canonical;
  j["f"] = c.f;
  j["beta"] = poly_array_to(c.beta);
  j["gamma"] = homog_array_to(c.gamma);
  j["tau"] = c.tau ? poly_to(*c.tau) : json();
  j["tau_h"] = c.tau_h ? homog_to(*c.tau_h) : json();
  return j;
}

json witness_to(const CompletionWitness& w) {
  json j = json::object();
  j["full"] = prescription_to(w.full);
  j["report"] = report_to(w.report);
  json stages = json::array();
  for (const ChainConstruction& c : w.stages) stages.push_back(chain_to(c));
  j["stages"] = std::move(stages);
  return j;
}

json verdict_to(const OracleVerdict& v) {
  json j = json::object();
  j["consistent"] = v.consistent;
  j["feasible"] = v.feasible;
  j["field_caveat"] = v.field_caveat;
  j["achieved"] = v.achieved;
  j["obstructed"] = v.obstructed;
  j["witness_closed"] = v.witness_closed;
  j["witness_index"] =
      v.witness_index ? json(static_cast<std::uint64_t>(*v.witness_index))
                      : json();
  j["message"] = v.message;
  return j;
}

OracleConfig oracle_config_from(const json& j) {
  require_object(j, "oracle",
                 {"budget_cap", "override_budget", "threads", "degree_bound"});
  OracleConfig cfg;
  if (j.contains("budget_cap"))
    cfg.budget_cap = get_int(j["budget_cap"], "oracle.budget_cap");
  if (j.contains("override_budget"))
    cfg.override_budget =
        get_bool(j["override_budget"], "oracle.override_budget");
  if (j.contains("threads"))
    cfg.threads = get_int(j["threads"], "oracle.threads");
  if (j.contains("degree_bound"))
    cfg.degree_bound = get_int(j["degree_bound"], "oracle.degree_bound");
  return cfg;
}

json parse_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump(const json& j) { return j.dump(2); }

}  // namespace

const Field& ProblemFile::field() const {
  if (matrix) return matrix->field();
  if (structure) return structure->field;
  throw Error("problem file carries no matrix or eigenstructure");
}

Eigenstructure ProblemFile::analyze() const {
  if (structure) return *structure;
  if (matrix) return eigenstructure(*matrix);
  throw Error("problem file carries no matrix or eigenstructure");
}

ProblemFile problem_from_json(const std::string& text) {
  json j = parse_text(text);
  require_object(j, "problem",
                 {"matrix", "eigenstructure", "prescription", "oracle"});
  ProblemFile out;
  if (j.contains("matrix")) out.matrix = matrix_from(j["matrix"]);
  if (j.contains("eigenstructure"))
    out.structure = eigenstructure_from(j["eigenstructure"]);
  if (out.matrix && out.structure)
    bad("problem: give either a matrix or an eigenstructure, not both");
  if (!out.matrix && !out.structure)
    bad("problem: a matrix or an eigenstructure is required");
  if (j.contains("prescription"))
    out.prescription = prescription_from(j["prescription"], out.field());
  if (j.contains("oracle")) out.oracle = oracle_config_from(j["oracle"]);
  return out;
}

ProblemFile load_problem(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str());
}

PolyMatrix matrix_from_json(const std::string& text) {
  return matrix_from(parse_text(text));
}

Eigenstructure eigenstructure_from_json(const std::string& text) {
  return eigenstructure_from(parse_text(text));
}

Prescription prescription_from_json(const std::string& text, const Field& f) {
  return prescription_from(parse_text(text), f);
}

FeasibilityReport report_from_json(const std::string& text) {
  return report_from(parse_text(text));
}

std::string to_json(const PolyMatrix& a) { return dump(matrix_to(a)); }

std::string to_json(const Eigenstructure& e) {
  return dump(eigenstructure_to(e));
}

std::string to_json(const Prescription& p) { return dump(prescription_to(p)); }

std::string to_json(const FeasibilityReport& r) { return dump(report_to(r)); }

std::string to_json(const ChainConstruction& c) { return dump(chain_to(c)); }

std::string to_json(const CompletionWitness& w) { return dump(witness_to(w)); }

std::string to_json(const OracleVerdict& v) { return dump(verdict_to(v)); }

std::string oracle_result_to_json(const PolyMatrix& base,
                                  const OracleResult& r) {
  json j = json::object();
  j["z"] = r.z;
  j["slots"] = r.slots;
  j["degree_bound"] = r.degree_bound;
  j["total"] = r.total;
  j["exhausted"] = r.exhausted;
  json achieved = json::object();
  for (const auto& [key, hit] : r.achieved) {
    json item = json::object();
    item["eigenstructure"] = eigenstructure_to(hit.first);
    item["witness_index"] = hit.second.index;
    PolyMatrix stacked =
        completion_matrix(base, r.z, r.degree_bound, hit.second.digits);
    json rows = json::array();
    for (std::size_t i = base.rows(); i < stacked.rows(); ++i) {
      json row = json::array();
      for (std::size_t k = 0; k < stacked.cols(); ++k)
        row.push_back(poly_to(stacked.at(i, k)));
      rows.push_back(std::move(row));
    }
    item["rows"] = std::move(rows);
    achieved[key] = std::move(item);
  }
  j["achieved"] = std::move(achieved);
  return dump(j);
}

}  // namespace pmc
