#include "pmc/prescription.hpp"

#include <algorithm>

#include "pmc/error.hpp"

namespace pmc {

std::string variant_name(Variant v) {
  switch (v) {
    case Variant::full: return "full";
    case Variant::inf_sing: return "inf-sing";
    case Variant::inf_cmi: return "inf-cmi";
    case Variant::inf_rmi: return "inf-rmi";
    case Variant::fin_sing: return "fin-sing";
    case Variant::fin_cmi: return "fin-cmi";
    case Variant::fin_rmi: return "fin-rmi";
    case Variant::sing: return "sing";
    case Variant::rmi: return "rmi";
    case Variant::cmi: return "cmi";
  }
  throw Error("unknown variant");
}

Variant variant_from_name(std::string_view name) {
  for (Variant v :
       {Variant::full, Variant::inf_sing, Variant::inf_cmi, Variant::inf_rmi,
        Variant::fin_sing, Variant::fin_cmi, Variant::fin_rmi, Variant::sing,
        Variant::rmi, Variant::cmi})
    if (variant_name(v) == name) return v;
  throw ParseError("unknown variant name: " + std::string(name));
}

bool Prescription::uses_f() const {
  return variant == Variant::inf_sing || variant == Variant::inf_cmi ||
         variant == Variant::inf_rmi;
}

bool Prescription::uses_beta() const {
  return variant == Variant::fin_sing || variant == Variant::fin_cmi ||
         variant == Variant::fin_rmi;
}

bool Prescription::uses_d() const {
  return variant == Variant::full || variant == Variant::inf_sing ||
         variant == Variant::inf_cmi || variant == Variant::fin_sing ||
         variant == Variant::fin_cmi || variant == Variant::sing ||
         variant == Variant::cmi;
}

bool Prescription::uses_v() const {
  return variant == Variant::full || variant == Variant::inf_sing ||
         variant == Variant::inf_rmi || variant == Variant::fin_sing ||
         variant == Variant::fin_rmi || variant == Variant::sing ||
         variant == Variant::rmi;
}

i64 Prescription::eta_bar() const {
  return static_cast<i64>(
      std::count_if(v.begin(), v.end(), [](i64 t) { return t > 0; }));
}

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw InvalidPrescription(msg);
}

void check_partition(const std::vector<i64>& s, i64 want_len,
                     const char* what) {
  require(static_cast<i64>(s.size()) == want_len,
          std::string(what) + " must have length " +
              std::to_string(want_len) + ", got " +
              std::to_string(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) {
    require(s[i] >= 0, std::string(what) + " entries must be nonnegative");
    if (i > 0)
      require(s[i - 1] >= s[i],
              std::string(what) + " must be nonincreasing");
  }
}

}  // namespace

void Prescription::validate(const Eigenstructure& base) const {
  require(z >= 1, "at least one row must be appended");
  i64 n_minus_r = static_cast<i64>(base.cmi.size());
  require(x >= 0 && x <= std::min(z, n_minus_r),
          "rank increase must satisfy 0 <= x <= min(z, n - r)");
  i64 rx = base.rank + x;

  if (uses_gamma()) {
    require(static_cast<i64>(gamma.size()) == rx,
            "homogeneous chain must have length " + std::to_string(rx));
    for (std::size_t i = 0; i < gamma.size(); ++i) {
      require(gamma[i].finite().field() == base.field,
              "homogeneous factor over the wrong field");
      if (i > 0)
        require(gamma[i - 1].divides(gamma[i]),
                "homogeneous factors must form a divisibility chain");
    }
  } else {
    require(gamma.empty(), "variant does not take a homogeneous chain");
  }

  if (uses_f()) {
    require(static_cast<i64>(f.size()) == rx,
            "multiplicities at infinity must have length " +
                std::to_string(rx));
    for (std::size_t i = 0; i < f.size(); ++i) {
      require(f[i] >= 0, "multiplicities at infinity must be nonnegative");
      if (i > 0)
        require(f[i - 1] <= f[i],
                "multiplicities at infinity must be nondecreasing");
    }
  } else {
    require(f.empty(), "variant does not take multiplicities at infinity");
  }

  if (uses_beta()) {
    require(static_cast<i64>(beta.size()) == rx,
            "invariant factor chain must have length " + std::to_string(rx));
    for (std::size_t i = 0; i < beta.size(); ++i) {
      require(beta[i].field() == base.field,
              "invariant factor over the wrong field");
      require(!beta[i].is_zero() && beta[i].is_monic(),
              "prescribed invariant factors must be monic");
      if (i > 0)
        require(divides(beta[i - 1], beta[i]),
                "prescribed invariant factors must form a chain");
    }
  } else {
    require(beta.empty(), "variant does not take invariant factors");
  }

  if (uses_d()) {
    check_partition(d, n_minus_r - x, "column minimal index target");
  } else {
    require(d.empty(), "variant does not take column minimal indices");
  }

  if (uses_v()) {
    i64 m = base.rank + static_cast<i64>(base.rmi.size());
    check_partition(v, m + z - base.rank - x, "row minimal index target");
  } else {
    require(v.empty(), "variant does not take row minimal indices");
  }
}

const ConditionResult* FeasibilityReport::find(std::string_view id) const {
  for (const ConditionResult& c : conditions)
    if (c.id == id) return &c;
  return nullptr;
}

}  // namespace pmc
