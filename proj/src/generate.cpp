#include "pmc/generate.hpp"

#include <algorithm>
#include <functional>

#include "pmc/error.hpp"
#include "pmc/factor.hpp"
#include "pmc/intseq.hpp"

namespace pmc {

i64 Rng::uniform(i64 lo, i64 hi) {
  if (hi < lo) throw Error("empty range for uniform draw");
  // Modulo draw: platform-stable, and the tiny bias is irrelevant here.
  std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  return lo + static_cast<i64>(eng_() % span);
}

Scalar random_scalar(Rng& rng, const Field& f) {
  if (f.is_gf()) return Scalar::of(f, rng.uniform(0, f.characteristic() - 1));
  return Scalar::of(f, rng.uniform(-3, 3));
}

Poly random_poly(Rng& rng, const Field& f, i64 max_degree) {
  std::vector<Scalar> cs;
  i64 deg = rng.uniform(-1, max_degree);  // -1 draws the zero polynomial
  for (i64 k = 0; k <= deg; ++k) cs.push_back(random_scalar(rng, f));
  if (deg >= 0 && cs.back().is_zero())
    cs.back() = Scalar::of(f, 1);  // keep the drawn degree exact
  return Poly(f, cs);
}

Poly random_monic(Rng& rng, const Field& f, i64 degree) {
  std::vector<Scalar> cs;
  for (i64 k = 0; k < degree; ++k) cs.push_back(random_scalar(rng, f));
  cs.push_back(Scalar::of(f, 1));
  return Poly(f, cs);
}

PolyMatrix random_matrix(Rng& rng, const Field& f, i64 rows, i64 cols,
                         i64 grade) {
  PolyMatrix M(f, rows, cols, grade);
  for (i64 i = 0; i < rows; ++i)
    for (i64 j = 0; j < cols; ++j) M.set(i, j, random_poly(rng, f, grade));
  return M;
}

namespace {

// Distribute `total` units over `parts` buckets, sorted descending.
std::vector<i64> random_partition_desc(Rng& rng, i64 total, i64 parts) {
  if (parts <= 0) return {};
  std::vector<i64> v(static_cast<std::size_t>(parts), 0);
  for (i64 t = 0; t < total; ++t)
    ++v[static_cast<std::size_t>(rng.uniform(0, parts - 1))];
  std::sort(v.begin(), v.end(), std::greater<>());
  return v;
}

std::vector<i64> random_partition_asc(Rng& rng, i64 total, i64 parts) {
  auto v = random_partition_desc(rng, total, parts);
  std::reverse(v.begin(), v.end());
  return v;
}

}  // namespace

Eigenstructure random_eigenstructure(Rng& rng, const Field& f, i64 m, i64 n,
                                     i64 grade) {
  i64 r = rng.uniform(0, std::min(m, n));
  i64 total = r * grade;

  // Split the index-sum budget over the four structural components,
  // skipping components with no positions.
  i64 t_alpha = 0, t_e = 0, t_c = 0, t_u = 0;
  std::vector<i64*> buckets;
  if (r > 0) {
    buckets.push_back(&t_alpha);
    buckets.push_back(&t_e);
  }
  if (n - r > 0) buckets.push_back(&t_c);
  if (m - r > 0) buckets.push_back(&t_u);
  for (i64 t = 0; t < total; ++t)
    ++*buckets[static_cast<std::size_t>(
        rng.uniform(0, static_cast<i64>(buckets.size()) - 1))];

  Eigenstructure e;
  e.field = f;
  e.grade = grade;
  e.rank = r;

  std::vector<i64> degs = random_partition_asc(rng, t_alpha, r);
  Poly acc = Poly::one(f);
  i64 prev = 0;
  for (i64 i = 0; i < r; ++i) {
    acc = acc * random_monic(rng, f, degs[static_cast<std::size_t>(i)] - prev);
    prev = degs[static_cast<std::size_t>(i)];
    e.alphas.push_back(acc);
  }
  e.es = random_partition_asc(rng, t_e, r);
  e.cmi = random_partition_desc(rng, t_c, n - r);
  e.rmi = random_partition_desc(rng, t_u, m - r);
  e.validate();
  return e;
}

namespace {

std::vector<i64> seeded_f(Rng& rng, const Eigenstructure& base, i64 x,
                          i64 rx) {
  std::vector<i64> f;
  for (i64 i = 1; i <= rx; ++i)
    f.push_back(i - x <= 0 ? 0
                           : base.es[static_cast<std::size_t>(i - x - 1)]);
  if (!f.empty() && rng.coin()) f.back() += rng.uniform(0, 2);
  return f;
}

std::vector<Poly> seeded_beta(Rng& rng, const Eigenstructure& base, i64 x,
                              i64 rx) {
  const Field& F = base.field;
  std::vector<Poly> beta;
  for (i64 i = 1; i <= rx; ++i)
    beta.push_back(i - x <= 0
                       ? Poly::one(F)
                       : base.alphas[static_cast<std::size_t>(i - x - 1)]);
  if (!beta.empty() && rng.coin())
    beta.back() = beta.back() * random_monic(rng, F, rng.uniform(0, 2));
  return beta;
}

std::vector<Poly> fresh_chain(Rng& rng, const Field& f, i64 len,
                              i64 budget) {
  std::vector<i64> degs = random_partition_asc(
      rng, rng.uniform(0, std::max<i64>(0, budget)), len);
  std::vector<Poly> chain;
  Poly acc = Poly::one(f);
  i64 prev = 0;
  for (i64 i = 0; i < len; ++i) {
    acc = acc * random_monic(rng, f, degs[static_cast<std::size_t>(i)] - prev);
    prev = degs[static_cast<std::size_t>(i)];
    chain.push_back(acc);
  }
  return chain;
}

}  // namespace

Prescription random_prescription(Rng& rng, const Eigenstructure& base,
                                 Variant variant) {
  const Field& F = base.field;
  i64 r = base.rank, n = base.n(), m = base.m(), grade = base.grade;

  Prescription p;
  p.variant = variant;
  p.z = rng.uniform(1, 2);
  p.x = rng.uniform(0, std::min(p.z, n - r));
  i64 rx = r + p.x;
  i64 budget = rx * grade;

  if (p.uses_f())
    p.f = rng.coin() ? seeded_f(rng, base, p.x, rx)
                     : random_partition_asc(rng, rng.uniform(0, budget), rx);
  if (p.uses_beta())
    p.beta = rng.coin() ? seeded_beta(rng, base, p.x, rx)
                        : fresh_chain(rng, F, rx, budget);
  if (p.uses_gamma()) {
    std::vector<i64> fs = rng.coin()
                              ? seeded_f(rng, base, p.x, rx)
                              : random_partition_asc(
                                    rng, rng.uniform(0, budget), rx);
    std::vector<Poly> bs = rng.coin() ? seeded_beta(rng, base, p.x, rx)
                                      : fresh_chain(rng, F, rx, budget);
    for (i64 i = 0; i < rx; ++i)
      p.gamma.emplace_back(fs[static_cast<std::size_t>(i)],
                           bs[static_cast<std::size_t>(i)]);
  }
  if (p.uses_d()) {
    i64 len = n - r - p.x;
    if (rng.coin() && static_cast<i64>(base.cmi.size()) >= len) {
      p.d.assign(base.cmi.end() - len, base.cmi.end());
      if (!p.d.empty() && rng.coin()) p.d.front() += rng.uniform(0, 2);
    } else {
      p.d = random_partition_desc(rng, rng.uniform(0, budget), len);
    }
  }
  if (p.uses_v()) {
    i64 len = m + p.z - r - p.x;
    if (rng.coin()) {
      i64 extras = p.z - p.x;
      p.v = seq_union(
          base.rmi,
          random_partition_desc(
              rng, extras == 0 ? 0 : rng.uniform(0, budget), extras));
    } else {
      p.v = random_partition_desc(rng, rng.uniform(0, budget), len);
    }
  }
  p.validate(base);
  return p;
}

std::vector<std::vector<i64>> all_nonincreasing(i64 len, i64 max_sum) {
  std::vector<std::vector<i64>> out;
  std::vector<i64> cur;
  std::function<void(i64, i64, i64)> rec = [&](i64 pos, i64 cap, i64 left) {
    if (pos == len) {
      out.push_back(cur);
      return;
    }
    for (i64 v = std::min(cap, left); v >= 0; --v) {
      cur.push_back(v);
      rec(pos + 1, v, left - v);
      cur.pop_back();
    }
  };
  rec(0, max_sum, max_sum);
  return out;
}

std::vector<std::vector<i64>> all_nondecreasing(i64 len, i64 max_sum) {
  auto out = all_nonincreasing(len, max_sum);
  for (auto& v : out) std::reverse(v.begin(), v.end());
  return out;
}

std::vector<Poly> all_monic(const Field& f, i64 degree) {
  if (!f.is_gf()) throw Error("polynomial enumeration needs a finite field");
  i64 p = f.characteristic();
  std::uint64_t count = 1;
  for (i64 k = 0; k < degree; ++k) count *= static_cast<std::uint64_t>(p);
  std::vector<Poly> out;
  out.reserve(count);
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    std::vector<Scalar> cs;
    std::uint64_t rest = idx;
    for (i64 k = 0; k < degree; ++k) {
      cs.push_back(Scalar::of(f, static_cast<i64>(
                                     rest % static_cast<std::uint64_t>(p))));
      rest /= static_cast<std::uint64_t>(p);
    }
    cs.push_back(Scalar::of(f, 1));
    out.emplace_back(f, cs);
  }
  return out;
}

std::vector<Poly> monic_divisors(const Poly& a) {
  Factorization fac = factorize(a);
  if (!fac.complete)
    throw Error("divisor enumeration needs a complete factorization");
  std::vector<Poly> out{Poly::one(a.field())};
  for (const PolyFactor& pf : fac.parts) {
    std::vector<Poly> next;
    Poly pw = Poly::one(a.field());
    for (i64 k = 0; k <= pf.multiplicity; ++k) {
      for (const Poly& d : out) next.push_back(d * pw);
      if (k < pf.multiplicity) pw = pw * pf.base;
    }
    out = std::move(next);
  }
  return out;
}

std::vector<std::vector<Poly>> all_divisor_chains(const Field& f, i64 len,
                                                  i64 max_deg_sum) {
  std::vector<std::vector<Poly>> out;
  if (len == 0) {
    out.push_back({});
    return out;
  }
  // Chains are built from the top element down; every lower element is a
  // monic divisor of the one above, with the joint degree budget enforced.
  std::vector<Poly> partial;  // descending: partial[0] is the top
  std::function<void(i64)> down = [&](i64 used) {
    if (static_cast<i64>(partial.size()) == len) {
      std::vector<Poly> chain(partial.rbegin(), partial.rend());
      out.push_back(std::move(chain));
      return;
    }
    for (const Poly& d : monic_divisors(partial.back())) {
      i64 dd = d.is_constant() ? 0 : d.degree();
      if (used + dd > max_deg_sum) continue;
      partial.push_back(d);
      down(used + dd);
      partial.pop_back();
    }
  };
  for (i64 top_deg = 0; top_deg <= max_deg_sum; ++top_deg)
    for (const Poly& top : all_monic(f, top_deg)) {
      partial.clear();
      partial.push_back(top);
      down(top_deg);
    }
  return out;
}

std::vector<Prescription> enumerate_targets(const Eigenstructure& base,
                                            i64 z, Variant variant) {
  std::vector<Prescription> out;
  const Field& F = base.field;
  const i64 r = base.rank, n = base.n(), m = base.m(), g = base.grade;
  for (i64 x = 0; x <= std::min(z, n - r); ++x) {
    const i64 rx = r + x;
    const i64 budget = rx * g;  // degree-sum ceiling of the completed matrix
    Prescription proto;
    proto.variant = variant;
    proto.z = z;
    proto.x = x;
    const bool use_d = proto.uses_d(), use_v = proto.uses_v();

    auto emit_dv = [&](const Prescription& p, i64 used) {
      std::vector<std::vector<i64>> dcands =
          use_d ? all_nonincreasing(n - r - x, budget - used)
                : std::vector<std::vector<i64>>{{}};
      for (const auto& d : dcands) {
        i64 sd = 0;
        for (i64 t : d) sd += t;
        std::vector<std::vector<i64>> vcands =
            use_v ? all_nonincreasing(m + z - r - x, budget - used - sd)
                  : std::vector<std::vector<i64>>{{}};
        for (const auto& v : vcands) {
          Prescription q = p;
          if (use_d) q.d = d;
          if (use_v) q.v = v;
          out.push_back(std::move(q));
        }
      }
    };

    if (proto.uses_gamma()) {
      for (const auto& chain : all_divisor_chains(F, rx, budget)) {
        i64 s = 0;
        for (const auto& b : chain) s += b.is_constant() ? 0 : b.degree();
        for (const auto& es : all_nondecreasing(rx, budget - s)) {
          i64 se = 0;
          for (i64 t : es) se += t;
          Prescription p = proto;
          for (i64 i = 0; i < rx; ++i)
            p.gamma.emplace_back(es[static_cast<std::size_t>(i)],
                                 chain[static_cast<std::size_t>(i)]);
          emit_dv(p, s + se);
        }
      }
    } else if (proto.uses_f()) {
      for (const auto& f : all_nondecreasing(rx, budget)) {
        i64 s = 0;
        for (i64 t : f) s += t;
        Prescription p = proto;
        p.f = f;
        emit_dv(p, s);
      }
    } else if (proto.uses_beta()) {
      for (const auto& chain : all_divisor_chains(F, rx, budget)) {
        i64 s = 0;
        for (const auto& b : chain) s += b.is_constant() ? 0 : b.degree();
        Prescription p = proto;
        p.beta = chain;
        emit_dv(p, s);
      }
    } else {
      emit_dv(proto, 0);
    }
  }
  return out;
}

}  // namespace pmc
