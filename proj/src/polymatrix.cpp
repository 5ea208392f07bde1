#include "pmc/polymatrix.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

#include "pmc/error.hpp"

namespace pmc {

PolyMatrix::PolyMatrix(const Field& f, std::size_t rows, std::size_t cols,
                       i64 grade)
    : field_(f), rows_(rows), cols_(cols), grade_(grade) {
  if (rows == 0 || cols == 0) throw DimensionMismatch("empty matrix");
  if (grade < 0) throw Error("negative grade");
  e_.assign(rows * cols, Poly(f));
}

PolyMatrix PolyMatrix::from_rows(const Field& f, i64 grade,
                                 const std::vector<std::vector<Poly>>& rows) {
  if (rows.empty() || rows.front().empty())
    throw DimensionMismatch("empty matrix");
  PolyMatrix a(f, rows.size(), rows.front().size(), grade);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != a.cols_)
      throw DimensionMismatch("ragged rows in matrix literal");
    for (std::size_t j = 0; j < a.cols_; ++j) a.set(i, j, rows[i][j]);
  }
  return a;
}

const Poly& PolyMatrix::at(std::size_t i, std::size_t j) const {
  if (i >= rows_ || j >= cols_) throw DimensionMismatch("index out of range");
  return e_[i * cols_ + j];
}

void PolyMatrix::set(std::size_t i, std::size_t j, Poly p) {
  if (i >= rows_ || j >= cols_) throw DimensionMismatch("index out of range");
  if (!(p.field() == field_))
    throw FieldMismatch("entry field differs from matrix field");
  if (!p.is_zero() && p.degree() > grade_)
    throw GradeExceeded("entry degree " + std::to_string(p.degree()) +
                        " exceeds grade " + std::to_string(grade_));
  e_[i * cols_ + j] = std::move(p);
}

PolyMatrix PolyMatrix::transposed() const {
  PolyMatrix t(field_, cols_, rows_, grade_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.set(j, i, at(i, j));
  return t;
}

PolyMatrix PolyMatrix::reversed() const {
  PolyMatrix r(field_, rows_, cols_, grade_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      r.set(i, j, at(i, j).reversed(grade_));
  return r;
}

i64 PolyMatrix::true_degree() const {
  i64 d = 0;
  for (const Poly& p : e_)
    if (!p.is_zero()) d = std::max(d, p.degree());
  return d;
}

bool PolyMatrix::is_zero() const {
  return std::all_of(e_.begin(), e_.end(),
                     [](const Poly& p) { return p.is_zero(); });
}

bool PolyMatrix::operator==(const PolyMatrix& o) const {
  return field_ == o.field_ && rows_ == o.rows_ && cols_ == o.cols_ &&
         grade_ == o.grade_ && e_ == o.e_;
}

PolyMatrix stack(const PolyMatrix& top, const PolyMatrix& bottom) {
  if (top.cols() != bottom.cols())
    throw DimensionMismatch("stacked blocks must have equal column counts");
  if (!(top.field() == bottom.field()))
    throw FieldMismatch("stacked blocks must share a field");
  if (bottom.grade() > top.grade())
    throw GradeExceeded("bottom block grade exceeds top block grade");
  PolyMatrix s(top.field(), top.rows() + bottom.rows(), top.cols(),
               top.grade());
  for (std::size_t i = 0; i < top.rows(); ++i)
    for (std::size_t j = 0; j < top.cols(); ++j) s.set(i, j, top.at(i, j));
  for (std::size_t i = 0; i < bottom.rows(); ++i)
    for (std::size_t j = 0; j < bottom.cols(); ++j)
      s.set(top.rows() + i, j, bottom.at(i, j));
  return s;
}

std::size_t rank(const PolyMatrix& a) {
  // Fraction-free elimination: after step t every entry is a minor of the
  // original matrix, so the division by the previous pivot is exact.
  std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<Poly>> b(m, std::vector<Poly>(n, Poly(a.field())));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a.at(i, j);

  Poly prev = Poly::one(a.field());
  std::size_t t = 0;
  while (t < m && t < n) {
    std::size_t pi = m, pj = n;
    for (std::size_t i = t; i < m && pi == m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (!b[i][j].is_zero()) {
          pi = i;
          pj = j;
          break;
        }
    if (pi == m) break;
    std::swap(b[t], b[pi]);
    if (pj != t)
      for (std::size_t i = 0; i < m; ++i) std::swap(b[i][t], b[i][pj]);
    for (std::size_t i = t + 1; i < m; ++i)
      for (std::size_t j = t + 1; j < n; ++j)
        b[i][j] =
            exact_div(b[t][t] * b[i][j] - b[i][t] * b[t][j], prev);
    prev = b[t][t];
    ++t;
  }
  return t;
}

namespace {

// One round of pivot cleanup: clear the pivot row and column by exact or
// remainder-producing division steps.  Each remainder strictly lowers the
// minimal degree in the working submatrix, so the outer loop terminates.
void clear_pivot(std::vector<std::vector<Poly>>& b, std::size_t t) {
  std::size_t m = b.size(), n = b[0].size();
  bool dirty = true;
  while (dirty) {
    dirty = false;
    // Bring the minimal-degree nonzero entry of the submatrix to (t, t);
    // ties resolve to the first such entry in row-major order.
    std::size_t pi = m, pj = n;
    i64 best = 0;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j) {
        if (b[i][j].is_zero()) continue;
        if (pi == m || b[i][j].degree() < best) {
          pi = i;
          pj = j;
          best = b[i][j].degree();
        }
      }
    if (pi == m) return;  // submatrix is zero
    std::swap(b[t], b[pi]);
    if (pj != t)
      for (std::size_t i = 0; i < m; ++i) std::swap(b[i][t], b[i][pj]);

    for (std::size_t i = t + 1; i < m; ++i) {
      if (b[i][t].is_zero()) continue;
      auto [q, r] = divmod(b[i][t], b[t][t]);
      for (std::size_t j = t; j < n; ++j) b[i][j] = b[i][j] - q * b[t][j];
      if (!r.is_zero()) dirty = true;  // remainder of lower degree appeared
    }
    if (dirty) continue;
    for (std::size_t j = t + 1; j < n; ++j) {
      if (b[t][j].is_zero()) continue;
      auto [q, r] = divmod(b[t][j], b[t][t]);
      for (std::size_t i = t; i < m; ++i) b[i][j] = b[i][j] - b[i][t] * q;
      if (!r.is_zero()) dirty = true;
    }
  }
}

}  // namespace

std::vector<Poly> smith_form(const PolyMatrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  std::vector<std::vector<Poly>> b(m, std::vector<Poly>(n, Poly(a.field())));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j) b[i][j] = a.at(i, j);

  std::vector<Poly> diag;
  for (std::size_t t = 0; t < m && t < n; ++t) {
    clear_pivot(b, t);
    if (b[t][t].is_zero()) break;
    diag.push_back(b[t][t]);
  }

  // Diagonal entries need not form a divisibility chain yet; replace each
  // offending pair by (gcd, lcm), which preserves all determinantal
  // divisors.
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < diag.size(); ++i) {
      if (divides(diag[i], diag[i + 1])) continue;
      Poly g = poly_gcd(diag[i], diag[i + 1]);
      Poly l = poly_lcm(diag[i], diag[i + 1]);
      diag[i] = g;
      diag[i + 1] = l;
      changed = true;
    }
  }
  for (Poly& p : diag) p = p.monic();
  return diag;
}

namespace {

Poly determinant(const std::vector<std::vector<Poly>>& a, const Field& f) {
  std::size_t n = a.size();
  if (n == 1) return a[0][0];
  Poly det(f);
  for (std::size_t j = 0; j < n; ++j) {
    if (a[0][j].is_zero()) continue;
    std::vector<std::vector<Poly>> sub(n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) sub[i - 1].push_back(a[i][k]);
    Poly term = a[0][j] * determinant(sub, f);
    det = (j % 2 == 0) ? det + term : det - term;
  }
  return det;
}

// All size-k index subsets of {0, ..., n-1}, in lexicographic order.
void subsets(std::size_t n, std::size_t k,
             const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), 0);
  while (true) {
    fn(idx);
    std::size_t i = k;
    while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
    if (i == 0) return;
    ++idx[i - 1];
    for (std::size_t j = i; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

}  // namespace

std::vector<Poly> smith_form_minors(const PolyMatrix& a) {
  std::size_t m = a.rows(), n = a.cols();
  std::vector<Poly> dd;  // dd[k-1] = monic gcd of all k x k minors
  for (std::size_t k = 1; k <= std::min(m, n); ++k) {
    Poly g(a.field());
    subsets(m, k, [&](const std::vector<std::size_t>& ri) {
      subsets(n, k, [&](const std::vector<std::size_t>& ci) {
        std::vector<std::vector<Poly>> sub(k);
        for (std::size_t i = 0; i < k; ++i)
          for (std::size_t j = 0; j < k; ++j)
            sub[i].push_back(a.at(ri[i], ci[j]));
        Poly det = determinant(sub, a.field());
        if (det.is_zero()) return;
        g = g.is_zero() ? det.monic() : poly_gcd(g, det);
      });
    });
    if (g.is_zero()) break;  // all k x k minors vanish; rank is k - 1
    dd.push_back(g);
  }
  std::vector<Poly> inv;
  Poly prev = Poly::one(a.field());
  for (const Poly& d : dd) {
    inv.push_back(exact_div(d, prev).monic());
    prev = d;
  }
  return inv;
}

std::vector<i64> infinite_multiplicities(const PolyMatrix& a) {
  std::vector<Poly> inv = smith_form(a.reversed());
  std::vector<i64> es;
  es.reserve(inv.size());
  for (const Poly& p : inv) {
    i64 v = 0;
    while (p.coeff(v).is_zero()) ++v;  // p is nonzero, so this terminates
    es.push_back(v);
  }
  return es;
}

namespace {

std::size_t const_rank(std::vector<std::vector<Scalar>>& a) {
  if (a.empty() || a[0].empty()) return 0;
  std::size_t rows = a.size(), cols = a[0].size(), r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(a[piv], a[r]);
    Scalar inv = a[r][c].inverse();
    for (std::size_t j = c; j < cols; ++j) a[r][j] = a[r][j] * inv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || a[i][c].is_zero()) continue;
      Scalar f = a[i][c];
      for (std::size_t j = c; j < cols; ++j)
        a[i][j] = a[i][j] - f * a[r][j];
    }
    ++r;
  }
  return r;
}

// Nullity of the coefficient-convolution matrix whose kernel vectors are the
// polynomial null vectors of degree at most delta.
std::size_t convolution_nullity(const PolyMatrix& a, i64 delta) {
  std::size_t m = a.rows(), n = a.cols();
  i64 d = a.grade();
  std::size_t rows = m * static_cast<std::size_t>(d + delta + 1);
  std::size_t cols = n * static_cast<std::size_t>(delta + 1);
  std::vector<std::vector<Scalar>> c(
      rows, std::vector<Scalar>(cols, Scalar(a.field())));
  for (i64 l = 0; l <= d + delta; ++l)
    for (i64 k = 0; k <= delta; ++k) {
      i64 j = l - k;
      if (j < 0 || j > d) continue;
      for (std::size_t bi = 0; bi < m; ++bi)
        for (std::size_t bj = 0; bj < n; ++bj)
          c[l * m + bi][k * n + bj] = a.at(bi, bj).coeff(j);
    }
  return cols - const_rank(c);
}

std::vector<i64> right_minimal_indices(const PolyMatrix& a,
                                       std::size_t rank_a) {
  std::size_t want = a.cols() - rank_a;
  std::vector<i64> out;
  if (want == 0) return out;
  i64 bound = static_cast<i64>(rank_a) * a.grade();
  std::size_t k2 = 0, k1 = 0;  // nullities at delta - 2 and delta - 1
  for (i64 delta = 0; delta <= bound && out.size() < want; ++delta) {
    std::size_t k0 = convolution_nullity(a, delta);
    std::size_t cnt = k0 + k2 - 2 * k1;
    for (std::size_t i = 0; i < cnt; ++i) out.push_back(delta);
    k2 = k1;
    k1 = k0;
  }
  if (out.size() != want)
    throw Error("null-space search did not close");  // unreachable
  std::sort(out.rbegin(), out.rend());
  return out;
}

}  // namespace

std::pair<std::vector<i64>, std::vector<i64>> minimal_indices(
    const PolyMatrix& a) {
  std::size_t r = rank(a);
  return {right_minimal_indices(a, r),
          right_minimal_indices(a.transposed(), r)};
}

i64 Eigenstructure::eta() const {
  return static_cast<i64>(
      std::count_if(rmi.begin(), rmi.end(), [](i64 u) { return u > 0; }));
}

i64 Eigenstructure::alpha_deg_sum() const {
  i64 s = 0;
  for (const Poly& a : alphas) s += a.degree();
  return s;
}

i64 Eigenstructure::e_sum() const {
  return std::accumulate(es.begin(), es.end(), i64{0});
}

HomogFactor Eigenstructure::phi(i64 i) const {
  if (i <= 0) return HomogFactor::unit(field);
  if (i > rank) throw LengthMismatch("chain index beyond the rank");
  return HomogFactor(es[static_cast<std::size_t>(i - 1)],
                     alphas[static_cast<std::size_t>(i - 1)]);
}

void Eigenstructure::validate() const {
  if (rank < 0 || grade < 0) throw Error("negative rank or grade");
  if (alphas.size() != static_cast<std::size_t>(rank) ||
      es.size() != static_cast<std::size_t>(rank))
    throw LengthMismatch("chain lengths must equal the rank");
  for (std::size_t i = 0; i < alphas.size(); ++i) {
    if (!(alphas[i].field() == field))
      throw FieldMismatch("invariant factor over the wrong field");
    if (!alphas[i].is_monic())
      throw InvalidPrescription("invariant factors must be monic");
    if (es[i] < 0)
      throw InvalidPrescription("negative multiplicity at infinity");
    if (i > 0) {
      if (!divides(alphas[i - 1], alphas[i]))
        throw InvalidPrescription("invariant factors must form a chain");
      if (es[i - 1] > es[i])
        throw InvalidPrescription(
            "multiplicities at infinity must be nondecreasing");
    }
  }
  auto check_mi = [](const std::vector<i64>& v, const char* what) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0) throw InvalidPrescription(std::string(what) +
                                              " must be nonnegative");
      if (i > 0 && v[i - 1] < v[i])
        throw InvalidPrescription(std::string(what) +
                                  " must be nonincreasing");
    }
  };
  check_mi(cmi, "column minimal indices");
  check_mi(rmi, "row minimal indices");

  i64 lhs = alpha_deg_sum() + e_sum() +
            std::accumulate(cmi.begin(), cmi.end(), i64{0}) +
            std::accumulate(rmi.begin(), rmi.end(), i64{0});
  if (lhs != rank * grade)
    throw IndexSumViolation("degree sum " + std::to_string(lhs) +
                            " differs from rank * grade = " +
                            std::to_string(rank * grade));
}

Eigenstructure eigenstructure(const PolyMatrix& a) {
  Eigenstructure e;
  e.field = a.field();
  e.grade = a.grade();
  e.alphas = smith_form(a);
  e.rank = static_cast<i64>(e.alphas.size());
  e.es = infinite_multiplicities(a);
  if (e.es.size() != e.alphas.size())
    throw Error("finite and infinite structure disagree on the rank");
  auto [cmi, rmi] = minimal_indices(a);
  e.cmi = std::move(cmi);
  e.rmi = std::move(rmi);
  e.validate();
  return e;
}

Eigenstructure transposed(const Eigenstructure& e) {
  Eigenstructure t = e;
  std::swap(t.cmi, t.rmi);
  return t;
}

}  // namespace pmc
