#include "pmc/intseq.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <string>

namespace pmc {

IntSeq::IntSeq(std::vector<i64> values) : v_(std::move(values)) {
  for (std::size_t i = 1; i < v_.size(); ++i) {
    if (v_[i - 1] < v_[i]) {
      throw LengthMismatch("sequence is not nonincreasing at position " +
                           std::to_string(i + 1));
    }
  }
}

IntSeq IntSeq::raw(std::vector<i64> values) {
  IntSeq s;
  s.v_ = std::move(values);
  return s;
}

i64 IntSeq::at(i64 i) const {
  if (i < 1 || i > static_cast<i64>(v_.size())) {
    throw LengthMismatch("sequence index " + std::to_string(i) +
                         " outside 1.." + std::to_string(v_.size()));
  }
  return v_[static_cast<std::size_t>(i - 1)];
}

i64 IntSeq::get(i64 i) const {
  if (i < 1) return kPosInfinity;
  if (i > static_cast<i64>(v_.size())) return kNegInfinity;
  return v_[static_cast<std::size_t>(i - 1)];
}

i64 IntSeq::sum() const {
  return std::accumulate(v_.begin(), v_.end(), i64{0});
}

i64 IntSeq::prefix(i64 k) const {
  if (k < 0 || k > static_cast<i64>(v_.size())) {
    throw LengthMismatch("prefix length " + std::to_string(k) +
                         " outside 0.." + std::to_string(v_.size()));
  }
  return std::accumulate(v_.begin(), v_.begin() + k, i64{0});
}

i64 IntSeq::count_positive() const {
  return std::count_if(v_.begin(), v_.end(), [](i64 x) { return x > 0; });
}

Partition::Partition(std::vector<i64> values) : IntSeq(std::move(values)) {
  // Nonincreasing order is inherited; only the tail can go negative.
  if (!empty() && at(static_cast<i64>(size())) < 0) {
    throw LengthMismatch("partition entries must be nonnegative");
  }
}

bool majorize(const std::vector<i64>& a, const std::vector<i64>& b) {
  if (a.size() != b.size()) {
    throw LengthMismatch("majorize: length " + std::to_string(a.size()) +
                         " vs " + std::to_string(b.size()));
  }
  i64 sa = 0, sb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    if (i + 1 < a.size() && sa > sb) return false;
  }
  return sa == sb;
}

GenMajorizeResult gen_majorize(const IntSeq& g, const IntSeq& d,
                               const std::vector<i64>& a) {
  const i64 m = static_cast<i64>(d.size());
  const i64 s = static_cast<i64>(a.size());
  if (static_cast<i64>(g.size()) != m + s) {
    throw LengthMismatch("gen_majorize: len(g) must equal len(d) + len(a)");
  }

  GenMajorizeResult res;

  res.pointwise = true;
  for (i64 i = 1; i <= m; ++i) {
    if (d.at(i) < g.at(i + s)) {
      res.pointwise = false;
      break;
    }
  }

  res.excess = true;
  i64 a_prefix = 0;
  for (i64 j = 1; j <= s; ++j) {
    a_prefix += a[static_cast<std::size_t>(j - 1)];
    // First position where the j-shifted d drops below g.  Out-of-range
    // reads of d follow the infinity conventions; the scan is guaranteed to
    // stop at i = m + j because d_{m+1} reads as -infinity.
    i64 hj = 0;
    for (i64 i = 1; i <= m + j; ++i) {
      if (d.get(i - j + 1) < g.at(i)) {
        hj = i;
        break;
      }
    }
    if (hj == 0) {
      throw Error("gen_majorize: crossing index not found");
    }
    res.h.push_back(hj);
    if (g.prefix(hj) - d.prefix(hj - j) > a_prefix) res.excess = false;
  }

  res.totals = g.sum() == d.sum() + a_prefix;
  res.holds = res.pointwise && res.excess && res.totals;
  return res;
}

GenMajorizeResult gen_majorize(const std::vector<i64>& g,
                               const std::vector<i64>& d,
                               const std::vector<i64>& a) {
  return gen_majorize(IntSeq::raw(g), IntSeq::raw(d), a);
}

std::vector<i64> seq_union(const std::vector<i64>& a,
                           const std::vector<i64>& b) {
  std::vector<i64> r;
  r.reserve(a.size() + b.size());
  r.insert(r.end(), a.begin(), a.end());
  r.insert(r.end(), b.begin(), b.end());
  std::sort(r.begin(), r.end(), std::greater<i64>());
  return r;
}

}  // namespace pmc
