#pragma once

#include <cstddef>
#include <vector>

#include "pmc/error.hpp"
#include "pmc/field.hpp"

namespace pmc {

// Sentinels returned by out-of-range sequence reads.  They only ever
// participate in comparisons, never in sums; keeping them well away from the
// i64 limits means even accidental arithmetic cannot wrap.
inline constexpr i64 kPosInfinity = i64{1} << 60;
inline constexpr i64 kNegInfinity = -(i64{1} << 60);

// Finite integer sequence with 1-based access and the out-of-range
// conventions used throughout the completion conditions: reading before the
// first entry yields +infinity, past the last entry -infinity.
// The primary constructor enforces nonincreasing order; raw() admits
// computed auxiliary sequences that need no order guarantee.
class IntSeq {
 public:
  IntSeq() = default;
  explicit IntSeq(std::vector<i64> values);
  static IntSeq raw(std::vector<i64> values);

  std::size_t size() const { return v_.size(); }
  bool empty() const { return v_.empty(); }
  const std::vector<i64>& values() const { return v_; }

  i64 at(i64 i) const;   // 1-based, throws LengthMismatch out of range
  i64 get(i64 i) const;  // 1-based with the infinity conventions

  i64 sum() const;
  i64 prefix(i64 k) const;  // sum of the first k entries, 0 <= k <= size
  i64 count_positive() const;

 private:
  std::vector<i64> v_;
};

// Nonincreasing sequence of nonnegative integers.
class Partition : public IntSeq {
 public:
  Partition() = default;
  explicit Partition(std::vector<i64> values);
};

// a is dominated by b: prefix sums of a never exceed those of b and the
// totals agree.  Lengths must match.
bool majorize(const std::vector<i64>& a, const std::vector<i64>& b);

// Verdict of the generalized domination test of g against the pair (d, a),
// with the per-condition breakdown and the crossing positions h[j] recorded
// for diagnostics.
struct GenMajorizeResult {
  bool holds = false;
  bool pointwise = false;  // d_i >= g_{i+s} for every i
  bool excess = false;     // prefix excess of g over d bounded by prefixes of a
  bool totals = false;     // total of g equals total of d plus total of a
  std::vector<i64> h;      // first crossing index for each j = 1..len(a)
};

// Generalized domination of g by the pair (d, a):
//   (i)   d_i >= g_{i+s} for 1 <= i <= len(d), where s = len(a);
//   (ii)  for 1 <= j <= s, with h_j = min{ i : d_{i-j+1} < g_i } (reading
//         d out of range via the infinity conventions),
//         sum(g_1..g_{h_j}) - sum(d_1..d_{h_j-j}) <= sum(a_1..a_j);
//   (iii) sum(g) = sum(d) + sum(a).
// Requires len(g) = len(d) + len(a).  With len(a) = 0 this reduces to
// g = d; with len(d) = 0 it reduces to majorize(g, a).
GenMajorizeResult gen_majorize(const IntSeq& g, const IntSeq& d,
                               const std::vector<i64>& a);
GenMajorizeResult gen_majorize(const std::vector<i64>& g,
                               const std::vector<i64>& d,
                               const std::vector<i64>& a);

// Multiset union, returned in nonincreasing order.
std::vector<i64> seq_union(const std::vector<i64>& a,
                           const std::vector<i64>& b);

}  // namespace pmc
