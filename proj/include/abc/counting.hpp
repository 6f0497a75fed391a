#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace abc {

// A committee-counting function for a fixed election size (m candidates,
// committee size k): a dense table of exact values f(x, y) for
// 0 <= x <= k, 0 <= y <= m, where x is the number of approved committee
// members and y the ballot size. A profile's score for committee W is
//   sum over voters v of f(|ballot(v) & W|, |ballot(v)|).
class CountingFunction {
 public:
  // values[x][y]; validates shape, and monotonicity in x unless
  // allow_nonmonotone (the bypass is recorded and visible).
  CountingFunction(int num_candidates, int committee_size, std::string name,
                   std::vector<std::vector<Rational>> values,
                   bool allow_nonmonotone = false);

  int num_candidates() const { return m_; }
  int committee_size() const { return k_; }
  const std::string& name() const { return name_; }
  bool monotonicity_bypassed() const { return bypassed_; }
  const Rational& value(int x, int y) const { return values_[x][y]; }
  const std::vector<std::vector<Rational>>& values() const { return values_; }

  // Integer numerators over a common denominator, present when every entry
  // fits comfortably in int64. Comparisons through this path are still exact.
  bool has_fast_table() const { return fast_.has_value(); }
  std::int64_t fast_value(int x, int y) const { return (*fast_)[x][y]; }
  std::int64_t fast_denominator() const { return fast_den_; }

 private:
  int m_;
  int k_;
  std::string name_;
  std::vector<std::vector<Rational>> values_;
  bool bypassed_;
  std::optional<std::vector<std::vector<std::int64_t>>> fast_;
  std::int64_t fast_den_ = 1;
};

// Catalog builders.
CountingFunction av_counting(int m, int k);
CountingFunction pav_counting(int m, int k);
CountingFunction cc_counting(int m, int k);
CountingFunction sav_counting(int m, int k);  // x/y, with f(x,0) = 0
// 0 while x < threshold, then 1; requires 1 <= threshold <= k.
CountingFunction threshold_counting(int m, int k, int threshold);
// f(x,y) = w_1 + ... + w_x from per-seat weights (size k, each >= 0).
CountingFunction thiele_counting(int m, int k, const std::vector<Rational>& weights,
                                 const std::string& name);
CountingFunction sainte_lague_counting(int m, int k);  // weights 1/(2j-1)
CountingFunction square_root_counting(int m, int k);   // weights 1/j^2
CountingFunction table_counting(int m, int k, std::string name,
                                std::vector<std::vector<Rational>> values,
                                bool allow_nonmonotone = false);

// The (x, y) cells that can influence a comparison between two committees of
// size k over m candidates: x <= k, y <= m-1, x <= y and k - x <= m - y.
// The cell (k, m) is realizable (a ballot approving everybody) but is shared
// by every committee, so it never separates scores and is excluded here.
struct RelevantDomain {
  int num_candidates;
  int committee_size;
  std::vector<std::pair<int, int>> cells;  // sorted by (y, x)
  bool contains(int x, int y) const;
};
RelevantDomain relevant_domain(int m, int k);

Rational score(const CountingFunction& f, CandidateSet committee, const Profile& profile);

struct EquivalenceVerdict {
  enum class Kind { yes, no_affine_relation, inconclusive };
  Kind kind = Kind::inconclusive;
  // For yes: f = scale * g + offset[y] on the relevant domain (scale > 0), or
  // both functions are constant in x there (both_trivial).
  std::optional<Rational> scale;
  std::vector<Rational> offset_by_y;  // indexed by y, 0..m
  bool both_trivial = false;
  std::string detail;
};

// Decides whether f and g induce the same rule for (m, k) via an exact affine
// relation on the relevant domain. Requires matching (m, k).
EquivalenceVerdict equivalent(const CountingFunction& f, const CountingFunction& g);

// Shifts each column so f(0, y) = 0, then rescales so f(1,1) = 1 when that
// entry is nonzero after shifting. The result is equivalent to the input.
CountingFunction normalize(const CountingFunction& f);

}  // namespace abc
