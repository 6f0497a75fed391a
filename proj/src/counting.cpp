#include "abc/counting.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

namespace abc {

namespace {

// Safe ceiling for the fast path: numerators stay below this, leaving ample
// headroom for weighted sums over desk-scale profiles.
constexpr std::int64_t kFastLimit = std::int64_t{1} << 44;

std::optional<std::vector<std::vector<std::int64_t>>> build_fast_table(
    const std::vector<std::vector<Rational>>& values, std::int64_t& den_out) {
  BigInt den = 1;
  for (const auto& row : values)
    for (const auto& v : row) den = lcm(den, BigInt(denominator(v)));
  if (den > kFastLimit) return std::nullopt;
  std::vector<std::vector<std::int64_t>> fast(values.size());
  for (std::size_t x = 0; x < values.size(); ++x) {
    fast[x].reserve(values[x].size());
    for (const auto& v : values[x]) {
      const BigInt num = BigInt(numerator(v)) * (den / BigInt(denominator(v)));
      if (num > kFastLimit || num < -kFastLimit) return std::nullopt;
      fast[x].push_back(num.convert_to<std::int64_t>());
    }
  }
  den_out = den.convert_to<std::int64_t>();
  return fast;
}

}  // namespace

CountingFunction::CountingFunction(int num_candidates, int committee_size, std::string name,
                                   std::vector<std::vector<Rational>> values,
                                   bool allow_nonmonotone)
    : m_(num_candidates),
      k_(committee_size),
      name_(std::move(name)),
      values_(std::move(values)),
      bypassed_(allow_nonmonotone) {
  if (m_ < 1 || m_ > kMaxCandidates) throw std::invalid_argument("bad candidate count");
  if (k_ < 1 || k_ > m_) throw std::invalid_argument("committee size must satisfy 1 <= k <= m");
  if (static_cast<int>(values_.size()) != k_ + 1)
    throw std::invalid_argument("counting table must have k+1 rows");
  for (const auto& row : values_)
    if (static_cast<int>(row.size()) != m_ + 1)
      throw std::invalid_argument("counting table must have m+1 columns");
  if (!allow_nonmonotone) {
    for (int y = 0; y <= m_; ++y)
      for (int x = 0; x + 1 <= k_; ++x)
        if (values_[x][y] > values_[x + 1][y])
          throw std::invalid_argument(
              "counting function not monotone in x: f(" + std::to_string(x) + "," +
              std::to_string(y) + ") > f(" + std::to_string(x + 1) + "," + std::to_string(y) +
              ")");
  }
  fast_ = build_fast_table(values_, fast_den_);
}

namespace {

std::vector<std::vector<Rational>> make_table(int m, int k) {
  return std::vector<std::vector<Rational>>(k + 1, std::vector<Rational>(m + 1, Rational(0)));
}

}  // namespace

CountingFunction av_counting(int m, int k) {
  auto t = make_table(m, k);
  for (int x = 0; x <= k; ++x)
    for (int y = 0; y <= m; ++y) t[x][y] = x;
  return CountingFunction(m, k, "av", std::move(t));
}

CountingFunction pav_counting(int m, int k) {
  auto t = make_table(m, k);
  for (int x = 1; x <= k; ++x) {
    Rational h = t[x - 1][0] + Rational(1, x);
    for (int y = 0; y <= m; ++y) t[x][y] = h;
  }
  return CountingFunction(m, k, "pav", std::move(t));
}

CountingFunction cc_counting(int m, int k) {
  auto t = make_table(m, k);
  for (int x = 1; x <= k; ++x)
    for (int y = 0; y <= m; ++y) t[x][y] = 1;
  return CountingFunction(m, k, "cc", std::move(t));
}

CountingFunction sav_counting(int m, int k) {
  auto t = make_table(m, k);
  for (int x = 0; x <= k; ++x)
    for (int y = 1; y <= m; ++y) t[x][y] = Rational(x, y);
  return CountingFunction(m, k, "sav", std::move(t));
}

CountingFunction threshold_counting(int m, int k, int threshold) {
  if (threshold < 1 || threshold > k)
    throw std::invalid_argument("threshold must satisfy 1 <= t <= k");
  auto t = make_table(m, k);
  for (int x = threshold; x <= k; ++x)
    for (int y = 0; y <= m; ++y) t[x][y] = 1;
  return CountingFunction(m, k, "ct:" + std::to_string(threshold), std::move(t));
}

CountingFunction thiele_counting(int m, int k, const std::vector<Rational>& weights,
                                 const std::string& name) {
  if (static_cast<int>(weights.size()) != k)
    throw std::invalid_argument("thiele weights must have length k");
  for (const auto& w : weights)
    if (w < 0) throw std::invalid_argument("thiele weights must be >= 0");
  auto t = make_table(m, k);
  for (int x = 1; x <= k; ++x) {
    Rational v = t[x - 1][0] + weights[x - 1];
    for (int y = 0; y <= m; ++y) t[x][y] = v;
  }
  return CountingFunction(m, k, name, std::move(t));
}

CountingFunction sainte_lague_counting(int m, int k) {
  std::vector<Rational> w;
  for (int j = 1; j <= k; ++j) w.emplace_back(1, 2 * j - 1);
  return thiele_counting(m, k, w, "sainte-lague");
}

CountingFunction square_root_counting(int m, int k) {
  std::vector<Rational> w;
  for (int j = 1; j <= k; ++j) w.emplace_back(1, std::int64_t{j} * j);
  return thiele_counting(m, k, w, "square-root");
}

CountingFunction table_counting(int m, int k, std::string name,
                                std::vector<std::vector<Rational>> values,
                                bool allow_nonmonotone) {
  return CountingFunction(m, k, std::move(name), std::move(values), allow_nonmonotone);
}

bool RelevantDomain::contains(int x, int y) const {
  return x >= 0 && y >= 0 && x <= committee_size && y < num_candidates && x <= y &&
         committee_size - x <= num_candidates - y;
}

RelevantDomain relevant_domain(int m, int k) {
  if (m < 1 || k < 1 || k > m) throw std::invalid_argument("bad (m, k) for relevant domain");
  RelevantDomain d{m, k, {}};
  for (int y = 0; y < m; ++y)
    for (int x = 0; x <= k; ++x)
      if (x <= y && k - x <= m - y) d.cells.emplace_back(x, y);
  std::sort(d.cells.begin(), d.cells.end(),
            [](const auto& a, const auto& b) { return std::tie(a.second, a.first) < std::tie(b.second, b.first); });
  return d;
}

Rational score(const CountingFunction& f, CandidateSet committee, const Profile& profile) {
  if (profile.num_candidates() != f.num_candidates())
    throw std::invalid_argument("profile and counting function disagree on m");
  if (set_size(committee) != f.committee_size())
    throw std::invalid_argument("committee size does not match the counting function's k");
  if (f.has_fast_table()) {
    std::int64_t total = 0;
    for (const auto& line : profile.lines())
      total += line.multiplicity *
               f.fast_value(set_size(line.ballot & committee), set_size(line.ballot));
    return Rational(total, f.fast_denominator());
  }
  Rational total = 0;
  for (const auto& line : profile.lines())
    total += Rational(line.multiplicity) *
             f.value(set_size(line.ballot & committee), set_size(line.ballot));
  return total;
}

EquivalenceVerdict equivalent(const CountingFunction& f, const CountingFunction& g) {
  if (f.num_candidates() != g.num_candidates() || f.committee_size() != g.committee_size())
    throw std::invalid_argument("equivalence requires matching (m, k)");
  const int m = f.num_candidates();
  const int k = f.committee_size();
  const auto domain = relevant_domain(m, k);

  // Group domain cells by ballot size; within a column only differences in x
  // matter, so the affine relation f = c*g + d(y) reduces to difference
  // constraints d_f = c * d_g over consecutive x values.
  struct Diff {
    int x1, x2, y;
    Rational df, dg;
  };
  std::vector<Diff> diffs;
  for (int y = 0; y < m; ++y) {
    std::vector<int> xs;
    for (const auto& [cx, cy] : domain.cells)
      if (cy == y) xs.push_back(cx);
    for (std::size_t i = 0; i + 1 < xs.size(); ++i)
      diffs.push_back({xs[i], xs[i + 1], y, f.value(xs[i + 1], y) - f.value(xs[i], y),
                       g.value(xs[i + 1], y) - g.value(xs[i], y)});
  }

  EquivalenceVerdict verdict;
  const Diff* anchor = nullptr;
  for (const auto& d : diffs)
    if (d.dg != 0) {
      anchor = &d;
      break;
    }

  if (anchor == nullptr) {
    // g is constant in x on the domain.
    for (const auto& d : diffs)
      if (d.df != 0) {
        verdict.kind = EquivalenceVerdict::Kind::no_affine_relation;
        verdict.detail = "second function is constant in committee coverage on the relevant "
                         "domain but the first is not: f(" +
                         std::to_string(d.x1) + "," + std::to_string(d.y) + ") != f(" +
                         std::to_string(d.x2) + "," + std::to_string(d.y) + ")";
        return verdict;
      }
    verdict.kind = EquivalenceVerdict::Kind::yes;
    verdict.both_trivial = true;
    verdict.scale = Rational(1);
    verdict.detail = "both functions are constant in committee coverage on the relevant domain";
  } else {
    const Rational c = anchor->df / anchor->dg;
    for (const auto& d : diffs) {
      if (d.df != c * d.dg) {
        verdict.kind = EquivalenceVerdict::Kind::no_affine_relation;
        verdict.detail =
            "difference ratios disagree between cells (" + std::to_string(anchor->x1) + ".." +
            std::to_string(anchor->x2) + ", y=" + std::to_string(anchor->y) + ") and (" +
            std::to_string(d.x1) + ".." + std::to_string(d.x2) + ", y=" + std::to_string(d.y) +
            ")";
        return verdict;
      }
    }
    if (c <= 0) {
      verdict.kind = EquivalenceVerdict::Kind::inconclusive;
      verdict.detail = "an affine relation exists only with scale " + fraction_string(c) +
                       "; a positive scale is required to preserve comparisons";
      return verdict;
    }
    verdict.kind = EquivalenceVerdict::Kind::yes;
    verdict.scale = c;
    verdict.detail = "affine relation with scale " + fraction_string(c);
  }

  // Column offsets for the affine witness (defined on columns the domain
  // touches; other columns get offset 0).
  const Rational c = *verdict.scale;
  verdict.offset_by_y.assign(m + 1, Rational(0));
  for (int y = 0; y < m; ++y)
    for (const auto& [cx, cy] : domain.cells)
      if (cy == y) {
        verdict.offset_by_y[y] = f.value(cx, y) - c * g.value(cx, y);
        break;
      }
  return verdict;
}

CountingFunction normalize(const CountingFunction& f) {
  auto values = f.values();
  const int m = f.num_candidates();
  const int k = f.committee_size();
  for (int y = 0; y <= m; ++y) {
    const Rational base = values[0][y];
    for (int x = 0; x <= k; ++x) values[x][y] -= base;
  }
  const Rational unit = values[1][1];
  if (unit != 0)
    for (auto& row : values)
      for (auto& v : row) v /= unit;
  return CountingFunction(m, k, "norm(" + f.name() + ")", std::move(values),
                          f.monotonicity_bypassed());
}

}  // namespace abc
