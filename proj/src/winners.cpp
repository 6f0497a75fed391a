#include "abc/winners.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <set>
#include <thread>

namespace abc {

namespace {

std::int64_t binomial(int n, int r) {
  if (r < 0 || r > n) return 0;
  r = std::min(r, n - r);
  unsigned __int128 result = 1;
  for (int i = 1; i <= r; ++i) {
    result = result * static_cast<unsigned>(n - r + i) / static_cast<unsigned>(i);
    if (result > (static_cast<unsigned __int128>(1) << 62))
      return std::int64_t{1} << 62;  // saturate; caller only compares to limits
  }
  return static_cast<std::int64_t>(result);
}

void check_committee_size(int m, int k, const EnumerationLimits& limits) {
  if (k < 1) throw std::invalid_argument("committee size must be >= 1");
  if (k > m) throw std::invalid_argument("committee size exceeds candidate count");
  if (k == m && !limits.allow_full_committee)
    throw std::invalid_argument(
        "k == m leaves nothing to choose; pass allow_full_committee to permit it");
}

// Per-ballot view with the counting column for its ballot size, so scoring a
// committee is one popcount and one table lookup per line.
struct FastLine {
  CandidateSet ballot;
  std::int64_t mult;
  std::vector<std::int64_t> by_coverage;  // f numerator at coverage x
};

struct ExactLine {
  CandidateSet ballot;
  std::int64_t mult;
  std::vector<Rational> by_coverage;
};

std::vector<FastLine> fast_lines(const CountingFunction& f, const Profile& profile) {
  std::vector<FastLine> lines;
  for (const auto& line : profile.lines()) {
    FastLine fl{line.ballot, line.multiplicity, {}};
    const int y = set_size(line.ballot);
    for (int x = 0; x <= f.committee_size(); ++x) fl.by_coverage.push_back(f.fast_value(x, y));
    lines.push_back(std::move(fl));
  }
  return lines;
}

std::vector<ExactLine> exact_lines(const CountingFunction& f, const Profile& profile) {
  std::vector<ExactLine> lines;
  for (const auto& line : profile.lines()) {
    ExactLine el{line.ballot, line.multiplicity, {}};
    const int y = set_size(line.ballot);
    for (int x = 0; x <= f.committee_size(); ++x) el.by_coverage.push_back(f.value(x, y));
    lines.push_back(std::move(el));
  }
  return lines;
}

std::int64_t fast_score(const std::vector<FastLine>& lines, CandidateSet w) {
  std::int64_t total = 0;
  for (const auto& line : lines)
    total += line.mult * line.by_coverage[std::popcount(line.ballot & w)];
  return total;
}

Rational exact_score(const std::vector<ExactLine>& lines, CandidateSet w) {
  Rational total = 0;
  for (const auto& line : lines)
    total += Rational(line.mult) * line.by_coverage[std::popcount(line.ballot & w)];
  return total;
}

void sort_committees(std::vector<CandidateSet>& committees) {
  std::sort(committees.begin(), committees.end(), set_lex_less);
}

}  // namespace

std::vector<CandidateSet> all_committees(int m, int k) {
  if (m < 1 || k < 0 || k > m) throw std::invalid_argument("bad (m, k) for committee listing");
  if (k == 0) return {0};
  std::vector<CandidateSet> out;
  CandidateSet w = (CandidateSet{1} << k) - 1;
  const CandidateSet limit = CandidateSet{1} << m;
  while (w < limit) {
    out.push_back(w);
    // Gosper's hack: next subset of the same size.
    const CandidateSet c = w & -w;
    const CandidateSet r = w + c;
    w = (((w ^ r) >> 2) / c) | r;
  }
  sort_committees(out);
  return out;
}

int RankedTiers::tier_of(CandidateSet committee) const {
  for (std::size_t i = 0; i < tiers.size(); ++i)
    for (CandidateSet w : tiers[i].committees)
      if (w == committee) return static_cast<int>(i);
  throw std::invalid_argument("committee not present in tiers: " + set_string(committee));
}

RankedTiers enumerate_tiers(const CountingFunction& f, const Profile& profile, int k,
                            const EnumerationLimits& limits) {
  const int m = f.num_candidates();
  if (profile.num_candidates() != m)
    throw std::invalid_argument("profile and counting function disagree on m");
  check_committee_size(m, k, limits);
  if (k != f.committee_size())
    throw std::invalid_argument("committee size does not match the counting function's k");
  if (binomial(m, k) > limits.max_committees)
    throw CapacityError("C(m,k) exceeds the enumeration limit of " +
                        std::to_string(limits.max_committees) + "; use branch and bound");

  const auto committees = all_committees(m, k);
  RankedTiers result;
  if (f.has_fast_table()) {
    const auto lines = fast_lines(f, profile);
    std::map<std::int64_t, std::vector<CandidateSet>, std::greater<>> buckets;
    int hw = static_cast<int>(std::thread::hardware_concurrency());
    if (hw < 1) hw = 1;
    const int threads = std::clamp(limits.threads, 1, hw);
    if (threads > 1 && committees.size() > 4096) {
      std::vector<std::map<std::int64_t, std::vector<CandidateSet>, std::greater<>>> partial(
          threads);
      std::vector<std::thread> pool;
      const std::size_t chunk = (committees.size() + threads - 1) / threads;
      for (int t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(committees.size(), begin + chunk);
        pool.emplace_back([&, begin, end, t] {
          for (std::size_t i = begin; i < end; ++i)
            partial[t][fast_score(lines, committees[i])].push_back(committees[i]);
        });
      }
      for (auto& th : pool) th.join();
      for (auto& p : partial)
        for (auto& [s, ws] : p) {
          auto& dst = buckets[s];
          dst.insert(dst.end(), ws.begin(), ws.end());
        }
    } else {
      for (CandidateSet w : committees) buckets[fast_score(lines, w)].push_back(w);
    }
    for (auto& [s, ws] : buckets) {
      sort_committees(ws);
      result.tiers.push_back({Rational(s, f.fast_denominator()), std::move(ws)});
    }
  } else {
    const auto lines = exact_lines(f, profile);
    std::map<Rational, std::vector<CandidateSet>, std::greater<>> buckets;
    for (CandidateSet w : committees) buckets[exact_score(lines, w)].push_back(w);
    for (auto& [s, ws] : buckets) {
      sort_committees(ws);
      result.tiers.push_back({s, std::move(ws)});
    }
  }
  return result;
}

namespace {

// Branch and bound worker parameterized over the score representation.
template <typename Score, typename Lines>
struct BnbState {
  const Lines& lines;
  int m, k;
  std::int64_t max_nodes;
  std::int64_t nodes = 0;
  Score best{};
  bool have_best = false;
  std::vector<CandidateSet> winners;

  // coverage[i]: committee members inside line i's ballot so far.
  std::vector<int> coverage;

  BnbState(const Lines& lines, int m, int k, std::int64_t max_nodes)
      : lines(lines), m(m), k(k), max_nodes(max_nodes), coverage(lines.size(), 0) {}

  Score current_score() const {
    Score total{};
    for (std::size_t i = 0; i < lines.size(); ++i)
      total += Score(lines[i].mult) * lines[i].by_coverage[coverage[i]];
    return total;
  }

  // Admissible: each ballot independently gains at most the value of packing
  // min(slots, still-available approved candidates) more members into it.
  // Only called with next < m <= 63, so the shifts stay in range.
  Score bound(int next, int slots) const {
    Score total{};
    const CandidateSet universe = (CandidateSet{1} << m) - 1;
    const CandidateSet future = universe & (~CandidateSet{0} << next);
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const int avail = std::popcount(lines[i].ballot & future);
      const int reach = coverage[i] + std::min(slots, avail);
      total += Score(lines[i].mult) * lines[i].by_coverage[reach];
    }
    return total;
  }

  void dfs(int next, CandidateSet chosen, int chosen_count) {
    if (++nodes > max_nodes)
      throw CapacityError("branch and bound exceeded its node budget of " +
                          std::to_string(max_nodes));
    if (chosen_count == k) {
      const Score s = current_score();
      if (!have_best || s > best) {
        best = s;
        have_best = true;
        winners.clear();
      }
      if (s == best) winners.push_back(chosen);
      return;
    }
    if (m - next < k - chosen_count) return;  // cannot fill the committee
    if (have_best && bound(next, k - chosen_count) < best) return;
    // Include candidate next+1.
    const CandidateSet bit = CandidateSet{1} << next;
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (lines[i].ballot & bit) ++coverage[i];
    dfs(next + 1, chosen | bit, chosen_count + 1);
    for (std::size_t i = 0; i < lines.size(); ++i)
      if (lines[i].ballot & bit) --coverage[i];
    // Skip it.
    dfs(next + 1, chosen, chosen_count);
  }
};

}  // namespace

WinnerSet bnb_winners(const CountingFunction& f, const Profile& profile, int k,
                      const EnumerationLimits& limits) {
  const int m = f.num_candidates();
  if (profile.num_candidates() != m)
    throw std::invalid_argument("profile and counting function disagree on m");
  check_committee_size(m, k, limits);
  if (k != f.committee_size())
    throw std::invalid_argument("committee size does not match the counting function's k");

  WinnerSet out;
  if (f.has_fast_table()) {
    const auto lines = fast_lines(f, profile);
    BnbState<std::int64_t, std::vector<FastLine>> state(lines, m, k, limits.max_nodes);
    state.dfs(0, 0, 0);
    out.score = Rational(state.best, f.fast_denominator());
    out.committees = std::move(state.winners);
  } else {
    const auto lines = exact_lines(f, profile);
    BnbState<Rational, std::vector<ExactLine>> state(lines, m, k, limits.max_nodes);
    state.dfs(0, 0, 0);
    out.score = state.best;
    out.committees = std::move(state.winners);
  }
  sort_committees(out.committees);
  return out;
}

std::vector<Rational> pav_seat_weights(int count) {
  std::vector<Rational> w;
  for (int j = 1; j <= count; ++j) w.emplace_back(1, j);
  return w;
}

namespace {

CountingFunction weights_counting(const std::vector<Rational>& seat_weights, int m, int size,
                                  const std::string& name) {
  std::vector<Rational> prefix(seat_weights.begin(), seat_weights.begin() + size);
  return thiele_counting(m, size, prefix, name);
}

}  // namespace

std::vector<CandidateSet> sequential_thiele(const std::vector<Rational>& seat_weights,
                                            const Profile& profile, int k,
                                            const EnumerationLimits& limits) {
  const int m = profile.num_candidates();
  check_committee_size(m, k, limits);
  if (static_cast<int>(seat_weights.size()) < k)
    throw std::invalid_argument("need at least k seat weights");
  // Intermediate committees have every size up to k; score with the size-k
  // table (coverage never exceeds the committee's size, so rows suffice).
  const CountingFunction f = weights_counting(seat_weights, m, k, "seq-score");
  const auto lines = exact_lines(f, profile);

  std::set<CandidateSet> frontier{0};
  std::int64_t nodes = 0;
  for (int step = 0; step < k; ++step) {
    std::set<CandidateSet> next;
    for (CandidateSet w : frontier) {
      if (++nodes > limits.max_nodes)
        throw CapacityError("sequential tie branching exceeded the node budget");
      Rational best;
      bool have_best = false;
      std::vector<CandidateSet> arg;
      for (int c = 0; c < m; ++c) {
        const CandidateSet bit = CandidateSet{1} << c;
        if (w & bit) continue;
        const Rational s = exact_score(lines, w | bit);
        if (!have_best || s > best) {
          best = s;
          have_best = true;
          arg.clear();
        }
        if (s == best) arg.push_back(w | bit);
      }
      next.insert(arg.begin(), arg.end());
    }
    frontier = std::move(next);
  }
  std::vector<CandidateSet> out(frontier.begin(), frontier.end());
  sort_committees(out);
  return out;
}

std::vector<CandidateSet> reverse_sequential_thiele(const std::vector<Rational>& seat_weights,
                                                    const Profile& profile, int k,
                                                    const EnumerationLimits& limits) {
  const int m = profile.num_candidates();
  check_committee_size(m, k, limits);
  if (static_cast<int>(seat_weights.size()) < m)
    throw std::invalid_argument("reverse sequential scoring needs m seat weights");
  const CountingFunction f = weights_counting(seat_weights, m, m, "revseq-score");
  const auto lines = exact_lines(f, profile);

  const CandidateSet full = (CandidateSet{1} << m) - 1;
  std::set<CandidateSet> frontier{full};
  std::int64_t nodes = 0;
  for (int step = 0; step < m - k; ++step) {
    std::set<CandidateSet> next;
    for (CandidateSet w : frontier) {
      if (++nodes > limits.max_nodes)
        throw CapacityError("sequential tie branching exceeded the node budget");
      Rational best;
      bool have_best = false;
      std::vector<CandidateSet> arg;
      for (int c = 0; c < m; ++c) {
        const CandidateSet bit = CandidateSet{1} << c;
        if (!(w & bit)) continue;
        const Rational s = exact_score(lines, w & ~bit);
        if (!have_best || s > best) {
          best = s;
          have_best = true;
          arg.clear();
        }
        if (s == best) arg.push_back(w & ~bit);
      }
      next.insert(arg.begin(), arg.end());
    }
    frontier = std::move(next);
  }
  std::vector<CandidateSet> out(frontier.begin(), frontier.end());
  sort_committees(out);
  return out;
}

}  // namespace abc
