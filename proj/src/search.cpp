#include "abc/search.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace abc {

std::int64_t RandomSource::uniform(std::int64_t lo, std::int64_t hi) {
  if (lo > hi) throw std::invalid_argument("empty sampling range");
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  if (span == 0) return static_cast<std::int64_t>(next());  // full 64-bit range
  const std::uint64_t limit = std::uint64_t(-1) - (std::uint64_t(-1) % span);
  std::uint64_t draw;
  do {
    draw = next();
  } while (draw >= limit);
  return lo + static_cast<std::int64_t>(draw % span);
}

namespace {

bool profiles_rec(int m, CandidateSet ballot, CandidateSet last_ballot, std::int64_t remaining,
                  std::int64_t max_mult, std::vector<BallotLine>& acc,
                  const std::function<bool(const Profile&)>& fn) {
  if (!acc.empty()) {
    if (!fn(Profile(m, acc))) return false;
  }
  if (remaining == 0) return true;
  for (CandidateSet b = ballot; b <= last_ballot; ++b) {
    const std::int64_t cap = max_mult > 0 ? std::min(max_mult, remaining) : remaining;
    for (std::int64_t mult = 1; mult <= cap; ++mult) {
      acc.push_back({b, mult});
      if (!profiles_rec(m, b + 1, last_ballot, remaining - mult, max_mult, acc, fn)) {
        acc.pop_back();
        return false;
      }
      acc.pop_back();
    }
  }
  return true;
}

}  // namespace

bool for_each_profile(int m, std::int64_t max_voters,
                      const std::function<bool(const Profile&)>& fn,
                      std::int64_t max_multiplicity) {
  if (m < 1 || m > 20) throw std::invalid_argument("profile enumeration expects small m");
  if (max_voters < 1) throw std::invalid_argument("need at least one voter");
  std::vector<BallotLine> acc;
  const CandidateSet last = (CandidateSet{1} << m) - 1;
  return profiles_rec(m, 0, last, max_voters, max_multiplicity, acc, fn);
}

namespace {

struct PartyListEnum {
  int m;
  std::int64_t max_party_weight;
  std::int64_t max_total_weight;
  const std::function<bool(const PartyListStructure&)>* fn;
  std::vector<CandidateSet> blocks;

  bool weights_rec(std::size_t index, std::int64_t budget, std::vector<std::int64_t>& weights) {
    if (index == blocks.size()) {
      PartyListStructure s;
      s.num_candidates = m;
      CandidateSet used = 0;
      for (std::size_t i = 0; i < blocks.size(); ++i) {
        s.parties.push_back({weights[i], blocks[i]});
        used |= blocks[i];
      }
      s.remainder = ((CandidateSet{1} << m) - 1) & ~used;
      std::sort(s.parties.begin(), s.parties.end(), [](const Party& a, const Party& b) {
        if (a.weight != b.weight) return a.weight > b.weight;
        return set_lex_less(a.candidates, b.candidates);
      });
      return (*fn)(s);
    }
    const std::int64_t lo = 1;
    std::int64_t hi = budget;
    if (max_party_weight > 0) hi = std::min(hi, max_party_weight);
    // Leave at least one unit per later block.
    hi = std::min(hi, budget - static_cast<std::int64_t>(blocks.size() - index - 1));
    for (std::int64_t w = lo; w <= hi; ++w) {
      weights.push_back(w);
      if (!weights_rec(index + 1, budget - w, weights)) {
        weights.pop_back();
        return false;
      }
      weights.pop_back();
    }
    return true;
  }

  bool emit_blocks() {
    if (blocks.empty()) return true;  // the empty profile is not emitted
    std::vector<std::int64_t> weights;
    const std::int64_t budget =
        max_total_weight > 0
            ? max_total_weight
            : max_party_weight * static_cast<std::int64_t>(blocks.size());
    if (budget < static_cast<std::int64_t>(blocks.size())) return true;  // infeasible
    return weights_rec(0, budget, weights);
  }

  // Assigns candidate c to: skip (unapproved), one of the existing blocks, or
  // a fresh block. Blocks are created in order of their smallest candidate,
  // which makes each block family unique.
  bool candidates_rec(int c) {
    if (c > m) return emit_blocks();
    if (!candidates_rec(c + 1)) return false;  // c unapproved
    const CandidateSet bit = CandidateSet{1} << (c - 1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
      blocks[i] |= bit;
      if (!candidates_rec(c + 1)) {
        blocks[i] &= ~bit;
        return false;
      }
      blocks[i] &= ~bit;
    }
    blocks.push_back(bit);
    const bool keep_going = candidates_rec(c + 1);
    blocks.pop_back();
    return keep_going;
  }
};

}  // namespace

bool for_each_party_list(int m, std::int64_t max_party_weight, std::int64_t max_total_weight,
                         const std::function<bool(const PartyListStructure&)>& fn) {
  if (m < 1 || m > 12) throw std::invalid_argument("party-list enumeration expects small m");
  if (max_party_weight < 0 || max_total_weight < 0)
    throw std::invalid_argument("weight bounds must be >= 0");
  if (max_party_weight == 0 && max_total_weight == 0)
    throw std::invalid_argument("at least one weight bound must be set");
  PartyListEnum e{m, max_party_weight, max_total_weight, &fn, {}};
  return e.candidates_rec(1);
}

bool for_each_disjoint_profile(int m, const std::function<bool(const Profile&)>& fn) {
  return for_each_party_list(m, 1, 0, [&](const PartyListStructure& s) {
    return fn(party_list_profile(s));
  });
}

std::vector<std::vector<int>> all_permutations(int m) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Profile random_profile(RandomSource& rng, int m, std::int64_t max_voters) {
  if (max_voters < 1) throw std::invalid_argument("need at least one voter");
  const std::int64_t target = rng.uniform(1, max_voters);
  std::vector<BallotLine> lines;
  std::int64_t voters = 0;
  const CandidateSet last = (CandidateSet{1} << m) - 1;
  while (voters < target) {
    const CandidateSet ballot = static_cast<CandidateSet>(rng.uniform(0, last));
    const std::int64_t mult = rng.uniform(1, target - voters);
    lines.push_back({ballot, mult});
    voters += mult;
  }
  return Profile(m, std::move(lines));
}

std::vector<int> random_permutation(RandomSource& rng, int m) {
  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 1);
  // Fisher-Yates with the portable sampler.
  for (int i = m - 1; i > 0; --i) {
    const auto j = static_cast<int>(rng.uniform(0, i));
    std::swap(perm[i], perm[j]);
  }
  return perm;
}

}  // namespace abc
