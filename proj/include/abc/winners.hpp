#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/counting.hpp"
#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace abc {

// Raised when an engine would exceed its configured work budget. Callers map
// this to the "capacity exhausted" outcome rather than a wrong answer.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct EnumerationLimits {
  std::int64_t max_committees = 2'000'000;
  std::int64_t max_nodes = 50'000'000;
  int threads = 1;
  // k == m is normally rejected (every committee ties); tests for degenerate
  // cases can opt in.
  bool allow_full_committee = false;
};

// All size-k committees grouped by exact score, best tier first; committees
// within a tier are in set_lex_less order. Scores strictly decrease across
// tiers and every committee appears exactly once.
struct RankedTiers {
  struct Tier {
    Rational score;
    std::vector<CandidateSet> committees;
  };
  std::vector<Tier> tiers;

  // 0-based tier index of a committee; throws if absent.
  int tier_of(CandidateSet committee) const;
};

struct WinnerSet {
  Rational score;
  std::vector<CandidateSet> committees;  // set_lex_less order
};

// Every size-k committee over candidates 1..m, in set_lex_less order.
std::vector<CandidateSet> all_committees(int m, int k);

RankedTiers enumerate_tiers(const CountingFunction& f, const Profile& profile, int k,
                            const EnumerationLimits& limits = {});

// Exact branch and bound over include/skip decisions with an admissible bound
// (each ballot is credited with its best conceivable remaining gain). Returns
// the complete top tier, ties included.
WinnerSet bnb_winners(const CountingFunction& f, const Profile& profile, int k,
                      const EnumerationLimits& limits = {});

// Greedy sequential rule for per-seat weights w_1..w_k: starting from the
// empty set, add a candidate maximizing the weighted score; score ties branch
// exhaustively, and the result is every reachable final committee.
std::vector<CandidateSet> sequential_thiele(const std::vector<Rational>& seat_weights,
                                            const Profile& profile, int k,
                                            const EnumerationLimits& limits = {});

// Mirror image: start from all candidates and repeatedly drop a candidate
// losing the least weighted score. seat_weights needs length m (intermediate
// sets are larger than k).
std::vector<CandidateSet> reverse_sequential_thiele(const std::vector<Rational>& seat_weights,
                                                    const Profile& profile, int k,
                                                    const EnumerationLimits& limits = {});

std::vector<Rational> pav_seat_weights(int count);  // 1, 1/2, ..., 1/count

}  // namespace abc
