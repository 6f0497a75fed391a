#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "abc/profile.hpp"

namespace abc {

// Deterministic random source. mt19937_64 has a standardized sequence, and
// bounded sampling is done by rejection here because the standard library's
// distributions are not portable across implementations.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed) : engine_(seed) {}
  std::uint64_t next() { return engine_(); }
  // Uniform in [lo, hi], inclusive.
  std::int64_t uniform(std::int64_t lo, std::int64_t hi);

 private:
  std::mt19937_64 engine_;
};

// Enumerates every canonical profile over candidates 1..m with 1..max_voters
// voters (ballots may be empty). max_multiplicity caps how often one ballot
// may repeat (0 = only the voter bound). The callback returns false to stop
// early; the function returns false iff stopped.
bool for_each_profile(int m, std::int64_t max_voters,
                      const std::function<bool(const Profile&)>& fn,
                      std::int64_t max_multiplicity = 0);

// Enumerates every canonical list-structured profile over candidates 1..m:
// pairwise-disjoint nonempty ballots with per-ballot multiplicities
// (weights). Weights run 1..max_party_weight (0 = unbounded) and total at
// most max_total_weight (0 = unbounded); at least one bound must be set.
bool for_each_party_list(int m, std::int64_t max_party_weight, std::int64_t max_total_weight,
                         const std::function<bool(const PartyListStructure&)>& fn);

// Enumerates profiles where each candidate is approved at most once: the
// nonempty ballots are pairwise disjoint and each appears exactly once.
bool for_each_disjoint_profile(int m, const std::function<bool(const Profile&)>& fn);

std::vector<std::vector<int>> all_permutations(int m);

Profile random_profile(RandomSource& rng, int m, std::int64_t max_voters);
std::vector<int> random_permutation(RandomSource& rng, int m);

}  // namespace abc
