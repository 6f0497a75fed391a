#include <algorithm>

#include "doctest.h"

#include "abc/counting.hpp"
#include "abc/profile.hpp"
#include "abc/search.hpp"
#include "abc/winners.hpp"

using namespace abc;

namespace {

Profile block_profile() {
  return Profile(8, {{set_from_indices({1, 2, 3, 4}), 75},
                     {set_from_indices({5, 6, 7, 8}), 25}});
}

}  // namespace

TEST_CASE("all_committees enumerates in set_lex_less order") {
  const auto cs = all_committees(4, 2);
  CHECK(cs.size() == 6);
  CHECK(cs.front() == set_from_indices({1, 2}));
  CHECK(cs.back() == set_from_indices({3, 4}));
  CHECK(std::is_sorted(cs.begin(), cs.end(), set_lex_less));
  CHECK(all_committees(5, 0) == std::vector<CandidateSet>{0});
}

TEST_CASE("tier enumeration on the 75/25 block profile") {
  const Profile a = block_profile();
  const auto tiers = enumerate_tiers(pav_counting(8, 4), a, 4);
  REQUIRE(tiers.tiers.size() >= 2);
  CHECK(tiers.tiers[0].score == Rational(325, 2));
  CHECK(tiers.tiers[0].committees.size() == 16);
  for (CandidateSet w : tiers.tiers[0].committees) {
    CHECK(set_size(w & set_from_indices({1, 2, 3, 4})) == 3);
    CHECK(set_size(w & set_from_indices({5, 6, 7, 8})) == 1);
  }
  CHECK(tiers.tiers[1].score == Rational(625, 4));
  CHECK(tiers.tiers[1].committees ==
        std::vector<CandidateSet>{set_from_indices({1, 2, 3, 4})});
  CHECK(tiers.tier_of(set_from_indices({1, 2, 3, 4})) == 1);

  std::size_t total = 0;
  for (const auto& tier : tiers.tiers) total += tier.committees.size();
  CHECK(total == 70);  // C(8,4)

  const auto ws = bnb_winners(pav_counting(8, 4), a, 4);
  CHECK(ws.score == tiers.tiers[0].score);
  CHECK(ws.committees == tiers.tiers[0].committees);
}

TEST_CASE("branch and bound matches enumeration on seeded instances") {
  RandomSource rng(20260823);
  for (int trial = 0; trial < 60; ++trial) {
    const int m = static_cast<int>(rng.uniform(2, 8));
    const int k = static_cast<int>(rng.uniform(1, m - 1));
    const Profile p = random_profile(rng, m, 20);
    for (const auto& f : {pav_counting(m, k), av_counting(m, k), cc_counting(m, k),
                          sav_counting(m, k)}) {
      const auto tiers = enumerate_tiers(f, p, k);
      const auto ws = bnb_winners(f, p, k);
      CHECK(ws.score == tiers.tiers.front().score);
      CHECK(ws.committees == tiers.tiers.front().committees);
    }
  }
}

TEST_CASE("degenerate committee sizes and capacity limits") {
  const Profile p(3, {{0b011, 2}, {0b100, 1}});
  CHECK_THROWS_AS(enumerate_tiers(av_counting(3, 3), p, 3), std::invalid_argument);
  EnumerationLimits allow;
  allow.allow_full_committee = true;
  const auto tiers = enumerate_tiers(av_counting(3, 3), p, 3, allow);
  CHECK(tiers.tiers.size() == 1);
  CHECK(tiers.tiers[0].committees == std::vector<CandidateSet>{0b111});

  EnumerationLimits tiny;
  tiny.max_committees = 1;
  CHECK_THROWS_AS(enumerate_tiers(av_counting(8, 4), block_profile(), 4, tiny),
                  CapacityError);
  EnumerationLimits nodes;
  nodes.max_nodes = 1;
  CHECK_THROWS_AS(bnb_winners(av_counting(8, 4), block_profile(), 4, nodes),
                  CapacityError);
}

TEST_CASE("sequential selection with tie branching") {
  // 10 voters {1,3}, 1 voter {1}, 6 voters {2}; two seats.
  const Profile a1(3, {{0b101, 10}, {0b001, 1}, {0b010, 6}});
  CHECK(sequential_thiele(pav_seat_weights(2), a1, 2) ==
        std::vector<CandidateSet>{set_from_indices({1, 2})});

  // The candidate-swapped mirror elects the same committee...
  const Profile a2 = a1.permuted({2, 1, 3});
  CHECK(sequential_thiele(pav_seat_weights(2), a2, 2) ==
        std::vector<CandidateSet>{set_from_indices({1, 2})});

  // ...but their sum elects neither: 3 leads, then 1 and 2 tie for the seat.
  const auto joint = sequential_thiele(pav_seat_weights(2), a1 + a2, 2);
  CHECK(joint == std::vector<CandidateSet>{set_from_indices({1, 3}),
                                           set_from_indices({2, 3})});
}

TEST_CASE("reverse sequential selection drops the cheapest candidate") {
  const Profile a1(3, {{0b101, 10}, {0b001, 1}, {0b010, 6}});
  CHECK(reverse_sequential_thiele(pav_seat_weights(3), a1, 2) ==
        std::vector<CandidateSet>{set_from_indices({1, 2})});
  CHECK(pav_seat_weights(3) ==
        std::vector<Rational>{Rational(1), Rational(1, 2), Rational(1, 3)});
}
