#include <algorithm>

#include "doctest.h"

#include "abc/profile.hpp"
#include "abc/search.hpp"

using namespace abc;

TEST_CASE("candidate sets round-trip and order lexicographically") {
  CHECK(set_from_indices({1, 3, 4}) == 0b1101);
  CHECK(indices_from_set(0b1101) == std::vector<int>{1, 3, 4});
  CHECK(set_size(0b1101) == 3);
  CHECK(set_string(0b1101) == "{1,3,4}");
  CHECK(set_string(0) == "{}");

  const CandidateSet e = 0, c1 = 0b1, c12 = 0b11, c13 = 0b101, c2 = 0b10;
  CHECK(set_lex_less(e, c1));
  CHECK(set_lex_less(c1, c12));
  CHECK(set_lex_less(c12, c13));
  CHECK(set_lex_less(c13, c2));
  CHECK(!set_lex_less(c2, c13));
  CHECK(!set_lex_less(c2, c2));
}

TEST_CASE("profiles canonicalize to sorted merged multisets") {
  const Profile a(3, {{0b001, 2}, {0b010, 1}, {0b001, 3}});
  CHECK(a.num_candidates() == 3);
  CHECK(a.num_voters() == 6);
  CHECK(a.lines().size() == 2);
  CHECK(a == Profile(3, {{0b010, 1}, {0b001, 5}}));
  CHECK(a.approved_union() == 0b011);

  const Profile sum = a + Profile(3, {{0b010, 2}});
  CHECK(sum.num_voters() == 8);
  CHECK(sum == Profile(3, {{0b001, 5}, {0b010, 3}}));

  CHECK(a.scaled(3).num_voters() == 18);
  CHECK_THROWS_AS(a.scaled(0), std::invalid_argument);

  CHECK(a.permuted({2, 1, 3}) == Profile(3, {{0b010, 5}, {0b001, 1}}));

  const Profile mixed(3, {{0b111, 2}, {0b011, 1}, {0b001, 4}});
  CHECK(mixed.restricted_bounded(2) == Profile(3, {{0b011, 1}, {0b001, 4}}));
  CHECK(mixed.restricted_regular(2) == Profile(3, {{0b011, 1}}));
  CHECK(Profile::empty(3).is_empty());
}

TEST_CASE("party-list structures are detected and rebuilt") {
  const Profile a(4, {{0b0011, 3}, {0b0100, 2}});
  const auto s = detect_party_list(a);
  REQUIRE(s.has_value());
  REQUIRE(s->parties.size() == 2);
  CHECK(s->num_candidates == 4);
  CHECK(s->parties[0].weight == 3);
  CHECK(s->parties[0].candidates == 0b0011);
  CHECK(s->parties[1].weight == 2);
  CHECK(s->parties[1].candidates == 0b0100);
  CHECK(s->remainder == 0b1000);
  CHECK(s->empty_voters == 0);
  CHECK(s->total_weight() == 5);
  CHECK(s->approved_union() == 0b0111);
  CHECK(party_list_profile(*s) == a);

  CHECK(!detect_party_list(Profile(3, {{0b011, 1}, {0b110, 1}})).has_value());

  const Profile with_empty(3, {{0, 2}, {0b001, 1}});
  const auto se = detect_party_list(with_empty);
  REQUIRE(se.has_value());
  CHECK(se->empty_voters == 2);
  CHECK(se->parties.size() == 1);
  CHECK(party_list_profile(*se) == with_empty);
}

namespace {

std::int64_t count_profiles(int m, std::int64_t max_voters, std::int64_t max_mult = 0) {
  std::int64_t n = 0;
  for_each_profile(m, max_voters, [&](const Profile&) { ++n; return true; }, max_mult);
  return n;
}

}  // namespace

TEST_CASE("profile enumeration counts match closed forms") {
  // Multisets of size 1..v over the 2^m ballot types.
  CHECK(count_profiles(2, 1) == 4);
  CHECK(count_profiles(2, 2) == 14);   // 4 + C(5,2)
  CHECK(count_profiles(2, 2, 1) == 10);  // 4 + C(4,2) with each ballot at most once
  CHECK(count_profiles(1, 3) == 9);    // sum of C(2+v-1, v) for v = 1..3

  // Early stop propagates.
  std::int64_t seen = 0;
  const bool completed = for_each_profile(2, 2, [&](const Profile&) {
    return ++seen < 3;
  });
  CHECK(!completed);
  CHECK(seen == 3);

  CHECK_THROWS_AS(count_profiles(0, 2), std::invalid_argument);
  CHECK_THROWS_AS(count_profiles(2, 0), std::invalid_argument);
}

TEST_CASE("party-list and disjoint enumeration counts") {
  std::int64_t n = 0;
  for_each_disjoint_profile(3, [&](const Profile& p) {
    const auto s = detect_party_list(p);
    REQUIRE(s.has_value());
    CHECK(s->empty_voters == 0);
    for (const Party& party : s->parties) CHECK(party.weight == 1);
    ++n;
    return true;
  });
  CHECK(n == 14);  // ordered set partitions of the nonempty subsets of {1,2,3}

  n = 0;
  for_each_party_list(2, 2, 0, [&](const PartyListStructure&) { ++n; return true; });
  CHECK(n == 10);

  n = 0;
  for_each_party_list(2, 0, 2, [&](const PartyListStructure&) { ++n; return true; });
  CHECK(n == 7);

  CHECK_THROWS_AS(for_each_party_list(2, 0, 0,
                                      [](const PartyListStructure&) { return true; }),
                  std::invalid_argument);
}

TEST_CASE("permutations and random draws are deterministic") {
  const auto perms = all_permutations(3);
  CHECK(perms.size() == 6);
  CHECK(perms.front() == std::vector<int>{1, 2, 3});
  CHECK(perms.back() == std::vector<int>{3, 2, 1});

  RandomSource r1(42), r2(42);
  for (int i = 0; i < 200; ++i) {
    const auto v = r1.uniform(3, 9);
    CHECK(v == r2.uniform(3, 9));
    CHECK(v >= 3);
    CHECK(v <= 9);
  }

  RandomSource r3(7);
  const Profile p = random_profile(r3, 4, 6);
  CHECK(p.num_candidates() == 4);
  CHECK(p.num_voters() >= 1);
  CHECK(p.num_voters() <= 6);

  auto perm = random_permutation(r3, 5);
  std::sort(perm.begin(), perm.end());
  CHECK(perm == std::vector<int>{1, 2, 3, 4, 5});

  RandomSource r4(7);
  CHECK(random_profile(r4, 4, 6) == p);
}
