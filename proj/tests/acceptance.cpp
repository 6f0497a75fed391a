// Acceptance gate: twelve end-to-end checks, one verdict line each.
// Exit status is the number of failing checks.

#include <algorithm>
#include <chrono>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "abc/apportionment.hpp"
#include "abc/axioms.hpp"
#include "abc/counting.hpp"
#include "abc/profile.hpp"
#include "abc/rules.hpp"
#include "abc/search.hpp"
#include "abc/winners.hpp"

using namespace abc;

namespace {

struct Checker {
  std::ostream& log;
  bool ok = true;

  void expect(bool condition, const std::string& what) {
    if (!condition) {
      log << "  FAIL: " << what << "\n";
      ok = false;
    }
  }
};

Profile block_profile() {
  return Profile(8, {{set_from_indices({1, 2, 3, 4}), 75},
                     {set_from_indices({5, 6, 7, 8}), 25}});
}

// Weights 42, 28, 21, 9 with list sizes 5, 4, 3, 2 over candidates 1..14.
PartyListStructure four_party_structure() {
  PartyListStructure s;
  s.num_candidates = 14;
  const std::vector<std::int64_t> weights = {42, 28, 21, 9};
  const std::vector<int> sizes = {5, 4, 3, 2};
  int next = 1;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    std::vector<int> ids;
    for (int j = 0; j < sizes[i]; ++j) ids.push_back(next++);
    s.parties.push_back({weights[i], set_from_indices(ids)});
  }
  return s;
}

bool criterion_1(Checker& c) {
  const Profile a = block_profile();
  const CountingFunction f = pav_counting(8, 4);
  c.expect(score(f, set_from_indices({1, 2, 3, 4}), a) == Rational(625, 4),
           "PAV score of {1,2,3,4} must be 625/4");
  const RankedTiers tiers = enumerate_tiers(f, a, 4);
  c.expect(tiers.tiers.front().score == Rational(325, 2),
           "winning score must be 325/2");
  const auto& winners = tiers.tiers.front().committees;
  c.expect(winners.size() == 16, "exactly 16 winning committees expected");
  const CandidateSet first_block = set_from_indices({1, 2, 3, 4});
  const CandidateSet second_block = set_from_indices({5, 6, 7, 8});
  for (CandidateSet w : winners)
    c.expect(set_size(w & first_block) == 3 && set_size(w & second_block) == 1,
             "every winner must split 3 + 1 across the blocks");
  return c.ok;
}

bool criterion_2(Checker& c) {
  const auto seats =
      divisor_apportion({9, 21, 28, 42}, {10, 10, 10, 10}, 10, DivisorMethod::dhondt);
  c.expect(seats == std::vector<std::vector<int>>{{1, 2, 3, 4}},
           "divisor seats for (9,21,28,42) at k=10 must be exactly (1,2,3,4)");

  const PartyListStructure s = four_party_structure();
  const CountingFunction f = pav_counting(14, 10);
  const SeatVectorResult result = winning_seat_vectors(f, s, 10);
  c.expect(result.vectors == std::vector<std::vector<int>>{{4, 3, 2, 1}},
           "PAV seat profile must match the divisor outcome");

  const WinnerSet ws = bnb_winners(f, party_list_profile(s), 10);
  c.expect(ws.committees.size() == 120, "120 optimal committees expected");
  for (CandidateSet w : ws.committees) {
    std::vector<int> profile;
    for (const Party& p : s.parties) profile.push_back(set_size(w & p.candidates));
    if (profile != std::vector<int>{4, 3, 2, 1}) {
      c.expect(false, "an optimal committee deviates from the seat profile");
      break;
    }
  }
  return c.ok;
}

bool criterion_3(Checker& c) {
  SearchConfig cfg;
  cfg.max_m = 6;
  cfg.max_k = 3;
  cfg.max_party_weight = 0;  // no per-party cap
  cfg.max_voters = 8;        // total-weight bound
  const AxiomVerdict v = search_counterexample("dhondt", "pav", cfg);
  c.expect(v.status == AxiomStatus::pass,
           "PAV winners must equal the divisor-proportional committees (" + v.detail + ")");
  c.expect(v.log.instances > 100000, "sweep unexpectedly small");
  c.log << "  party-list instances checked: " << v.log.instances << "\n";
  return c.ok;
}

bool criterion_4(Checker& c) {
  SearchConfig cfg;
  cfg.max_m = 6;
  cfg.max_k = 3;
  const AxiomVerdict av = search_counterexample("disjoint-equality", "av", cfg);
  c.expect(av.status == AxiomStatus::pass,
           "AV must pass disjoint equality on the full space (" + av.detail + ")");
  for (const char* spec : {"pav", "cc"}) {
    const AxiomVerdict v = search_counterexample("disjoint-equality", spec, cfg);
    c.expect(v.status == AxiomStatus::fail,
             std::string(spec) + " must yield a disjoint-equality witness");
    if (v.witness) {
      const Profile& wp = v.witness->profiles.front();
      const auto rule = make_rule(spec, wp.num_candidates(), v.witness->committee_size);
      c.expect(check_disjoint_equality(*rule, wp).status == AxiomStatus::fail,
               std::string(spec) + " witness must replay");
    }
  }
  return c.ok;
}

bool criterion_5(Checker& c) {
  SearchConfig cfg;
  cfg.max_m = 6;
  cfg.max_k = 3;
  cfg.max_party_weight = 8;  // per-party weight bound
  cfg.max_voters = 0;        // total unbounded
  const AxiomVerdict cc = search_counterexample("disjoint-diversity", "cc", cfg);
  c.expect(cc.status == AxiomStatus::pass,
           "CC must pass disjoint diversity on the full space (" + cc.detail + ")");
  c.log << "  party-list instances checked: " << cc.log.instances << "\n";
  const AxiomVerdict av = search_counterexample("disjoint-diversity", "av", cfg);
  c.expect(av.status == AxiomStatus::fail, "AV must yield a disjoint-diversity witness");
  if (av.witness) {
    const Profile& wp = av.witness->profiles.front();
    const auto rule = make_rule("av", wp.num_candidates(), av.witness->committee_size);
    c.expect(check_disjoint_diversity(*rule, wp).status == AxiomStatus::fail,
             "AV witness must replay");
  }
  return c.ok;
}

bool criterion_6(Checker& c) {
  // The (0, 1, 11/10) table only exists at k = 2, so the sweep audits m = 3,
  // k = 2 alone; other sizes are rejected by the factory.
  SearchConfig cfg;
  cfg.max_m = 3;
  cfg.max_k = 2;
  cfg.max_party_weight = 0;
  cfg.max_voters = 6;
  const AxiomVerdict v = search_counterexample("lower-quota", "thiele:1,1/10", cfg);
  c.expect(v.status == AxiomStatus::pass,
           "thiele:1,1/10 must honor lower quota (" + v.detail + ")");
  c.expect(v.log.instances > 0, "sweep must visit instances");
  return c.ok;
}

bool criterion_7(Checker& c) {
  const BandReport pav_band = seat_growth_band(pav_counting(9, 8), 8, 9);
  c.expect(pav_band.in_scope && pav_band.violations.empty(),
           "PAV must stay inside the seat-growth band");

  const BandReport av_band = seat_growth_band(av_counting(9, 8), 8, 9);
  std::set<int> av_upper;
  bool av_all_upper = true;
  for (const BandViolation& v : av_band.violations) {
    av_all_upper = av_all_upper && !v.lower;
    av_upper.insert(v.x);
  }
  c.expect(av_all_upper && av_upper == std::set<int>{3, 4, 5, 6, 7, 8},
           "AV must break the upper bound exactly for x in {3..8}");

  const BandReport cc_band = seat_growth_band(cc_counting(9, 8), 8, 9);
  std::set<int> cc_lower;
  bool cc_all_lower = true;
  for (const BandViolation& v : cc_band.violations) {
    cc_all_lower = cc_all_lower && v.lower;
    cc_lower.insert(v.x);
  }
  c.expect(cc_all_lower && cc_lower == std::set<int>{2, 3, 4, 5, 6, 7},
           "CC must break the lower bound exactly for x in {2..7}");

  SearchConfig cfg;
  cfg.max_m = 3;
  cfg.max_k = 2;
  cfg.max_party_weight = 2;
  cfg.max_voters = 4;
  for (const char* spec : {"av", "cc"}) {
    const AxiomVerdict v = search_counterexample("lower-quota", spec, cfg);
    c.expect(v.status == AxiomStatus::fail,
             std::string(spec) + " lower-quota search must find a failing profile");
    if (v.witness) {
      const Profile& wp = v.witness->profiles.front();
      const auto rule = make_rule(spec, wp.num_candidates(), v.witness->committee_size);
      c.expect(check_lower_quota(*rule, wp).status == AxiomStatus::fail,
               std::string(spec) + " lower-quota witness must replay");
    }
  }
  return c.ok;
}

bool criterion_8(Checker& c) {
  const std::vector<std::string> rules = {"doubled-av:1", "pav-av-tiebreak",
                                          "partylist-pav-else-trivial", "reversed-av"};
  const std::vector<std::string> axioms = {"symmetry", "consistency", "weak-efficiency",
                                           "continuity"};
  const std::vector<std::string> designated = {"symmetry", "continuity", "consistency",
                                               "weak-efficiency"};
  SearchConfig cfg;
  cfg.max_m = 3;
  cfg.max_k = 2;
  cfg.max_voters = 4;
  for (std::size_t r = 0; r < rules.size(); ++r) {
    for (const std::string& axiom : axioms) {
      const AxiomVerdict v = search_counterexample(axiom, rules[r], cfg);
      if (axiom == designated[r]) {
        c.expect(v.status == AxiomStatus::fail,
                 rules[r] + " must fail " + axiom + " (got " + to_string(v.status) + ")");
      } else {
        c.expect(v.status == AxiomStatus::pass || v.status == AxiomStatus::exhausted,
                 rules[r] + " must not fail " + axiom + " (" + v.detail + ")");
        if (v.log.inconclusive > 0)
          c.log << "  " << rules[r] << " / " << axiom << ": " << v.log.inconclusive
                << " of " << v.log.instances
                << " instances exhausted the probe bound (no counterexample)\n";
      }
    }
  }

  // Pinned continuity instance: merging n copies of the tie-breaking
  // electorate leaves the PAV components at 3n+1 versus 3n, so the strict
  // preference can never be recovered.
  const auto rule = make_rule("pav-av-tiebreak", 3, 2);
  const Profile a(3, {{set_from_indices({3}), 1}});
  const Profile b(3, {{set_from_indices({1, 2}), 2}, {set_from_indices({3}), 1}});
  for (std::int64_t n : {1, 7, 64}) {
    const Profile mix = a + b.scaled(n);
    c.expect(rule->lex_score(set_from_indices({1, 3}), mix).front() == Rational(3 * n + 1),
             "PAV component of {1,3} must be 3n+1");
    c.expect(rule->lex_score(set_from_indices({1, 2}), mix).front() == Rational(3 * n),
             "PAV component of {1,2} must be 3n");
  }
  c.expect(check_continuity(*rule, a, b).status == AxiomStatus::fail,
           "the pinned continuity instance must fail");
  return c.ok;
}

bool criterion_9(Checker& c) {
  const std::vector<std::string> rules = {"av",   "pav",          "cc",         "sav",
                                          "ct:2", "sainte-lague", "square-root"};
  const std::vector<std::string> axioms = {"symmetry", "consistency", "weak-efficiency",
                                           "continuity"};
  std::uint64_t seed = 20260823;
  for (const std::string& rule : rules) {
    for (const std::string& axiom : axioms) {
      SearchConfig cfg;
      cfg.max_m = 6;
      cfg.max_k = 3;
      cfg.max_voters = 8;
      cfg.mode = SearchMode::random;
      cfg.samples = 1000;
      cfg.seed = seed++;
      const AxiomVerdict v = search_counterexample(axiom, rule, cfg);
      c.expect(v.status == AxiomStatus::pass,
               rule + " must pass " + axiom + " on 1000 random instances (" + v.detail +
                   ")");
      c.expect(v.log.inconclusive == 0,
               rule + " / " + axiom + " must be decided analytically everywhere");
    }
  }
  return c.ok;
}

bool criterion_10(Checker& c) {
  std::int64_t pairs = 0;
  for (int m = 2; m <= 6; ++m) {
    for (int k = 1; k <= std::min(3, m - 1); ++k) {
      const CountingRule pav(pav_counting(m, k));
      const CountingRule cc(cc_counting(m, k));
      const auto all = all_committees(m, k);
      for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
          std::vector<CandidateSet> target = {all[i], all[j]};
          std::sort(target.begin(), target.end(), set_lex_less);
          const Profile ap = alpha_profile(AlphaKind::pav, all[i], all[j], m);
          const Profile ac = alpha_profile(AlphaKind::cc, all[i], all[j], m);
          if (pav.winners(ap) != target || cc.winners(ac) != target) {
            c.expect(false, "construction misses the pair " + set_string(all[i]) + ", " +
                                set_string(all[j]) + " at m=" + std::to_string(m) +
                                ", k=" + std::to_string(k));
            return c.ok;
          }
          ++pairs;
        }
      }
    }
  }
  c.expect(pairs == 444, "expected 444 committee pairs");
  c.log << "  committee pairs verified: " << pairs << "\n";

  SearchConfig cfg;
  cfg.max_voters = 5;
  const CountingRule av(av_counting(4, 2));
  const AxiomVerdict refuted = verify_two_nonimposition(
      av, set_from_indices({1, 2}), set_from_indices({3, 4}), cfg);
  c.expect(refuted.status == AxiomStatus::exhausted,
           "AV refutation must exhaust the space without a witness");
  c.expect(refuted.log.instances == 20348, "20,348 profiles expected, saw " +
                                               std::to_string(refuted.log.instances));
  c.expect(refuted.detail.rfind("refuted-within-bounds", 0) == 0,
           "detail must state the bounded refutation");
  return c.ok;
}

bool criterion_11(Checker& c) {
  const std::vector<std::string> specs = {"av",           "pav", "cc",
                                          "sav",          "sainte-lague",
                                          "square-root"};
  RandomSource rng(20260823);
  for (int trial = 0; trial < 500; ++trial) {
    const int m = static_cast<int>(rng.uniform(2, 12));
    const int k = static_cast<int>(rng.uniform(1, std::min<std::int64_t>(5, m - 1)));
    const Profile a = random_profile(rng, m, 50);
    const CountingFunction f = make_counting(specs[trial % specs.size()], m, k);
    const RankedTiers tiers = enumerate_tiers(f, a, k);
    const WinnerSet ws = bnb_winners(f, a, k);
    if (ws.score != tiers.tiers.front().score ||
        ws.committees != tiers.tiers.front().committees) {
      c.expect(false, "engines disagree on trial " + std::to_string(trial));
      return c.ok;
    }
  }
  return c.ok;
}

bool criterion_12(Checker& c) {
  SearchConfig cfg;
  cfg.max_m = 4;
  cfg.max_k = 2;
  cfg.max_voters = 20;
  cfg.mode = SearchMode::random;
  cfg.samples = 20000;
  cfg.seed = 20260823;
  const AxiomVerdict v = search_counterexample("consistency", "seqpav", cfg);
  c.expect(v.status == AxiomStatus::fail,
           "sequential PAV consistency witness expected (" + v.detail + ")");
  if (v.witness) {
    c.log << "  witness found after " << v.log.instances << " sampled instances\n";
    const Profile& wa = v.witness->profiles.front();
    const auto rule =
        make_rule("seqpav", wa.num_candidates(), v.witness->committee_size);
    c.expect(check_consistency(*rule, wa, v.witness->profiles.at(1)).status ==
                 AxiomStatus::fail,
             "witness must replay");
    const AxiomVerdict again = search_counterexample("consistency", "seqpav", cfg);
    c.expect(again.witness && again.witness->profiles == v.witness->profiles,
             "rerun must reproduce the same witness");
  }
  return c.ok;
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    std::function<bool(Checker&)> body;
  };
  const std::vector<Entry> entries = {
      {1, "75/25 block profile: PAV scores and the sixteen 3+1 winners", criterion_1},
      {2, "four-party seats: divisor outcome and PAV seat profiles", criterion_2},
      {3, "PAV equals divisor proportionality on party lists (m<=6, k<=3)", criterion_3},
      {4, "disjoint equality: AV passes, PAV and CC fail with witnesses", criterion_4},
      {5, "disjoint diversity: CC passes, AV fails with a witness", criterion_5},
      {6, "the (0, 1, 11/10) rule honors lower quota at m=3, k=2", criterion_6},
      {7, "seat-growth band at k=8 and lower-quota counterexamples", criterion_7},
      {8, "pathological gallery fails exactly its designated property", criterion_8},
      {9, "seven rules pass four properties on 1000 random instances each", criterion_9},
      {10, "two-committee constructions and the AV refutation", criterion_10},
      {11, "branch-and-bound agrees with enumeration on 500 instances", criterion_11},
      {12, "sequential PAV inconsistency witness is found and replays", criterion_12},
  };

  int failures = 0;
  for (const Entry& entry : entries) {
    Checker checker{std::cout};
    const auto start = std::chrono::steady_clock::now();
    bool ok = false;
    try {
      ok = entry.body(checker);
    } catch (const std::exception& e) {
      checker.log << "  EXCEPTION: " << e.what() << "\n";
      ok = false;
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::cout << "criterion " << entry.id << ": " << (ok ? "PASS" : "FAIL") << " ("
              << std::fixed << std::setprecision(2) << seconds << "s) — " << entry.title
              << "\n";
    std::cout.unsetf(std::ios::fixed);
    if (!ok) ++failures;
  }
  if (failures == 0)
    std::cout << "all 12 criteria passed\n";
  else
    std::cout << failures << " of 12 criteria FAILED\n";
  return failures;
}
