#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abc/profile.hpp"
#include "abc/rules.hpp"

namespace abc {

enum class SearchMode { exhaustive, random };

// Bounds for counterexample searches. Profile spaces use max_voters (and the
// optional per-ballot multiplicity cap); party-list spaces use
// max_party_weight per party and max_voters as the total-weight bound, where
// 0 leaves the respective bound open (at least one must be set).
struct SearchConfig {
  int max_m = 6;
  int max_k = 3;
  std::int64_t max_voters = 8;
  std::int64_t max_ballot_multiplicity = 0;
  std::int64_t max_party_weight = 8;
  SearchMode mode = SearchMode::exhaustive;
  std::uint64_t seed = 0;       // random mode
  std::int64_t samples = 1000;  // random mode
  // Replication bound for black-box continuity and induced-comparison probes.
  // Rules exposing additive lexicographic scores are decided analytically and
  // ignore it.
  std::int64_t continuity_n_max = 64;
  // Work cap for exhaustive sweeps; exceeding it raises CapacityError.
  std::int64_t max_instances = 20'000'000;

  std::string describe() const;
};

enum class AxiomStatus { pass, fail, not_applicable, exhausted };
std::string to_string(AxiomStatus status);

struct AxiomWitness {
  std::vector<Profile> profiles;
  int committee_size = 0;  // k of the election the witness belongs to
  std::vector<CandidateSet> committees;
  std::vector<int> permutation;  // candidate permutation, when relevant
  std::optional<std::int64_t> n;  // replication factor, when relevant
  std::string note;
};

struct SearchLog {
  std::int64_t instances = 0;
  // Instances a bounded black-box probe could neither confirm nor refute.
  std::int64_t inconclusive = 0;
  std::optional<std::uint64_t> seed;
  std::string bounds;
};

// Outcome of one check or one search. A fail always carries a witness that
// replays; a pass over a searched space documents the bounds in `log`.
// `exhausted` means no counterexample was found but bounded probes left some
// instances unconfirmed, so the space is not certified.
struct AxiomVerdict {
  std::string axiom;
  std::string rule;
  AxiomStatus status = AxiomStatus::pass;
  std::string detail;
  std::optional<AxiomWitness> witness;
  SearchLog log;
};

// --- Single-instance checkers ------------------------------------------------
// Each verifies one axiom on explicit inputs. Rules fix (m, k); all profiles
// must match the rule's m.

// Anonymity (re-evaluating a voter-shuffled rebuild of `a`) plus neutrality
// (the tier structure must commute with the candidate permutation).
// voter_perm permutes the multiplicity-expanded ballot list, 0-based; empty
// means reversal. cand_perm maps candidate i to cand_perm[i-1]; empty means
// identity.
AxiomVerdict check_symmetry(const Rule& rule, const Profile& a,
                            const std::vector<int>& voter_perm = {},
                            const std::vector<int>& cand_perm = {});

// Ranking rules: both consistency clauses over all committee pairs — weak
// agreement persists in a+b, and weak plus one side strict forces strict.
// Choice rules: if winners(a) and winners(b) intersect, winners(a+b) must
// equal the intersection.
AxiomVerdict check_consistency(const Rule& rule, const Profile& a, const Profile& b);

// Ranking rules: W1 is ranked at least as high as W2 whenever nobody
// approves anyone in W2 \ W1. Choice rules: swapping an unapproved member of
// a winning committee for any non-member keeps it winning.
AxiomVerdict check_weak_efficiency(const Rule& rule, const Profile& a);

// Full efficiency (ranking rules only): W1 ⪰ W2 whenever every ballot has at
// least as many approved members in W1 as in W2.
AxiomVerdict check_efficiency(const Rule& rule, const Profile& a);

// Ranking rules: every pair strict in rule(b) must become strict in
// rule(a + n b) for some n ≥ 1. Decided exactly when the rule exposes
// additive lexicographic scores; probed up to n_max otherwise. Choice rules:
// disjoint winner sets must eventually collapse into b's winners.
AxiomVerdict check_continuity(const Rule& rule, const Profile& a, const Profile& b,
                              std::int64_t n_max = 64);

// On profiles approving every candidate at most once (with at least k
// approved), winners must be exactly the size-k subsets of the approved set.
AxiomVerdict check_disjoint_equality(const Rule& rule, const Profile& a);

// On party-list profiles, every tie-consistent selection of the min(p, k)
// heaviest parties must be covered by some winning committee.
AxiomVerdict check_disjoint_diversity(const Rule& rule, const Profile& a);

// On party-list profiles, every winner must honor each party's floor quota
// (capacity permitting).
AxiomVerdict check_lower_quota(const Rule& rule, const Profile& a);

// On party-list profiles, winners must be exactly the committees passing the
// pairwise divisor test.
AxiomVerdict check_dhondt(const Rule& rule, const Profile& a);

// --- Counterexample search ---------------------------------------------------

using RuleFactory = std::function<std::unique_ptr<Rule>(int m, int k)>;

// Searchable axiom tags: symmetry, consistency, weak-efficiency, efficiency,
// continuity, disjoint-equality, disjoint-diversity, lower-quota, dhondt.
const std::vector<std::string>& axiom_names();

// Sweeps the instance space given by cfg (m from 2, k from 1 up to the
// bounds; election sizes the factory rejects are skipped). Exhaustive mode
// visits canonical instances in a fixed order and reports the first witness,
// so reruns reproduce it; random mode draws cfg.samples seeded instances.
AxiomVerdict search_counterexample(const std::string& axiom, const std::string& rule_name,
                                   const RuleFactory& factory, const SearchConfig& cfg);
AxiomVerdict search_counterexample(const std::string& axiom, const std::string& rule_spec,
                                   const SearchConfig& cfg);

// --- Choice-rule constructions ----------------------------------------------

enum class AlphaKind { pav, cc };

// Canonical two-committee profiles: the pav kind sums, over every pair
// (c1, c2) crossing from W1 \ W2 to W2 \ W1, one ballot {c1, c2} plus a
// singleton ballot for every other member of W1 ∪ W2; the cc kind sums, over
// every bijection from W1 \ W2 to W2 \ W1, its matched-pair ballots plus
// singletons for W1 ∩ W2.
Profile alpha_profile(AlphaKind kind, CandidateSet w1, CandidateSet w2, int m);

// Whether some profile makes exactly {w1, w2} win. Rules whose counting
// function is equivalent to PAV's (or CC's) are verified through the matching
// alpha construction; other rules are searched within cfg. An exhausted
// search certifies refutation only for the searched space.
AxiomVerdict verify_two_nonimposition(const Rule& rule, CandidateSet w1, CandidateSet w2,
                                      const SearchConfig& cfg);

// Comparison induced on (w1, w2) by a choice rule via eventually-always
// membership of w1 (resp. w2) in winners(a + n·alpha). Requires
// winners(alpha) == {w1, w2}.
enum class InducedResult { w1_weakly_preferred, w2_weakly_preferred, both, exhausted };
std::string to_string(InducedResult r);

struct InducedComparison {
  InducedResult result = InducedResult::exhausted;
  std::string detail;
  std::optional<std::int64_t> probe_start;  // black-box probes only
};

InducedComparison induced_comparison(const Rule& rule, const Profile& alpha,
                                     const Profile& a, CandidateSet w1, CandidateSet w2,
                                     std::int64_t n_max = 64);

}  // namespace abc
