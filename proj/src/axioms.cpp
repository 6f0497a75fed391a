#include "abc/axioms.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <utility>

#include "abc/apportionment.hpp"
#include "abc/search.hpp"
#include "abc/winners.hpp"

namespace abc {

namespace {

constexpr std::int64_t kExpansionCap = 1'000'000;

CandidateSet candidate_bit(int c) { return CandidateSet{1} << (c - 1); }

CandidateSet permute_set(CandidateSet s, const std::vector<int>& perm) {
  CandidateSet out = 0;
  for (int c : indices_from_set(s)) out |= candidate_bit(perm[c - 1]);
  return out;
}

bool is_permutation_1m(const std::vector<int>& perm, int m) {
  if (static_cast<int>(perm.size()) != m) return false;
  std::vector<bool> seen(m + 1, false);
  for (int v : perm) {
    if (v < 1 || v > m || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

AxiomWitness make_witness(const Rule& rule) {
  AxiomWitness w;
  w.committee_size = rule.committee_size();
  return w;
}

AxiomVerdict instance_verdict(std::string axiom, const Rule& rule) {
  AxiomVerdict v;
  v.axiom = std::move(axiom);
  v.rule = rule.name();
  v.log.instances = 1;
  return v;
}

void require_same_universe(const Rule& rule, const Profile& p) {
  if (p.num_candidates() != rule.num_candidates())
    throw std::invalid_argument("profile and rule disagree on the number of candidates");
}

int committee_position(const std::vector<CandidateSet>& all, CandidateSet w) {
  auto it = std::lower_bound(all.begin(), all.end(), w, set_lex_less);
  if (it == all.end() || *it != w)
    throw std::logic_error("committee missing from the ranked universe");
  return static_cast<int>(it - all.begin());
}

// 0-based tier index per committee, aligned with `all` (lex order).
std::vector<int> tier_index_table(const Rule& rule, const Profile& p,
                                  const std::vector<CandidateSet>& all) {
  std::vector<int> out(all.size(), -1);
  const auto tiers = rule.rank(p);
  for (std::size_t t = 0; t < tiers.size(); ++t)
    for (CandidateSet w : tiers[t]) out[committee_position(all, w)] = static_cast<int>(t);
  for (int idx : out)
    if (idx < 0) throw std::logic_error("rule ranking does not cover every committee");
  return out;
}

bool committee_member(const std::vector<CandidateSet>& sorted, CandidateSet w) {
  auto it = std::lower_bound(sorted.begin(), sorted.end(), w, set_lex_less);
  return it != sorted.end() && *it == w;
}

std::vector<CandidateSet> winner_intersection(const std::vector<CandidateSet>& a,
                                              const std::vector<CandidateSet>& b) {
  std::vector<CandidateSet> out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out),
                        set_lex_less);
  return out;
}

std::string committee_list_string(const std::vector<CandidateSet>& cs) {
  std::string out = "[";
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (i) out += ", ";
    out += set_string(cs[i]);
  }
  return out + "]";
}

// --- lexicographic score helpers --------------------------------------------

std::vector<Rational> vector_diff(const std::vector<Rational>& a,
                                  const std::vector<Rational>& b) {
  std::vector<Rational> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

bool lex_positive(const std::vector<Rational>& v) {
  for (const Rational& x : v) {
    if (x > 0) return true;
    if (x < 0) return false;
  }
  return false;
}

std::int64_t ceil_to_int64(const Rational& t) {
  BigInt num = numerator(t);
  BigInt den = denominator(t);  // canonical: always positive
  BigInt q = num / den;         // truncates toward zero
  if (num % den != 0 && num > 0) ++q;
  if (q > BigInt(std::numeric_limits<std::int64_t>::max() / 4) ||
      q < BigInt(std::numeric_limits<std::int64_t>::min() / 4))
    throw CapacityError("replication threshold out of range");
  return q.convert_to<std::int64_t>();
}

// Smallest n >= 1 with alpha + n*beta lexicographically positive, given beta
// lexicographically positive; nullopt when no n works (the gap in front of
// beta's leading component is negative and never moves).
std::optional<std::int64_t> minimal_replication(const std::vector<Rational>& alpha,
                                                const std::vector<Rational>& beta) {
  std::size_t lead = 0;
  while (lead < beta.size() && beta[lead] == 0) ++lead;
  for (std::size_t q = 0; q < lead; ++q) {
    if (alpha[q] > 0) return 1;
    if (alpha[q] < 0) return std::nullopt;
  }
  const Rational threshold = -alpha[lead] / beta[lead];
  const std::int64_t pivot = ceil_to_int64(threshold);
  std::vector<std::int64_t> candidates{1, pivot - 1, pivot, pivot + 1};
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  for (std::int64_t n : candidates) {
    if (n < 1) continue;
    std::vector<Rational> at(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) at[i] = alpha[i] + Rational(n) * beta[i];
    if (lex_positive(at)) return n;
  }
  throw std::logic_error("replication threshold search failed");
}

}  // namespace

std::string SearchConfig::describe() const {
  std::ostringstream os;
  os << "m<=" << max_m << " k<=" << max_k << " voters<=" << max_voters;
  if (max_ballot_multiplicity > 0) os << " mult<=" << max_ballot_multiplicity;
  os << " party-weight<=" << max_party_weight;
  if (mode == SearchMode::exhaustive)
    os << " mode=exhaustive";
  else
    os << " mode=random(seed=" << seed << ",samples=" << samples << ")";
  os << " n-max=" << continuity_n_max;
  return os.str();
}

std::string to_string(AxiomStatus status) {
  switch (status) {
    case AxiomStatus::pass: return "pass";
    case AxiomStatus::fail: return "fail";
    case AxiomStatus::not_applicable: return "not-applicable";
    case AxiomStatus::exhausted: return "exhausted";
  }
  return "unknown";
}

std::string to_string(InducedResult r) {
  switch (r) {
    case InducedResult::w1_weakly_preferred: return "w1-weakly-preferred";
    case InducedResult::w2_weakly_preferred: return "w2-weakly-preferred";
    case InducedResult::both: return "both";
    case InducedResult::exhausted: return "exhausted";
  }
  return "unknown";
}

// --- check_symmetry ----------------------------------------------------------

AxiomVerdict check_symmetry(const Rule& rule, const Profile& a,
                            const std::vector<int>& voter_perm,
                            const std::vector<int>& cand_perm) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("symmetry", rule);
  const int m = rule.num_candidates();

  // Anonymity: outputs must be unchanged after rebuilding the profile from a
  // reordered list of individual ballots.
  if (a.num_voters() > kExpansionCap)
    throw CapacityError("profile too large to expand voter by voter");
  std::vector<CandidateSet> expanded;
  expanded.reserve(static_cast<std::size_t>(a.num_voters()));
  for (const BallotLine& line : a.lines())
    for (std::int64_t i = 0; i < line.multiplicity; ++i) expanded.push_back(line.ballot);
  std::vector<int> order;
  if (voter_perm.empty()) {
    order.resize(expanded.size());
    for (std::size_t i = 0; i < order.size(); ++i)
      order[i] = static_cast<int>(order.size() - 1 - i);
  } else {
    if (voter_perm.size() != expanded.size())
      throw std::invalid_argument("voter permutation must cover every ballot");
    std::vector<bool> seen(expanded.size(), false);
    for (int i : voter_perm) {
      if (i < 0 || i >= static_cast<int>(expanded.size()) || seen[i])
        throw std::invalid_argument("invalid voter permutation");
      seen[i] = true;
    }
    order = voter_perm;
  }
  std::vector<BallotLine> shuffled;
  shuffled.reserve(order.size());
  for (int i : order) shuffled.push_back({expanded[static_cast<std::size_t>(i)], 1});
  const Profile rebuilt(m, std::move(shuffled));
  bool anonymous = rebuilt == a;
  if (anonymous) {
    if (rule.has_ranking())
      anonymous = rule.rank(rebuilt) == rule.rank(a);
    else
      anonymous = rule.winners(rebuilt) == rule.winners(a);
  }
  if (!anonymous) {
    v.status = AxiomStatus::fail;
    v.detail = "anonymity violated: a voter-shuffled rebuild changes the outcome";
    AxiomWitness w = make_witness(rule);
    w.profiles = {a, rebuilt};
    w.note = "rebuilt from a reordered ballot list";
    v.witness = std::move(w);
    return v;
  }

  // Neutrality: relabeling candidates must relabel the outcome.
  if (!cand_perm.empty()) {
    if (!is_permutation_1m(cand_perm, m))
      throw std::invalid_argument("candidate permutation must be a bijection on 1..m");
    const Profile b = a.permuted(cand_perm);
    if (rule.has_ranking()) {
      auto tiers_a = rule.rank(a);
      const auto tiers_b = rule.rank(b);
      for (auto& tier : tiers_a) {
        for (CandidateSet& w : tier) w = permute_set(w, cand_perm);
        std::sort(tier.begin(), tier.end(), set_lex_less);
      }
      if (tiers_a != tiers_b) {
        std::size_t t = 0;
        while (t < std::min(tiers_a.size(), tiers_b.size()) && tiers_a[t] == tiers_b[t]) ++t;
        v.status = AxiomStatus::fail;
        std::ostringstream os;
        os << "neutrality violated: tier " << (t + 1)
           << " after relabeling is " << committee_list_string(t < tiers_a.size() ? tiers_a[t] : std::vector<CandidateSet>{})
           << " but the relabeled profile yields "
           << committee_list_string(t < tiers_b.size() ? tiers_b[t] : std::vector<CandidateSet>{});
        v.detail = os.str();
        AxiomWitness w = make_witness(rule);
        w.profiles = {a};
        w.permutation = cand_perm;
        if (t < tiers_a.size()) w.committees = tiers_a[t];
        w.note = "relabeled tiers diverge from the tiers of the relabeled profile";
        v.witness = std::move(w);
        return v;
      }
    } else {
      auto wa = rule.winners(a);
      for (CandidateSet& w : wa) w = permute_set(w, cand_perm);
      std::sort(wa.begin(), wa.end(), set_lex_less);
      const auto wb = rule.winners(b);
      if (wa != wb) {
        v.status = AxiomStatus::fail;
        v.detail = "neutrality violated: relabeled winners are " + committee_list_string(wa) +
                   " but the relabeled profile elects " + committee_list_string(wb);
        AxiomWitness w = make_witness(rule);
        w.profiles = {a};
        w.permutation = cand_perm;
        w.committees = wb;
        v.witness = std::move(w);
        return v;
      }
    }
  }
  v.detail = "anonymity and neutrality hold on this instance";
  return v;
}

// --- check_consistency -------------------------------------------------------

AxiomVerdict check_consistency(const Rule& rule, const Profile& a, const Profile& b) {
  require_same_universe(rule, a);
  require_same_universe(rule, b);
  AxiomVerdict v = instance_verdict("consistency", rule);
  const Profile sum = a + b;
  if (rule.has_ranking()) {
    const auto all = all_committees(rule.num_candidates(), rule.committee_size());
    const auto ia = tier_index_table(rule, a, all);
    const auto ib = tier_index_table(rule, b, all);
    const auto is = tier_index_table(rule, sum, all);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        const bool weak_a = ia[i] <= ia[j], strict_a = ia[i] < ia[j];
        const bool weak_b = ib[i] <= ib[j], strict_b = ib[i] < ib[j];
        if (!(weak_a && weak_b)) continue;
        const bool weak_s = is[i] <= is[j], strict_s = is[i] < is[j];
        std::string clause;
        if (!weak_s)
          clause = "both electorates weakly prefer W1, but their union does not";
        else if ((strict_a || strict_b) && !strict_s)
          clause = "one electorate is strict and the other weak, but their union is not strict";
        if (!clause.empty()) {
          v.status = AxiomStatus::fail;
          v.detail = "consistency violated: " + clause;
          AxiomWitness w = make_witness(rule);
          w.profiles = {a, b};
          w.committees = {all[i], all[j]};
          w.note = "W1=" + set_string(all[i]) + " W2=" + set_string(all[j]) + "; " + clause;
          v.witness = std::move(w);
          return v;
        }
      }
    }
    v.detail = "both consistency clauses hold for every committee pair";
  } else {
    const auto ra = rule.winners(a);
    const auto rb = rule.winners(b);
    const auto inter = winner_intersection(ra, rb);
    if (inter.empty()) {
      v.detail = "winner sets are disjoint (vacuous)";
      return v;
    }
    const auto rs = rule.winners(sum);
    if (rs != inter) {
      v.status = AxiomStatus::fail;
      v.detail = "consistency violated: joint winners " + committee_list_string(rs) +
                 " differ from the intersection " + committee_list_string(inter);
      AxiomWitness w = make_witness(rule);
      w.profiles = {a, b};
      w.committees = rs;
      w.note = "winners(a)=" + committee_list_string(ra) + " winners(b)=" +
               committee_list_string(rb);
      v.witness = std::move(w);
      return v;
    }
    v.detail = "joint winners equal the intersection of the separate winners";
  }
  return v;
}

// --- efficiency checks -------------------------------------------------------

AxiomVerdict check_weak_efficiency(const Rule& rule, const Profile& a) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("weak-efficiency", rule);
  const CandidateSet approved = a.approved_union();
  if (rule.has_ranking()) {
    const auto all = all_committees(rule.num_candidates(), rule.committee_size());
    const auto ia = tier_index_table(rule, a, all);
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        if ((all[j] & ~all[i] & approved) != 0) continue;
        if (ia[i] > ia[j]) {
          v.status = AxiomStatus::fail;
          v.detail = "weak efficiency violated: " + set_string(all[j]) +
                     " adds only unapproved candidates over " + set_string(all[i]) +
                     " yet is ranked strictly higher";
          AxiomWitness w = make_witness(rule);
          w.profiles = {a};
          w.committees = {all[i], all[j]};
          v.witness = std::move(w);
          return v;
        }
      }
    }
    v.detail = "every committee dominates its unapproved alternatives";
  } else {
    const auto winners = rule.winners(a);
    const int m = rule.num_candidates();
    for (CandidateSet w : winners) {
      for (int c : indices_from_set(w & ~approved)) {
        for (int c2 = 1; c2 <= m; ++c2) {
          if (w & candidate_bit(c2)) continue;
          const CandidateSet swapped = (w & ~candidate_bit(c)) | candidate_bit(c2);
          if (!committee_member(winners, swapped)) {
            v.status = AxiomStatus::fail;
            v.detail = "weak efficiency violated: swapping unapproved candidate " +
                       std::to_string(c) + " for " + std::to_string(c2) +
                       " drops the committee from the winners";
            AxiomWitness wit = make_witness(rule);
            wit.profiles = {a};
            wit.committees = {w, swapped};
            v.witness = std::move(wit);
            return v;
          }
        }
      }
    }
    v.detail = "winners are closed under swapping unapproved members";
  }
  return v;
}

AxiomVerdict check_efficiency(const Rule& rule, const Profile& a) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("efficiency", rule);
  if (!rule.has_ranking()) {
    v.status = AxiomStatus::not_applicable;
    v.detail = "efficiency compares rank positions; the rule only selects winners";
    return v;
  }
  const auto all = all_committees(rule.num_candidates(), rule.committee_size());
  const auto ia = tier_index_table(rule, a, all);
  for (std::size_t i = 0; i < all.size(); ++i) {
    for (std::size_t j = 0; j < all.size(); ++j) {
      if (i == j) continue;
      bool dominates = true;
      for (const BallotLine& line : a.lines()) {
        if (set_size(line.ballot & all[i]) < set_size(line.ballot & all[j])) {
          dominates = false;
          break;
        }
      }
      if (dominates && ia[i] > ia[j]) {
        v.status = AxiomStatus::fail;
        v.detail = "efficiency violated: every ballot has at least as many members in " +
                   set_string(all[i]) + " as in " + set_string(all[j]) +
                   ", which is ranked strictly higher";
        AxiomWitness w = make_witness(rule);
        w.profiles = {a};
        w.committees = {all[i], all[j]};
        v.witness = std::move(w);
        return v;
      }
    }
  }
  v.detail = "ballot-wise domination never contradicts the ranking";
  return v;
}

// --- check_continuity --------------------------------------------------------

AxiomVerdict check_continuity(const Rule& rule, const Profile& a, const Profile& b,
                              std::int64_t n_max) {
  require_same_universe(rule, a);
  require_same_universe(rule, b);
  if (n_max < 1) throw std::invalid_argument("n_max must be at least 1");
  AxiomVerdict v = instance_verdict("continuity", rule);

  if (!rule.has_ranking()) {
    const auto ra = rule.winners(a);
    const auto rb = rule.winners(b);
    if (!winner_intersection(ra, rb).empty()) {
      v.detail = "winner sets intersect (vacuous)";
      return v;
    }
    for (std::int64_t n = 1; n <= n_max; ++n) {
      const auto rn = rule.winners(a + b.scaled(n));
      if (std::all_of(rn.begin(), rn.end(),
                      [&](CandidateSet w) { return committee_member(rb, w); })) {
        v.detail = "replication factor " + std::to_string(n) +
                   " pulls the joint winners into b's winners";
        AxiomWitness w = make_witness(rule);
        w.profiles = {a, b};
        w.n = n;
        v.witness = std::move(w);
        return v;
      }
    }
    v.status = AxiomStatus::exhausted;
    v.log.inconclusive = 1;
    v.detail = "no replication factor up to " + std::to_string(n_max) +
               " pulled the joint winners into b's winners";
    AxiomWitness w = make_witness(rule);
    w.profiles = {a, b};
    w.n = n_max;
    v.witness = std::move(w);
    return v;
  }

  const auto all = all_committees(rule.num_candidates(), rule.committee_size());

  if (rule.lex_arity() > 0) {
    // Scores are additive per component, so the gap at a + n b is linear in n
    // and the quantifier is decided exactly.
    std::vector<std::vector<Rational>> lex_a(all.size()), lex_b(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      lex_a[i] = rule.lex_score(all[i], a);
      lex_b[i] = rule.lex_score(all[i], b);
    }
    std::int64_t worst_n = 0;
    bool any_pair = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      for (std::size_t j = 0; j < all.size(); ++j) {
        if (i == j) continue;
        const auto beta = vector_diff(lex_b[i], lex_b[j]);
        if (!lex_positive(beta)) continue;  // W1 not strictly ahead at b
        any_pair = true;
        const auto alpha = vector_diff(lex_a[i], lex_a[j]);
        const auto n = minimal_replication(alpha, beta);
        if (!n) {
          v.status = AxiomStatus::fail;
          v.detail = "continuity violated: " + set_string(all[i]) + " beats " +
                     set_string(all[j]) +
                     " at b, but an earlier score component keeps it strictly behind at"
                     " a + n b for every n";
          AxiomWitness w = make_witness(rule);
          w.profiles = {a, b};
          w.committees = {all[i], all[j]};
          w.note = "certified analytically; no replication factor exists";
          v.witness = std::move(w);
          return v;
        }
        worst_n = std::max(worst_n, *n);
      }
    }
    if (!any_pair) {
      v.detail = "no strict pairs at b (vacuous)";
    } else {
      v.detail = "every strict pair recovers; largest replication factor needed is " +
                 std::to_string(worst_n);
      AxiomWitness w = make_witness(rule);
      w.n = worst_n;
      v.witness = std::move(w);
    }
    return v;
  }

  // Black-box ranking rule: probe replications up to n_max.
  const auto ib = tier_index_table(rule, b, all);
  std::vector<std::pair<std::size_t, std::size_t>> open;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = 0; j < all.size(); ++j)
      if (i != j && ib[i] < ib[j]) open.emplace_back(i, j);
  if (open.empty()) {
    v.detail = "no strict pairs at b (vacuous)";
    return v;
  }
  std::int64_t worst_n = 0;
  for (std::int64_t n = 1; n <= n_max && !open.empty(); ++n) {
    const auto in = tier_index_table(rule, a + b.scaled(n), all);
    const auto settled = [&](const std::pair<std::size_t, std::size_t>& pr) {
      return in[pr.first] < in[pr.second];
    };
    if (std::any_of(open.begin(), open.end(), settled)) worst_n = n;
    open.erase(std::remove_if(open.begin(), open.end(), settled), open.end());
  }
  if (open.empty()) {
    v.detail = "every strict pair recovers; largest replication factor needed is " +
               std::to_string(worst_n);
    AxiomWitness w = make_witness(rule);
    w.n = worst_n;
    v.witness = std::move(w);
    return v;
  }
  v.status = AxiomStatus::exhausted;
  v.log.inconclusive = static_cast<std::int64_t>(open.size());
  v.detail = std::to_string(open.size()) + " strict pair(s) not recovered within n <= " +
             std::to_string(n_max) + " (black-box probe; not a certified failure)";
  AxiomWitness w = make_witness(rule);
  w.profiles = {a, b};
  w.committees = {all[open.front().first], all[open.front().second]};
  w.n = n_max;
  v.witness = std::move(w);
  return v;
}

// --- party-structure axioms --------------------------------------------------

AxiomVerdict check_disjoint_equality(const Rule& rule, const Profile& a) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("disjoint-equality", rule);
  CandidateSet approved = 0;
  for (const BallotLine& line : a.lines()) {
    if (line.ballot == 0) continue;
    if (line.multiplicity > 1 || (line.ballot & approved) != 0) {
      v.status = AxiomStatus::not_applicable;
      v.detail = "a candidate is approved more than once";
      return v;
    }
    approved |= line.ballot;
  }
  const int k = rule.committee_size();
  if (set_size(approved) < k) {
    v.status = AxiomStatus::not_applicable;
    v.detail = "fewer than k candidates are approved";
    return v;
  }
  std::vector<CandidateSet> expected;
  for (CandidateSet w : all_committees(rule.num_candidates(), k))
    if ((w & ~approved) == 0) expected.push_back(w);
  const auto winners = rule.winners(a);
  if (winners != expected) {
    v.status = AxiomStatus::fail;
    v.detail = "disjoint equality violated: winners " + committee_list_string(winners) +
               " differ from all size-k subsets of the approved set " +
               committee_list_string(expected);
    AxiomWitness w = make_witness(rule);
    w.profiles = {a};
    w.committees = winners;
    w.note = "approved set " + set_string(approved);
    v.witness = std::move(w);
    return v;
  }
  v.detail = "winners are exactly the committees of approved candidates";
  return v;
}

AxiomVerdict check_disjoint_diversity(const Rule& rule, const Profile& a) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("disjoint-diversity", rule);
  const auto s = detect_party_list(a);
  if (!s || s->parties.empty() || s->empty_voters > 0) {
    v.status = AxiomStatus::not_applicable;
    v.detail = "not a party-list profile";
    return v;
  }
  const int p = static_cast<int>(s->parties.size());
  const int q = std::min(p, rule.committee_size());
  const auto winners = rule.winners(a);
  // Parties are sorted by descending weight; a valid selection takes every
  // party heavier than the q-th weight and fills up among those tied with it.
  const std::int64_t boundary = s->parties[static_cast<std::size_t>(q - 1)].weight;
  int fixed = 0;
  while (fixed < q && s->parties[static_cast<std::size_t>(fixed)].weight > boundary) ++fixed;
  std::vector<int> tied;
  for (int i = fixed; i < p; ++i)
    if (s->parties[static_cast<std::size_t>(i)].weight == boundary) tied.push_back(i);
  const int need = q - fixed;
  std::vector<bool> pick(tied.size(), false);
  std::fill(pick.begin(), pick.begin() + need, true);
  std::int64_t variants = 0;
  do {
    ++variants;
    std::vector<int> selection;
    for (int i = 0; i < fixed; ++i) selection.push_back(i);
    for (std::size_t t = 0; t < tied.size(); ++t)
      if (pick[t]) selection.push_back(tied[t]);
    bool witnessed = false;
    for (CandidateSet w : winners) {
      bool covers = true;
      for (int idx : selection) {
        if ((w & s->parties[static_cast<std::size_t>(idx)].candidates) == 0) {
          covers = false;
          break;
        }
      }
      if (covers) {
        witnessed = true;
        break;
      }
    }
    if (!witnessed) {
      v.status = AxiomStatus::fail;
      std::string lists;
      for (int idx : selection) {
        if (!lists.empty()) lists += ", ";
        lists += set_string(s->parties[static_cast<std::size_t>(idx)].candidates);
      }
      v.detail = "disjoint diversity violated: no winner intersects each of the " +
                 std::to_string(q) + " heaviest parties {" + lists + "}";
      AxiomWitness w = make_witness(rule);
      w.profiles = {a};
      w.committees = winners;
      w.note = "unrepresented selection: " + lists;
      v.witness = std::move(w);
      return v;
    }
  } while (std::prev_permutation(pick.begin(), pick.end()));
  v.detail = "all " + std::to_string(variants) + " heaviest-party selections are covered";
  return v;
}

AxiomVerdict check_lower_quota(const Rule& rule, const Profile& a) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("lower-quota", rule);
  const auto s = detect_party_list(a);
  if (!s || s->parties.empty() || s->empty_voters > 0) {
    v.status = AxiomStatus::not_applicable;
    v.detail = "not a party-list profile";
    return v;
  }
  const auto winners = rule.winners(a);
  const QuotaReport report = lower_quota_report(winners, *s, rule.committee_size());
  if (!report.pass) {
    v.status = AxiomStatus::fail;
    v.detail = "lower quota violated: " + report.detail;
    AxiomWitness w = make_witness(rule);
    w.profiles = {a};
    if (report.witness_committee) w.committees = {*report.witness_committee};
    w.note = report.detail;
    v.witness = std::move(w);
    return v;
  }
  v.detail = "every winner honors each party's floor quota";
  return v;
}

AxiomVerdict check_dhondt(const Rule& rule, const Profile& a) {
  require_same_universe(rule, a);
  AxiomVerdict v = instance_verdict("dhondt", rule);
  const auto s = detect_party_list(a);
  if (!s || s->parties.empty() || s->empty_voters > 0) {
    v.status = AxiomStatus::not_applicable;
    v.detail = "not a party-list profile";
    return v;
  }
  const int k = rule.committee_size();
  const auto winners = rule.winners(a);
  std::vector<CandidateSet> proportional;
  for (CandidateSet w : all_committees(rule.num_candidates(), k))
    if (dhondt_proportional(w, *s, k).proportional) proportional.push_back(w);
  if (winners != proportional) {
    v.status = AxiomStatus::fail;
    CandidateSet culprit = 0;
    std::string direction;
    for (CandidateSet w : winners) {
      if (!committee_member(proportional, w)) {
        culprit = w;
        direction = set_string(w) + " wins but fails the divisor test: " +
                    dhondt_proportional(w, *s, k).reason;
        break;
      }
    }
    if (direction.empty()) {
      for (CandidateSet w : proportional) {
        if (!committee_member(winners, w)) {
          culprit = w;
          direction = set_string(w) + " passes the divisor test but loses";
          break;
        }
      }
    }
    v.detail = "divisor proportionality violated: " + direction;
    AxiomWitness w = make_witness(rule);
    w.profiles = {a};
    w.committees = {culprit};
    w.note = direction;
    v.witness = std::move(w);
    return v;
  }
  v.detail = "winners are exactly the " + std::to_string(proportional.size()) +
             " proportional committees";
  return v;
}

// --- counterexample search ---------------------------------------------------

const std::vector<std::string>& axiom_names() {
  static const std::vector<std::string> names = {
      "symmetry",          "consistency",        "weak-efficiency",
      "efficiency",        "continuity",         "disjoint-equality",
      "disjoint-diversity", "lower-quota",       "dhondt"};
  return names;
}

namespace {

enum class InstanceSpace { profiles, profile_pairs, disjoint, party_lists };

InstanceSpace space_for(const std::string& axiom) {
  if (axiom == "symmetry" || axiom == "weak-efficiency" || axiom == "efficiency")
    return InstanceSpace::profiles;
  if (axiom == "consistency" || axiom == "continuity") return InstanceSpace::profile_pairs;
  if (axiom == "disjoint-equality") return InstanceSpace::disjoint;
  return InstanceSpace::party_lists;
}

PartyListStructure random_party_list(RandomSource& rng, int m, std::int64_t max_party_weight,
                                     std::int64_t max_total, bool unit_weights) {
  for (;;) {
    const int p = static_cast<int>(rng.uniform(1, m));
    std::vector<CandidateSet> blocks(static_cast<std::size_t>(p), 0);
    for (int c = 1; c <= m; ++c) {
      const auto slot = rng.uniform(0, p);
      if (slot > 0) blocks[static_cast<std::size_t>(slot - 1)] |= candidate_bit(c);
    }
    blocks.erase(std::remove(blocks.begin(), blocks.end(), CandidateSet{0}), blocks.end());
    if (blocks.empty()) continue;
    const std::int64_t weight_cap =
        unit_weights ? 1 : (max_party_weight > 0 ? max_party_weight : 8);
    std::vector<Party> parties;
    std::int64_t total = 0;
    for (CandidateSet block : blocks) {
      const std::int64_t w = weight_cap == 1 ? 1 : rng.uniform(1, weight_cap);
      parties.push_back({w, block});
      total += w;
    }
    if (max_total > 0 && total > max_total) continue;
    PartyListStructure s;
    s.num_candidates = m;
    s.parties = std::move(parties);
    std::sort(s.parties.begin(), s.parties.end(), [](const Party& x, const Party& y) {
      if (x.weight != y.weight) return x.weight > y.weight;
      return set_lex_less(x.candidates, y.candidates);
    });
    CandidateSet used = 0;
    for (const Party& party : s.parties) used |= party.candidates;
    s.remainder = ((CandidateSet{1} << m) - 1) & ~used;
    return s;
  }
}

struct SearchDriver {
  const std::string& axiom;
  const SearchConfig& cfg;
  AxiomVerdict& verdict;
  std::optional<AxiomWitness> first_unconfirmed;
  std::string first_unconfirmed_note;

  // Returns false when the search should stop (counterexample found).
  bool consume(AxiomVerdict sub) {
    ++verdict.log.instances;
    if (verdict.log.instances > cfg.max_instances)
      throw CapacityError("search exceeded the configured instance budget");
    if (sub.status == AxiomStatus::fail) {
      verdict.status = AxiomStatus::fail;
      verdict.detail = sub.detail;
      verdict.witness = std::move(sub.witness);
      return false;
    }
    if (sub.status == AxiomStatus::exhausted) {
      ++verdict.log.inconclusive;
      if (!first_unconfirmed) {
        first_unconfirmed = std::move(sub.witness);
        first_unconfirmed_note = sub.detail;
      }
    }
    return true;
  }

  AxiomVerdict run_instance(const Rule& rule, const Profile& a,
                            const std::vector<int>& voter_perm,
                            const std::vector<int>& cand_perm) const {
    if (axiom == "symmetry") return check_symmetry(rule, a, voter_perm, cand_perm);
    if (axiom == "weak-efficiency") return check_weak_efficiency(rule, a);
    if (axiom == "efficiency") return check_efficiency(rule, a);
    if (axiom == "disjoint-equality") return check_disjoint_equality(rule, a);
    if (axiom == "disjoint-diversity") return check_disjoint_diversity(rule, a);
    if (axiom == "lower-quota") return check_lower_quota(rule, a);
    if (axiom == "dhondt") return check_dhondt(rule, a);
    throw std::logic_error("axiom does not take single-profile instances");
  }
};

}  // namespace

AxiomVerdict search_counterexample(const std::string& axiom, const std::string& rule_name,
                                   const RuleFactory& factory, const SearchConfig& cfg) {
  const auto& names = axiom_names();
  if (std::find(names.begin(), names.end(), axiom) == names.end())
    throw std::invalid_argument("unknown axiom: " + axiom);
  if (cfg.max_m < 2) throw std::invalid_argument("max_m must be at least 2");
  if (cfg.max_k < 1) throw std::invalid_argument("max_k must be at least 1");

  AxiomVerdict verdict;
  verdict.axiom = axiom;
  verdict.rule = rule_name;
  verdict.status = AxiomStatus::pass;
  verdict.log.bounds = cfg.describe();
  if (cfg.mode == SearchMode::random) verdict.log.seed = cfg.seed;

  SearchDriver driver{axiom, cfg, verdict, std::nullopt, {}};
  const InstanceSpace space = space_for(axiom);
  const bool needs_voter_bound =
      space == InstanceSpace::profiles || space == InstanceSpace::profile_pairs;
  if (needs_voter_bound && cfg.max_voters < 1)
    throw std::invalid_argument("this axiom searches voter profiles; set max_voters");

  if (cfg.mode == SearchMode::exhaustive) {
    bool stopped = false;
    for (int m = 2; m <= cfg.max_m && !stopped; ++m) {
      for (int k = 1; k <= std::min(cfg.max_k, m - 1) && !stopped; ++k) {
        std::unique_ptr<Rule> rule;
        try {
          rule = factory(m, k);
        } catch (const std::invalid_argument&) {
          continue;  // the rule does not exist at this election size
        }
        switch (space) {
          case InstanceSpace::profiles: {
            const auto perms =
                axiom == "symmetry" ? all_permutations(m) : std::vector<std::vector<int>>{};
            stopped = !for_each_profile(
                m, cfg.max_voters,
                [&](const Profile& p) {
                  if (axiom == "symmetry") {
                    for (const auto& sigma : perms)
                      if (!driver.consume(check_symmetry(*rule, p, {}, sigma))) return false;
                    return true;
                  }
                  return driver.consume(driver.run_instance(*rule, p, {}, {}));
                },
                cfg.max_ballot_multiplicity);
            break;
          }
          case InstanceSpace::profile_pairs: {
            std::vector<Profile> pool;
            for_each_profile(
                m, cfg.max_voters,
                [&](const Profile& p) {
                  pool.push_back(p);
                  const auto n = static_cast<std::int64_t>(pool.size());
                  if (n * n > cfg.max_instances)
                    throw CapacityError("profile-pair space exceeds the instance budget");
                  return true;
                },
                cfg.max_ballot_multiplicity);
            const bool ordered = axiom == "continuity";
            for (std::size_t i = 0; i < pool.size() && !stopped; ++i) {
              for (std::size_t j = ordered ? 0 : i; j < pool.size() && !stopped; ++j) {
                AxiomVerdict sub =
                    axiom == "consistency"
                        ? check_consistency(*rule, pool[i], pool[j])
                        : check_continuity(*rule, pool[i], pool[j], cfg.continuity_n_max);
                stopped = !driver.consume(std::move(sub));
              }
            }
            break;
          }
          case InstanceSpace::disjoint: {
            stopped = !for_each_disjoint_profile(m, [&](const Profile& p) {
              if (cfg.max_voters > 0 && p.num_voters() > cfg.max_voters) return true;
              return driver.consume(check_disjoint_equality(*rule, p));
            });
            break;
          }
          case InstanceSpace::party_lists: {
            stopped = !for_each_party_list(
                m, cfg.max_party_weight, cfg.max_voters,
                [&](const PartyListStructure& s) {
                  return driver.consume(
                      driver.run_instance(*rule, party_list_profile(s), {}, {}));
                });
            break;
          }
        }
      }
    }
  } else {
    RandomSource rng(cfg.seed);
    std::map<std::pair<int, int>, std::unique_ptr<Rule>> cache;
    int consecutive_rejections = 0;
    while (verdict.log.instances < cfg.samples) {
      const int m = static_cast<int>(rng.uniform(2, cfg.max_m));
      const int k = static_cast<int>(rng.uniform(1, std::min(cfg.max_k, m - 1)));
      auto& slot = cache[{m, k}];
      if (!slot) {
        try {
          slot = factory(m, k);
          consecutive_rejections = 0;
        } catch (const std::invalid_argument&) {
          cache.erase({m, k});
          if (++consecutive_rejections > 10000)
            throw std::invalid_argument(
                "the rule rejects every election size within the configured bounds");
          continue;
        }
      }
      const Rule& rule = *slot;
      bool keep_going = true;
      switch (space) {
        case InstanceSpace::profiles: {
          const Profile p = random_profile(rng, m, cfg.max_voters);
          std::vector<int> voter_perm(static_cast<std::size_t>(p.num_voters()));
          for (std::size_t i = 0; i < voter_perm.size(); ++i)
            voter_perm[i] = static_cast<int>(i);
          for (std::size_t i = voter_perm.size(); i > 1; --i)
            std::swap(voter_perm[i - 1],
                      voter_perm[static_cast<std::size_t>(rng.uniform(0, static_cast<std::int64_t>(i) - 1))]);
          const auto sigma = random_permutation(rng, m);
          if (axiom == "symmetry")
            keep_going = driver.consume(check_symmetry(rule, p, voter_perm, sigma));
          else
            keep_going = driver.consume(driver.run_instance(rule, p, {}, {}));
          break;
        }
        case InstanceSpace::profile_pairs: {
          const Profile a = random_profile(rng, m, cfg.max_voters);
          const Profile b = random_profile(rng, m, cfg.max_voters);
          keep_going = driver.consume(axiom == "consistency"
                                          ? check_consistency(rule, a, b)
                                          : check_continuity(rule, a, b,
                                                             cfg.continuity_n_max));
          break;
        }
        case InstanceSpace::disjoint: {
          const auto s = random_party_list(rng, m, 1, cfg.max_voters, true);
          keep_going = driver.consume(check_disjoint_equality(rule, party_list_profile(s)));
          break;
        }
        case InstanceSpace::party_lists: {
          const auto s =
              random_party_list(rng, m, cfg.max_party_weight, cfg.max_voters, false);
          keep_going =
              driver.consume(driver.run_instance(rule, party_list_profile(s), {}, {}));
          break;
        }
      }
      if (!keep_going) break;
    }
  }

  if (verdict.status == AxiomStatus::pass && verdict.log.inconclusive > 0) {
    verdict.status = AxiomStatus::exhausted;
    verdict.detail = "no counterexample found, but " +
                     std::to_string(verdict.log.inconclusive) +
                     " instance(s) stayed unconfirmed under the bounded probe; first: " +
                     driver.first_unconfirmed_note;
    verdict.witness = std::move(driver.first_unconfirmed);
  } else if (verdict.status == AxiomStatus::pass) {
    verdict.detail = "no counterexample in " + std::to_string(verdict.log.instances) +
                     " instance(s)";
  }
  return verdict;
}

AxiomVerdict search_counterexample(const std::string& axiom, const std::string& rule_spec,
                                   const SearchConfig& cfg) {
  return search_counterexample(
      axiom, rule_spec,
      [&rule_spec](int m, int k) { return make_rule(rule_spec, m, k); }, cfg);
}

// --- choice-rule constructions ----------------------------------------------

Profile alpha_profile(AlphaKind kind, CandidateSet w1, CandidateSet w2, int m) {
  if (m < 1 || m > kMaxCandidates) throw std::invalid_argument("invalid candidate count");
  const CandidateSet universe = (CandidateSet{1} << m) - 1;
  if ((w1 & ~universe) != 0 || (w2 & ~universe) != 0)
    throw std::invalid_argument("committee uses candidates outside 1..m");
  if (w1 == w2) throw std::invalid_argument("the two committees must differ");
  if (set_size(w1) != set_size(w2) || set_size(w1) == 0)
    throw std::invalid_argument("committees must share a positive size");

  const CandidateSet only1 = w1 & ~w2;
  const CandidateSet only2 = w2 & ~w1;
  const CandidateSet shared = w1 & w2;
  std::vector<BallotLine> lines;
  if (kind == AlphaKind::pav) {
    const CandidateSet uni = w1 | w2;
    for (int c1 : indices_from_set(only1)) {
      for (int c2 : indices_from_set(only2)) {
        const CandidateSet pair = candidate_bit(c1) | candidate_bit(c2);
        lines.push_back({pair, 1});
        for (int c : indices_from_set(uni & ~pair)) lines.push_back({candidate_bit(c), 1});
      }
    }
  } else {
    const auto left = indices_from_set(only1);
    auto right = indices_from_set(only2);
    do {
      for (std::size_t i = 0; i < left.size(); ++i)
        lines.push_back({candidate_bit(left[i]) | candidate_bit(right[i]), 1});
      for (int c : indices_from_set(shared)) lines.push_back({candidate_bit(c), 1});
    } while (std::next_permutation(right.begin(), right.end()));
  }
  return Profile(m, std::move(lines));
}

AxiomVerdict verify_two_nonimposition(const Rule& rule, CandidateSet w1, CandidateSet w2,
                                      const SearchConfig& cfg) {
  const int m = rule.num_candidates();
  const int k = rule.committee_size();
  if (set_size(w1) != k || set_size(w2) != k || w1 == w2)
    throw std::invalid_argument("expected two distinct committees of the rule's size");

  AxiomVerdict v;
  v.axiom = "2-nonimposition";
  v.rule = rule.name();
  v.log.bounds = cfg.describe();
  std::vector<CandidateSet> target{w1, w2};
  std::sort(target.begin(), target.end(), set_lex_less);

  if (const CountingFunction* f = rule.counting()) {
    const std::pair<AlphaKind, CountingFunction> references[] = {
        {AlphaKind::pav, pav_counting(m, k)}, {AlphaKind::cc, cc_counting(m, k)}};
    for (const auto& [kind, reference] : references) {
      if (equivalent(*f, reference).kind != EquivalenceVerdict::Kind::yes) continue;
      const Profile alpha = alpha_profile(kind, w1, w2, m);
      const auto winners = rule.winners(alpha);
      v.log.instances = 1;
      AxiomWitness w = make_witness(rule);
      w.profiles = {alpha};
      w.committees = target;
      if (winners == target) {
        v.status = AxiomStatus::pass;
        v.detail = "the two-committee construction elects exactly this pair";
        w.note = kind == AlphaKind::pav ? "pairwise construction" : "matching construction";
      } else {
        v.status = AxiomStatus::fail;
        v.detail = "the two-committee construction elects " + committee_list_string(winners) +
                   " instead of the pair";
        w.note = "construction output mismatch";
      }
      v.witness = std::move(w);
      return v;
    }
  }

  std::optional<Profile> found;
  if (cfg.mode == SearchMode::exhaustive) {
    for_each_profile(
        m, cfg.max_voters,
        [&](const Profile& p) {
          ++v.log.instances;
          if (v.log.instances > cfg.max_instances)
            throw CapacityError("search exceeded the configured instance budget");
          if (rule.winners(p) == target) {
            found = p;
            return false;
          }
          return true;
        },
        cfg.max_ballot_multiplicity);
  } else {
    v.log.seed = cfg.seed;
    RandomSource rng(cfg.seed);
    while (v.log.instances < cfg.samples) {
      const Profile p = random_profile(rng, m, cfg.max_voters);
      ++v.log.instances;
      if (rule.winners(p) == target) {
        found = p;
        break;
      }
    }
  }
  if (found) {
    v.status = AxiomStatus::pass;
    v.detail = "found a profile electing exactly this pair";
    AxiomWitness w = make_witness(rule);
    w.profiles = {*found};
    w.committees = target;
    w.note = "found by search";
    v.witness = std::move(w);
  } else {
    v.status = AxiomStatus::exhausted;
    v.detail = "refuted-within-bounds: no profile in the searched space elects exactly " +
               committee_list_string(target);
  }
  return v;
}

InducedComparison induced_comparison(const Rule& rule, const Profile& alpha,
                                     const Profile& a, CandidateSet w1, CandidateSet w2,
                                     std::int64_t n_max) {
  require_same_universe(rule, alpha);
  require_same_universe(rule, a);
  std::vector<CandidateSet> target{w1, w2};
  std::sort(target.begin(), target.end(), set_lex_less);
  const auto alpha_winners = rule.winners(alpha);
  if (alpha_winners != target)
    throw std::invalid_argument(
        "alpha precondition failed: winners(alpha) = " +
        committee_list_string(alpha_winners) + ", expected " + committee_list_string(target));

  InducedComparison out;
  if (rule.has_ranking() && rule.lex_arity() > 0) {
    // In a + n*alpha each score component is linear in n, so the eventual
    // order compares, per component, the alpha part first and the a part as
    // its tie-break. The maximal committees under that interleaved key are
    // exactly those that stay winning for all large n.
    const auto all = all_committees(rule.num_candidates(), rule.committee_size());
    std::vector<std::vector<Rational>> keys(all.size());
    for (std::size_t i = 0; i < all.size(); ++i) {
      const auto salpha = rule.lex_score(all[i], alpha);
      const auto sa = rule.lex_score(all[i], a);
      keys[i].reserve(salpha.size() * 2);
      for (std::size_t c = 0; c < salpha.size(); ++c) {
        keys[i].push_back(salpha[c]);
        keys[i].push_back(sa[c]);
      }
    }
    std::size_t best = 0;
    for (std::size_t i = 1; i < all.size(); ++i)
      if (std::lexicographical_compare(keys[best].begin(), keys[best].end(), keys[i].begin(),
                                       keys[i].end()))
        best = i;
    bool has1 = false, has2 = false;
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (keys[i] != keys[best]) continue;
      if (all[i] == w1) has1 = true;
      if (all[i] == w2) has2 = true;
    }
    out.detail = "decided analytically from score asymptotics";
    if (has1 && has2)
      out.result = InducedResult::both;
    else if (has1)
      out.result = InducedResult::w1_weakly_preferred;
    else if (has2)
      out.result = InducedResult::w2_weakly_preferred;
    else {
      out.result = InducedResult::exhausted;
      out.detail = "neither committee stays winning asymptotically";
    }
    return out;
  }

  constexpr std::int64_t kWindow = 4;
  bool all1 = true, all2 = true;
  for (std::int64_t n = n_max; n <= n_max + kWindow; ++n) {
    const auto winners = rule.winners(a + alpha.scaled(n));
    all1 = all1 && committee_member(winners, w1);
    all2 = all2 && committee_member(winners, w2);
    if (!all1 && !all2) break;
  }
  out.probe_start = n_max;
  out.detail = "probed n = " + std::to_string(n_max) + ".." + std::to_string(n_max + kWindow);
  if (all1 && all2)
    out.result = InducedResult::both;
  else if (all1)
    out.result = InducedResult::w1_weakly_preferred;
  else if (all2)
    out.result = InducedResult::w2_weakly_preferred;
  else {
    out.result = InducedResult::exhausted;
    out.detail += "; membership unstable within the window";
  }
  return out;
}

}  // namespace abc
