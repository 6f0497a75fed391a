#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "abc/counting.hpp"
#include "abc/profile.hpp"
#include "abc/winners.hpp"

namespace abc {

// A committee rule fixed to an election size (m, k). Ranking rules order all
// size-k committees into tiers; choice rules only produce a winner set.
class Rule {
 public:
  Rule(std::string name, int m, int k) : name_(std::move(name)), m_(m), k_(k) {}
  virtual ~Rule() = default;

  const std::string& name() const { return name_; }
  int num_candidates() const { return m_; }
  int committee_size() const { return k_; }

  virtual bool has_ranking() const { return true; }
  // Ordered partition of all size-k committees, best tier first; committees
  // within a tier in set_lex_less order.
  virtual std::vector<std::vector<CandidateSet>> rank(const Profile& profile) const = 0;
  virtual std::vector<CandidateSet> winners(const Profile& profile) const;

  // Additive score components compared lexicographically, when the rule is
  // built from them. Contract: lex_score(W, A + B) = lex_score(W, A) +
  // lex_score(W, B) componentwise, which lets continuity be decided exactly.
  virtual int lex_arity() const { return 0; }
  virtual std::vector<Rational> lex_score(CandidateSet, const Profile&) const;

  virtual const CountingFunction* counting() const { return nullptr; }

 private:
  std::string name_;
  int m_;
  int k_;
};

class CountingRule : public Rule {
 public:
  CountingRule(CountingFunction f, EnumerationLimits limits = {});
  std::vector<std::vector<CandidateSet>> rank(const Profile& profile) const override;
  int lex_arity() const override { return 1; }
  std::vector<Rational> lex_score(CandidateSet w, const Profile& profile) const override;
  const CountingFunction* counting() const override { return &f_; }

 private:
  CountingFunction f_;
  EnumerationLimits limits_;
};

// Additive scorer used by the lexicographic rules below.
class LinearScorer {
 public:
  virtual ~LinearScorer() = default;
  virtual Rational score(CandidateSet w, const Profile& profile) const = 0;
};

// Ranks committees by a tuple of additive scores compared lexicographically.
class LexScoreRule : public Rule {
 public:
  LexScoreRule(std::string name, int m, int k,
               std::vector<std::shared_ptr<const LinearScorer>> parts,
               EnumerationLimits limits = {});
  std::vector<std::vector<CandidateSet>> rank(const Profile& profile) const override;
  int lex_arity() const override { return static_cast<int>(parts_.size()); }
  std::vector<Rational> lex_score(CandidateSet w, const Profile& profile) const override;

 private:
  std::vector<std::shared_ptr<const LinearScorer>> parts_;
  EnumerationLimits limits_;
};

// Applies a counting rule on list-structured profiles (disjoint ballots, no
// empty ballots) and declares every committee tied elsewhere. Not score-based
// as a whole, so continuity probes fall back to bounded search.
class ListOnlyCountingRule : public Rule {
 public:
  ListOnlyCountingRule(std::string name, CountingFunction f, EnumerationLimits limits = {});
  std::vector<std::vector<CandidateSet>> rank(const Profile& profile) const override;

 private:
  CountingFunction f_;
  EnumerationLimits limits_;
};

// Greedy sequential rule for seat weights; a choice rule (no ranking).
class SequentialRule : public Rule {
 public:
  SequentialRule(std::string name, int m, int k, std::vector<Rational> seat_weights,
                 bool reverse, EnumerationLimits limits = {});
  bool has_ranking() const override { return false; }
  std::vector<std::vector<CandidateSet>> rank(const Profile& profile) const override;
  std::vector<CandidateSet> winners(const Profile& profile) const override;

 private:
  std::vector<Rational> seat_weights_;
  bool reverse_;
  EnumerationLimits limits_;
};

// Gallery of deliberately broken rules, each violating exactly one audited
// property at desk scale (see the axiom tests).
std::unique_ptr<Rule> doubled_candidate_av_rule(int m, int k, int doubled_candidate);
std::unique_ptr<Rule> pav_av_tiebreak_rule(int m, int k);
std::unique_ptr<Rule> partylist_pav_else_trivial_rule(int m, int k);
std::unique_ptr<Rule> reversed_av_rule(int m, int k);

// Parses a rule name into an instance for the given election size. Accepts:
// av, pav, cc, sav, ct:<t>, thiele:<w1,w2,...>, sainte-lague, square-root,
// seqpav, revseqpav, doubled-av:<c>, pav-av-tiebreak,
// partylist-pav-else-trivial, reversed-av.
std::unique_ptr<Rule> make_rule(const std::string& spec, int m, int k,
                                const EnumerationLimits& limits = {});

// Counting-function spec names (the subset of the above that are counting
// rules). Throws on unknown names.
CountingFunction make_counting(const std::string& spec, int m, int k);
bool is_counting_spec(const std::string& spec);

}  // namespace abc
