#include "abc/rules.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace abc {

std::vector<CandidateSet> Rule::winners(const Profile& profile) const {
  const auto tiers = rank(profile);
  if (tiers.empty()) throw std::logic_error("rank produced no tiers");
  return tiers.front();
}

std::vector<Rational> Rule::lex_score(CandidateSet, const Profile&) const {
  throw std::logic_error("rule '" + name() + "' has no score decomposition");
}

CountingRule::CountingRule(CountingFunction f, EnumerationLimits limits)
    : Rule(f.name(), f.num_candidates(), f.committee_size()),
      f_(std::move(f)),
      limits_(limits) {}

std::vector<std::vector<CandidateSet>> CountingRule::rank(const Profile& profile) const {
  const auto tiers = enumerate_tiers(f_, profile, committee_size(), limits_);
  std::vector<std::vector<CandidateSet>> out;
  out.reserve(tiers.tiers.size());
  for (const auto& t : tiers.tiers) out.push_back(t.committees);
  return out;
}

std::vector<Rational> CountingRule::lex_score(CandidateSet w, const Profile& profile) const {
  return {score(f_, w, profile)};
}

LexScoreRule::LexScoreRule(std::string name, int m, int k,
                           std::vector<std::shared_ptr<const LinearScorer>> parts,
                           EnumerationLimits limits)
    : Rule(std::move(name), m, k), parts_(std::move(parts)), limits_(limits) {
  if (parts_.empty()) throw std::invalid_argument("need at least one score component");
}

std::vector<Rational> LexScoreRule::lex_score(CandidateSet w, const Profile& profile) const {
  std::vector<Rational> out;
  out.reserve(parts_.size());
  for (const auto& p : parts_) out.push_back(p->score(w, profile));
  return out;
}

std::vector<std::vector<CandidateSet>> LexScoreRule::rank(const Profile& profile) const {
  const auto committees = all_committees(num_candidates(), committee_size());
  std::map<std::vector<Rational>, std::vector<CandidateSet>, std::greater<>> buckets;
  for (CandidateSet w : committees) buckets[lex_score(w, profile)].push_back(w);
  std::vector<std::vector<CandidateSet>> out;
  out.reserve(buckets.size());
  for (auto& [s, ws] : buckets) out.push_back(std::move(ws));
  return out;
}

ListOnlyCountingRule::ListOnlyCountingRule(std::string name, CountingFunction f,
                                           EnumerationLimits limits)
    : Rule(std::move(name), f.num_candidates(), f.committee_size()),
      f_(std::move(f)),
      limits_(limits) {}

std::vector<std::vector<CandidateSet>> ListOnlyCountingRule::rank(
    const Profile& profile) const {
  const auto structure = detect_party_list(profile);
  if (structure.has_value() && structure->empty_voters == 0 && !profile.is_empty()) {
    const auto tiers = enumerate_tiers(f_, profile, committee_size(), limits_);
    std::vector<std::vector<CandidateSet>> out;
    for (const auto& t : tiers.tiers) out.push_back(t.committees);
    return out;
  }
  return {all_committees(num_candidates(), committee_size())};
}

SequentialRule::SequentialRule(std::string name, int m, int k,
                               std::vector<Rational> seat_weights, bool reverse,
                               EnumerationLimits limits)
    : Rule(std::move(name), m, k),
      seat_weights_(std::move(seat_weights)),
      reverse_(reverse),
      limits_(limits) {}

std::vector<std::vector<CandidateSet>> SequentialRule::rank(const Profile&) const {
  throw std::logic_error("sequential rules are choice rules; no ranking is defined");
}

std::vector<CandidateSet> SequentialRule::winners(const Profile& profile) const {
  return reverse_ ? reverse_sequential_thiele(seat_weights_, profile, committee_size(), limits_)
                  : sequential_thiele(seat_weights_, profile, committee_size(), limits_);
}

namespace {

class CountingScorer : public LinearScorer {
 public:
  explicit CountingScorer(CountingFunction f) : f_(std::move(f)) {}
  Rational score(CandidateSet w, const Profile& profile) const override {
    return abc::score(f_, w, profile);
  }

 private:
  CountingFunction f_;
};

// Approval score plus one extra point per voter whose approved committee
// members include the favoured candidate.
class DoubledCandidateScorer : public LinearScorer {
 public:
  DoubledCandidateScorer(int m, int k, int candidate)
      : f_(av_counting(m, k)), bit_(CandidateSet{1} << (candidate - 1)) {}
  Rational score(CandidateSet w, const Profile& profile) const override {
    Rational total = abc::score(f_, w, profile);
    if (w & bit_) {
      std::int64_t extra = 0;
      for (const auto& line : profile.lines())
        if (line.ballot & bit_) extra += line.multiplicity;
      total += extra;
    }
    return total;
  }

 private:
  CountingFunction f_;
  CandidateSet bit_;
};

}  // namespace

std::unique_ptr<Rule> doubled_candidate_av_rule(int m, int k, int doubled_candidate) {
  if (doubled_candidate < 1 || doubled_candidate > m)
    throw std::invalid_argument("doubled candidate out of range");
  std::vector<std::shared_ptr<const LinearScorer>> parts{
      std::make_shared<DoubledCandidateScorer>(m, k, doubled_candidate)};
  return std::make_unique<LexScoreRule>("doubled-av:" + std::to_string(doubled_candidate), m, k,
                                        std::move(parts));
}

std::unique_ptr<Rule> pav_av_tiebreak_rule(int m, int k) {
  std::vector<std::shared_ptr<const LinearScorer>> parts{
      std::make_shared<CountingScorer>(pav_counting(m, k)),
      std::make_shared<CountingScorer>(av_counting(m, k))};
  return std::make_unique<LexScoreRule>("pav-av-tiebreak", m, k, std::move(parts));
}

std::unique_ptr<Rule> partylist_pav_else_trivial_rule(int m, int k) {
  return std::make_unique<ListOnlyCountingRule>("partylist-pav-else-trivial",
                                                pav_counting(m, k));
}

std::unique_ptr<Rule> reversed_av_rule(int m, int k) {
  std::vector<std::vector<Rational>> t(k + 1, std::vector<Rational>(m + 1, Rational(0)));
  for (int x = 0; x <= k; ++x)
    for (int y = 0; y <= m; ++y) t[x][y] = -x;
  return std::make_unique<CountingRule>(
      table_counting(m, k, "reversed-av", std::move(t), /*allow_nonmonotone=*/true));
}

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

bool is_counting_spec(const std::string& spec) {
  if (spec == "av" || spec == "pav" || spec == "cc" || spec == "sav" ||
      spec == "sainte-lague" || spec == "square-root")
    return true;
  return spec.rfind("ct:", 0) == 0 || spec.rfind("thiele:", 0) == 0;
}

CountingFunction make_counting(const std::string& spec, int m, int k) {
  if (spec == "av") return av_counting(m, k);
  if (spec == "pav") return pav_counting(m, k);
  if (spec == "cc") return cc_counting(m, k);
  if (spec == "sav") return sav_counting(m, k);
  if (spec == "sainte-lague") return sainte_lague_counting(m, k);
  if (spec == "square-root") return square_root_counting(m, k);
  if (spec.rfind("ct:", 0) == 0) {
    int threshold = 0;
    try {
      threshold = std::stoi(spec.substr(3));
    } catch (...) {
      throw std::invalid_argument("bad threshold in rule spec '" + spec + "'");
    }
    return threshold_counting(m, k, threshold);
  }
  if (spec.rfind("thiele:", 0) == 0) {
    std::vector<Rational> weights;
    for (const auto& part : split(spec.substr(7), ',')) {
      const auto w = parse_fraction(part);
      if (!w) throw std::invalid_argument("bad weight '" + part + "' in rule spec");
      weights.push_back(*w);
    }
    return thiele_counting(m, k, weights, spec);
  }
  throw std::invalid_argument("unknown counting rule '" + spec + "'");
}

std::unique_ptr<Rule> make_rule(const std::string& spec, int m, int k,
                                const EnumerationLimits& limits) {
  if (is_counting_spec(spec))
    return std::make_unique<CountingRule>(make_counting(spec, m, k), limits);
  if (spec == "seqpav")
    return std::make_unique<SequentialRule>(spec, m, k, pav_seat_weights(m), false, limits);
  if (spec == "revseqpav")
    return std::make_unique<SequentialRule>(spec, m, k, pav_seat_weights(m), true, limits);
  if (spec == "pav-av-tiebreak") return pav_av_tiebreak_rule(m, k);
  if (spec == "partylist-pav-else-trivial") return partylist_pav_else_trivial_rule(m, k);
  if (spec == "reversed-av") return reversed_av_rule(m, k);
  if (spec.rfind("doubled-av:", 0) == 0) {
    int candidate = 0;
    try {
      candidate = std::stoi(spec.substr(11));
    } catch (...) {
      throw std::invalid_argument("bad candidate in rule spec '" + spec + "'");
    }
    return doubled_candidate_av_rule(m, k, candidate);
  }
  throw std::invalid_argument("unknown rule '" + spec + "'");
}

}  // namespace abc
