#include "abc/profile.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace abc {

CandidateSet set_from_indices(const std::vector<int>& indices) {
  CandidateSet s = 0;
  for (int i : indices) {
    if (i < 1 || i > kMaxCandidates)
      throw std::invalid_argument("candidate index out of range: " + std::to_string(i));
    s |= CandidateSet{1} << (i - 1);
  }
  return s;
}

std::vector<int> indices_from_set(CandidateSet s) {
  std::vector<int> out;
  while (s != 0) {
    const int bit = std::countr_zero(s);
    out.push_back(bit + 1);
    s &= s - 1;
  }
  return out;
}

int set_size(CandidateSet s) { return std::popcount(s); }

std::string set_string(CandidateSet s) {
  std::string out = "{";
  bool first = true;
  for (int i : indices_from_set(s)) {
    if (!first) out += ",";
    out += std::to_string(i);
    first = false;
  }
  return out + "}";
}

bool set_lex_less(CandidateSet a, CandidateSet b) {
  const auto va = indices_from_set(a);
  const auto vb = indices_from_set(b);
  return std::lexicographical_compare(va.begin(), va.end(), vb.begin(), vb.end());
}

Profile::Profile(int num_candidates, std::vector<BallotLine> lines) : m_(num_candidates) {
  if (m_ < 1 || m_ > kMaxCandidates)
    throw std::invalid_argument("candidate count must be in [1," +
                                std::to_string(kMaxCandidates) + "]");
  const CandidateSet universe = (m_ == kMaxCandidates) ? ~CandidateSet{0}
                                                       : (CandidateSet{1} << m_) - 1;
  for (const auto& line : lines) {
    if ((line.ballot & ~universe) != 0)
      throw std::invalid_argument("ballot mentions a candidate beyond " + std::to_string(m_));
    if (line.multiplicity < 1)
      throw std::invalid_argument("ballot multiplicity must be >= 1");
  }
  std::sort(lines.begin(), lines.end(), [](const BallotLine& a, const BallotLine& b) {
    return set_lex_less(a.ballot, b.ballot);
  });
  lines_.clear();
  for (const auto& line : lines) {
    if (!lines_.empty() && lines_.back().ballot == line.ballot)
      lines_.back().multiplicity += line.multiplicity;
    else
      lines_.push_back(line);
  }
  voters_ = 0;
  for (const auto& line : lines_) voters_ += line.multiplicity;
}

CandidateSet Profile::approved_union() const {
  CandidateSet u = 0;
  for (const auto& line : lines_) u |= line.ballot;
  return u;
}

Profile operator+(const Profile& a, const Profile& b) {
  if (a.num_candidates() != b.num_candidates())
    throw std::invalid_argument("profile addition requires a common candidate set");
  std::vector<BallotLine> lines = a.lines();
  lines.insert(lines.end(), b.lines().begin(), b.lines().end());
  return Profile(a.num_candidates(), std::move(lines));
}

Profile Profile::scaled(std::int64_t n) const {
  if (n < 1) throw std::invalid_argument("profile scale factor must be >= 1");
  std::vector<BallotLine> lines = lines_;
  for (auto& line : lines) line.multiplicity *= n;
  return Profile(m_, std::move(lines));
}

Profile Profile::permuted(const std::vector<int>& perm) const {
  if (static_cast<int>(perm.size()) != m_)
    throw std::invalid_argument("permutation must cover all candidates");
  std::vector<bool> seen(m_, false);
  for (int image : perm) {
    if (image < 1 || image > m_ || seen[image - 1])
      throw std::invalid_argument("not a permutation of 1..m");
    seen[image - 1] = true;
  }
  std::vector<BallotLine> lines;
  lines.reserve(lines_.size());
  for (const auto& line : lines_) {
    CandidateSet image = 0;
    for (int i : indices_from_set(line.ballot)) image |= CandidateSet{1} << (perm[i - 1] - 1);
    lines.push_back({image, line.multiplicity});
  }
  return Profile(m_, std::move(lines));
}

Profile Profile::restricted_bounded(int l) const {
  if (l < 0) throw std::invalid_argument("ballot size bound must be >= 0");
  std::vector<BallotLine> lines;
  for (const auto& line : lines_)
    if (set_size(line.ballot) <= l) lines.push_back(line);
  return Profile(m_, std::move(lines));
}

Profile Profile::restricted_regular(int l) const {
  if (l < 0) throw std::invalid_argument("ballot size bound must be >= 0");
  std::vector<BallotLine> lines;
  for (const auto& line : lines_)
    if (set_size(line.ballot) == l) lines.push_back(line);
  return Profile(m_, std::move(lines));
}

std::int64_t PartyListStructure::total_weight() const {
  std::int64_t t = 0;
  for (const auto& p : parties) t += p.weight;
  return t;
}

CandidateSet PartyListStructure::approved_union() const {
  CandidateSet u = 0;
  for (const auto& p : parties) u |= p.candidates;
  return u;
}

std::optional<PartyListStructure> detect_party_list(const Profile& profile) {
  PartyListStructure s;
  s.num_candidates = profile.num_candidates();
  CandidateSet used = 0;
  for (const auto& line : profile.lines()) {
    if (line.ballot == 0) {
      s.empty_voters += line.multiplicity;
      continue;
    }
    if ((line.ballot & used) != 0) return std::nullopt;  // overlapping lists
    used |= line.ballot;
    s.parties.push_back({line.multiplicity, line.ballot});
  }
  const CandidateSet universe = (profile.num_candidates() == kMaxCandidates)
                                    ? ~CandidateSet{0}
                                    : (CandidateSet{1} << profile.num_candidates()) - 1;
  s.remainder = universe & ~used;
  std::sort(s.parties.begin(), s.parties.end(), [](const Party& a, const Party& b) {
    if (a.weight != b.weight) return a.weight > b.weight;
    return set_lex_less(a.candidates, b.candidates);
  });
  return s;
}

Profile party_list_profile(const PartyListStructure& structure) {
  std::vector<BallotLine> lines;
  for (const auto& p : structure.parties) lines.push_back({p.candidates, p.weight});
  if (structure.empty_voters > 0) lines.push_back({0, structure.empty_voters});
  return Profile(structure.num_candidates, std::move(lines));
}

}  // namespace abc
