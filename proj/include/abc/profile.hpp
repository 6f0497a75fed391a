#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace abc {

// Candidates are 1-based indices 1..m (m <= 63). A set of candidates is a
// bitmask with bit (i-1) representing candidate i.
using CandidateSet = std::uint64_t;

constexpr int kMaxCandidates = 63;

CandidateSet set_from_indices(const std::vector<int>& indices);
std::vector<int> indices_from_set(CandidateSet s);
int set_size(CandidateSet s);
// "{1,3,4}" with ascending indices; "{}" for the empty set.
std::string set_string(CandidateSet s);

// Orders candidate sets by their ascending index sequences (so {1} < {1,2} <
// {1,3} < {2}; the empty set comes first). Used wherever sets are listed.
bool set_lex_less(CandidateSet a, CandidateSet b);

struct BallotLine {
  CandidateSet ballot = 0;
  std::int64_t multiplicity = 0;
  bool operator==(const BallotLine&) const = default;
};

// An anonymous approval profile: a multiset of ballots over candidates 1..m.
// Construction canonicalizes (ballots sorted by set_lex_less, equal ballots
// merged), so equality is multiset equality. Empty ballots are legal; an
// entirely empty profile is representable because ballot restrictions can
// produce one.
class Profile {
 public:
  Profile(int num_candidates, std::vector<BallotLine> lines);
  static Profile empty(int num_candidates) { return Profile(num_candidates, {}); }

  int num_candidates() const { return m_; }
  std::int64_t num_voters() const { return voters_; }
  bool is_empty() const { return voters_ == 0; }
  const std::vector<BallotLine>& lines() const { return lines_; }
  CandidateSet approved_union() const;

  Profile scaled(std::int64_t n) const;                   // n >= 1
  Profile permuted(const std::vector<int>& perm) const;   // perm[i-1] = sigma(i)
  Profile restricted_bounded(int l) const;                // keep |ballot| <= l
  Profile restricted_regular(int l) const;                // keep |ballot| == l

  bool operator==(const Profile&) const = default;

 private:
  int m_;
  std::vector<BallotLine> lines_;
  std::int64_t voters_;
};

Profile operator+(const Profile& a, const Profile& b);

struct Party {
  std::int64_t weight = 0;  // number of voters approving exactly this list
  CandidateSet candidates = 0;
  bool operator==(const Party&) const = default;
};

// Parties sorted by descending weight, ties by set_lex_less on candidates.
// remainder holds candidates approved by nobody; empty_voters counts voters
// with an empty ballot (such voters belong to no party).
struct PartyListStructure {
  int num_candidates = 0;
  std::vector<Party> parties;
  CandidateSet remainder = 0;
  std::int64_t empty_voters = 0;

  std::int64_t total_weight() const;
  CandidateSet approved_union() const;
};

// Succeeds iff the distinct nonempty ballots are pairwise disjoint.
std::optional<PartyListStructure> detect_party_list(const Profile& profile);

// Builds the profile of a party-list structure (weight_i voters approving
// exactly party i's list, plus empty_voters empty ballots).
Profile party_list_profile(const PartyListStructure& structure);

}  // namespace abc
