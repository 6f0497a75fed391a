#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "abc/counting.hpp"
#include "abc/profile.hpp"
#include "abc/rational.hpp"

namespace abc {

enum class DivisorMethod { dhondt, sainte_lague };

// Iterative highest-ratio apportionment of k seats to parties with the given
// weights, respecting per-party seat capacities. Ratio ties branch
// exhaustively; the result is every reachable final seat vector, sorted.
// Divisors are s+1 (D'Hondt) and s+1/2 (Sainte-Lague).
std::vector<std::vector<int>> divisor_apportion(const std::vector<std::int64_t>& weights,
                                                const std::vector<int>& capacities, int k,
                                                DivisorMethod method);

struct ProportionalityCheck {
  bool proportional = false;
  std::string reason;  // set when not proportional
  // Violating party pair (indices into PartyListStructure::parties), when the
  // failure is a pairwise ratio condition.
  std::optional<std::pair<int, int>> violating_pair;
};

// D'Hondt proportionality of one committee on a list-structured profile: for
// every party pair (i, j), either j's list is fully seated, or i holds no
// seat, or w_i / s_i >= w_j / (s_j + 1). A committee using unapproved
// (remainder) candidates qualifies only if every approved candidate is
// seated; wasting a seat while approved candidates remain is disqualifying.
ProportionalityCheck dhondt_proportional(CandidateSet committee,
                                         const PartyListStructure& structure, int k);

struct DhondtAudit {
  enum class Status { pass, fail, not_applicable } status;
  std::string detail;
  std::vector<CandidateSet> winners;
  std::vector<CandidateSet> proportional;  // committees passing the seat test
  std::optional<CandidateSet> witness;     // first committee separating the two
};

// Whether the rule's winners on a list-structured profile are exactly the
// D'Hondt-proportional committees.
DhondtAudit audit_dhondt_proportionality(const CountingFunction& f, const Profile& profile,
                                         int k);

struct QuotaReport {
  struct PartyLine {
    std::int64_t weight = 0;
    int capacity = 0;       // list size
    int floor_quota = 0;    // floor(k * weight / total voters)
    bool satisfied = true;  // across all winners
  };
  bool pass = true;
  std::vector<PartyLine> parties;
  std::optional<CandidateSet> witness_committee;
  std::optional<int> witness_party;
  std::string detail;
};

// Lower quota: every winner must give each party at least its floor quota of
// seats unless the party's list is too short to reach it (capacity strictly
// below the quota).
QuotaReport lower_quota_report(const std::vector<CandidateSet>& winners,
                               const PartyListStructure& structure, int k);

// Per-seat growth band implied by lower quota: for applicable cells (x >= 2,
// x <= y, m >= y + k - x + 1), after normalization,
//   f(x-1,y) + u/x * (k-x)/(k-x+1)  <=  f(x,y)  <=  f(x-1,y) + u/(x-1)
// with u the normalized unit f(1,1). Violations pinpoint quota failures.
struct BandViolation {
  int x = 0, y = 0;
  bool lower = false;  // which bound is violated
  Rational bound;
  Rational actual;
};
struct BandReport {
  bool in_scope = true;  // false when the normalized unit is zero
  std::string detail;
  std::vector<BandViolation> violations;
};
BandReport seat_growth_band(const CountingFunction& f, int k, int m);

// Party-list profile family behind the band: a large party with a list of y
// candidates facing k-x+1 single-candidate parties. The lower variant gives
// the large party weight x*(k-x+1) and the small parties weight k-x each
// (requires x < k); the upper variant uses weights x-1 and 1. A rule breaking
// the band at (x, y) breaks the lower quota on the matching profile.
Profile band_witness_profile(int x, int y, int k, int m, bool lower);

// Winning seat vectors of a counting rule on a list-structured profile,
// computed over seat vectors directly (exact; avoids enumerating committees).
// Vector entries follow structure.parties order; unfilled seats spill into
// remainder candidates only when every list is saturated or scores allow it.
struct SeatVectorResult {
  Rational score;
  std::vector<std::vector<int>> vectors;  // sorted; one entry per party
};
SeatVectorResult winning_seat_vectors(const CountingFunction& f,
                                      const PartyListStructure& structure, int k);

}  // namespace abc
