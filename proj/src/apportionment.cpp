#include "abc/apportionment.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "abc/winners.hpp"

namespace abc {

namespace {

// Compares w_a/(s_a + d) with w_b/(s_b + d) for divisor offsets d = 1 or 1/2
// via cross multiplication; doubling clears the half offset.
int compare_ratio(std::int64_t wa, int sa, std::int64_t wb, int sb, DivisorMethod method) {
  const int da = method == DivisorMethod::dhondt ? 2 * (sa + 1) : 2 * sa + 1;
  const int db = method == DivisorMethod::dhondt ? 2 * (sb + 1) : 2 * sb + 1;
  const __int128 lhs = static_cast<__int128>(wa) * db;
  const __int128 rhs = static_cast<__int128>(wb) * da;
  if (lhs < rhs) return -1;
  if (lhs > rhs) return 1;
  return 0;
}

}  // namespace

std::vector<std::vector<int>> divisor_apportion(const std::vector<std::int64_t>& weights,
                                                const std::vector<int>& capacities, int k,
                                                DivisorMethod method) {
  const int p = static_cast<int>(weights.size());
  if (p == 0) throw std::invalid_argument("no parties to apportion to");
  if (static_cast<int>(capacities.size()) != p)
    throw std::invalid_argument("weights and capacities must have equal length");
  if (k < 0) throw std::invalid_argument("seat count must be >= 0");
  std::int64_t room = 0;
  for (int i = 0; i < p; ++i) {
    if (weights[i] < 0) throw std::invalid_argument("party weights must be >= 0");
    if (capacities[i] < 0) throw std::invalid_argument("capacities must be >= 0");
    room += capacities[i];
  }
  if (room < k) throw std::invalid_argument("total capacity is below the seat count");

  std::set<std::vector<int>> frontier{std::vector<int>(p, 0)};
  for (int step = 0; step < k; ++step) {
    std::set<std::vector<int>> next;
    for (const auto& seats : frontier) {
      int best = -1;
      std::vector<int> arg;
      for (int i = 0; i < p; ++i) {
        if (seats[i] >= capacities[i]) continue;
        if (best == -1) {
          best = i;
          arg = {i};
          continue;
        }
        const int cmp = compare_ratio(weights[i], seats[i], weights[best], seats[best], method);
        if (cmp > 0) {
          best = i;
          arg = {i};
        } else if (cmp == 0) {
          arg.push_back(i);
        }
      }
      for (int i : arg) {
        auto branch = seats;
        ++branch[i];
        next.insert(std::move(branch));
      }
    }
    frontier = std::move(next);
  }
  return {frontier.begin(), frontier.end()};
}

ProportionalityCheck dhondt_proportional(CandidateSet committee,
                                         const PartyListStructure& structure, int k) {
  if (set_size(committee) != k)
    throw std::invalid_argument("committee size does not match k");
  ProportionalityCheck out;
  const CandidateSet approved = structure.approved_union();
  if ((committee & structure.remainder) != 0) {
    if ((approved & ~committee) != 0) {
      out.proportional = false;
      out.reason = "seats an unapproved candidate while approved candidates remain unseated";
      return out;
    }
    out.proportional = true;  // every approved candidate is seated
    return out;
  }
  const int p = static_cast<int>(structure.parties.size());
  for (int i = 0; i < p; ++i) {
    const auto& pi = structure.parties[i];
    const int si = set_size(committee & pi.candidates);
    if (si == 0) continue;  // party i holds no seat: nothing to justify
    for (int j = 0; j < p; ++j) {
      if (j == i) continue;
      const auto& pj = structure.parties[j];
      if ((pj.candidates & ~committee) == 0) continue;  // j fully seated
      const int sj = set_size(committee & pj.candidates);
      // Need w_i / s_i >= w_j / (s_j + 1).
      const __int128 lhs = static_cast<__int128>(pi.weight) * (sj + 1);
      const __int128 rhs = static_cast<__int128>(pj.weight) * si;
      if (lhs < rhs) {
        out.proportional = false;
        out.violating_pair = {i, j};
        out.reason = "party " + std::to_string(j + 1) + " (weight " +
                     std::to_string(pj.weight) + ", seats " + std::to_string(sj) +
                     ") outbids party " + std::to_string(i + 1) + " (weight " +
                     std::to_string(pi.weight) + ", seats " + std::to_string(si) + ")";
        return out;
      }
    }
  }
  out.proportional = true;
  return out;
}

DhondtAudit audit_dhondt_proportionality(const CountingFunction& f, const Profile& profile,
                                         int k) {
  DhondtAudit out{DhondtAudit::Status::not_applicable, "", {}, {}, std::nullopt};
  if (profile.is_empty()) {
    out.detail = "empty profile";
    return out;
  }
  const auto structure = detect_party_list(profile);
  if (!structure.has_value()) {
    out.detail = "profile is not list-structured";
    return out;
  }
  if (structure->empty_voters > 0) {
    out.detail = "profile contains empty ballots";
    return out;
  }
  const auto tiers = enumerate_tiers(f, profile, k);
  out.winners = tiers.tiers.front().committees;
  for (CandidateSet w : all_committees(profile.num_candidates(), k))
    if (dhondt_proportional(w, *structure, k).proportional) out.proportional.push_back(w);

  out.status = DhondtAudit::Status::pass;
  std::set<CandidateSet> winner_set(out.winners.begin(), out.winners.end());
  std::set<CandidateSet> prop_set(out.proportional.begin(), out.proportional.end());
  if (winner_set != prop_set) {
    out.status = DhondtAudit::Status::fail;
    for (CandidateSet w : out.winners)
      if (!prop_set.count(w)) {
        out.witness = w;
        out.detail = "winning committee " + set_string(w) + " is not proportional";
        break;
      }
    if (!out.witness)
      for (CandidateSet w : out.proportional)
        if (!winner_set.count(w)) {
          out.witness = w;
          out.detail = "proportional committee " + set_string(w) + " does not win";
          break;
        }
  }
  return out;
}

QuotaReport lower_quota_report(const std::vector<CandidateSet>& winners,
                               const PartyListStructure& structure, int k) {
  QuotaReport report;
  const std::int64_t voters = structure.total_weight() + structure.empty_voters;
  if (voters <= 0) throw std::invalid_argument("quota check needs at least one voter");
  for (const auto& party : structure.parties) {
    QuotaReport::PartyLine line;
    line.weight = party.weight;
    line.capacity = set_size(party.candidates);
    line.floor_quota = static_cast<int>((static_cast<std::int64_t>(k) * party.weight) / voters);
    report.parties.push_back(line);
  }
  for (CandidateSet w : winners) {
    for (std::size_t i = 0; i < structure.parties.size(); ++i) {
      auto& line = report.parties[i];
      const int seats = set_size(w & structure.parties[i].candidates);
      const bool escape = line.capacity < line.floor_quota;  // list too short
      if (seats < line.floor_quota && !escape) {
        line.satisfied = false;
        if (report.pass) {
          report.pass = false;
          report.witness_committee = w;
          report.witness_party = static_cast<int>(i);
          report.detail = "winner " + set_string(w) + " gives party " + std::to_string(i + 1) +
                          " only " + std::to_string(seats) + " of " +
                          std::to_string(line.floor_quota) + " quota seats";
        }
      }
    }
  }
  return report;
}

BandReport seat_growth_band(const CountingFunction& f, int k, int m) {
  if (k != f.committee_size() || m != f.num_candidates())
    throw std::invalid_argument("band parameters must match the counting function");
  BandReport report;
  const CountingFunction norm = normalize(f);
  const Rational unit = norm.value(1, 1);
  if (unit == 0) {
    report.in_scope = false;
    report.detail = "normalized unit f(1,1) is zero; the band does not apply";
    return report;
  }
  for (int x = 2; x <= k; ++x) {
    for (int y = x; y <= m - k + x - 1; ++y) {
      const Rational base = norm.value(x - 1, y);
      const Rational actual = norm.value(x, y);
      const Rational lower =
          base + unit / x * Rational(k - x, k - x + 1);
      const Rational upper = base + unit / (x - 1);
      if (actual < lower) report.violations.push_back({x, y, true, lower, actual});
      if (actual > upper) report.violations.push_back({x, y, false, upper, actual});
    }
  }
  return report;
}

Profile band_witness_profile(int x, int y, int k, int m, bool lower) {
  if (x < 2 || x > k) throw std::invalid_argument("band witness needs 2 <= x <= k");
  if (y < x) throw std::invalid_argument("band witness needs y >= x");
  if (m < y + k - x + 1)
    throw std::invalid_argument("band witness needs m >= y + k - x + 1");
  if (lower && x >= k)
    throw std::invalid_argument("the lower-bound family needs x < k");
  const std::int64_t big = lower ? static_cast<std::int64_t>(x) * (k - x + 1) : x - 1;
  const std::int64_t small = lower ? k - x : 1;
  std::vector<BallotLine> lines;
  CandidateSet list = 0;
  for (int c = 1; c <= y; ++c) list |= CandidateSet{1} << (c - 1);
  lines.push_back({list, big});
  for (int i = 0; i < k - x + 1; ++i)
    lines.push_back({CandidateSet{1} << (y + i), small});
  return Profile(m, std::move(lines));
}

namespace {

void seat_vectors_dfs(const CountingFunction& f, const PartyListStructure& structure, int k,
                      std::size_t index, int used, std::vector<int>& seats, Rational& acc,
                      SeatVectorResult& result, bool& have_best) {
  if (index == structure.parties.size()) {
    const int leftover = k - used;
    if (leftover > set_size(structure.remainder)) return;  // cannot fill the committee
    Rational total = acc;
    if (structure.empty_voters > 0)
      total += Rational(structure.empty_voters) * f.value(0, 0);
    if (!have_best || total > result.score) {
      result.score = total;
      result.vectors.clear();
      have_best = true;
    }
    if (total == result.score) result.vectors.push_back(seats);
    return;
  }
  const auto& party = structure.parties[index];
  const int capacity = set_size(party.candidates);
  for (int s = 0; s <= std::min(capacity, k - used); ++s) {
    seats.push_back(s);
    const Rational gain = Rational(party.weight) * f.value(s, capacity);
    acc += gain;
    seat_vectors_dfs(f, structure, k, index + 1, used + s, seats, acc, result, have_best);
    acc -= gain;
    seats.pop_back();
  }
}

}  // namespace

SeatVectorResult winning_seat_vectors(const CountingFunction& f,
                                      const PartyListStructure& structure, int k) {
  if (f.num_candidates() != structure.num_candidates)
    throw std::invalid_argument("structure and counting function disagree on m");
  if (k != f.committee_size())
    throw std::invalid_argument("committee size does not match the counting function's k");
  SeatVectorResult result;
  std::vector<int> seats;
  Rational acc = 0;
  bool have_best = false;
  seat_vectors_dfs(f, structure, k, 0, 0, seats, acc, result, have_best);
  if (!have_best) throw std::invalid_argument("no feasible seat vector for this k");
  std::sort(result.vectors.begin(), result.vectors.end());
  return result;
}

}  // namespace abc
