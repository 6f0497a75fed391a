#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abc/axioms.hpp"
#include "abc/counting.hpp"
#include "abc/profile.hpp"

namespace abc {

// A parse failure with the 1-based line it occurred on; what() includes it.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, int line);
  int line() const { return line_; }

 private:
  int line_;
};

// Contents of a profile file: the canonical profile, the committee size from
// the `k:` header, and the optional candidate names (size m when present).
struct ProfileFile {
  Profile profile = Profile::empty(1);
  int committee_size = 0;
  std::vector<std::string> names;
};

// Text format:
//   # comments run to end of line
//   candidates: 8
//   k: 4
//   names: alice bob ...        (optional, exactly m labels)
//   75: 1 2 3 4                 (multiplicity, then approved candidates)
//   25: 5 6 7 8
// Duplicate ballot lines merge by summing multiplicities; `1:` is one empty
// ballot. Throws ParseError with the offending line number.
ProfileFile parse_profile_text(const std::string& text);
std::string serialize_profile(const Profile& profile, int committee_size,
                              const std::vector<std::string>& names = {});

// Text format for counting functions:
//   m: 3
//   k: 2
//   base: pav                   (optional named rule providing defaults)
//   2 2 11/10                   (x y value; overrides the base entry)
// Without a base, unspecified entries are zero. Non-monotone tables are
// accepted and flagged on the resulting function.
CountingFunction parse_counting_text(const std::string& text);
std::string serialize_counting(const CountingFunction& f);

// Committee notation used throughout reports: "{1,3,4}" (or "{}").
CandidateSet parse_committee(const std::string& text, int num_candidates);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// A complete audit invocation plus its outcome, serializable as a JSON
// document (schema 1) that carries everything needed to replay it.
struct AuditReport {
  std::string mode;       // "search" or "instance"
  std::string axiom;
  std::string rule_spec;  // the CLI rule spec, e.g. "pav" or "file:rule.cf"
  AxiomVerdict verdict;
  SearchConfig config;                     // search-mode parameters
  std::vector<Profile> instance_profiles;  // instance mode: a (and b)
  int instance_k = 0;                      // committee size for those profiles
  std::int64_t instance_n_max = 64;
  double seconds = 0;
};

std::string report_to_text(const AuditReport& report);
AuditReport report_from_text(const std::string& text);

// Canonical rendering of just the status and witness, used to decide whether
// a replayed audit reproduced the original byte for byte.
std::string report_status_witness_text(const AuditReport& report);

}  // namespace abc
