#include "abc/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "abc/rules.hpp"

namespace abc {

namespace {

using nlohmann::json;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string strip_comment(const std::string& s) {
  const std::size_t pos = s.find('#');
  return pos == std::string::npos ? s : s.substr(0, pos);
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream is(s);
  std::vector<std::string> out;
  std::string word;
  while (is >> word) out.push_back(word);
  return out;
}

std::int64_t parse_int(const std::string& word, const std::string& what, int line) {
  try {
    std::size_t used = 0;
    const long long v = std::stoll(word, &used);
    if (used != word.size()) throw std::invalid_argument(word);
    return v;
  } catch (const std::exception&) {
    throw ParseError("expected an integer for " + what + ", got '" + word + "'", line);
  }
}

}  // namespace

ParseError::ParseError(const std::string& message, int line)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

ProfileFile parse_profile_text(const std::string& text) {
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  int m = 0, k = 0;
  bool have_m = false, have_k = false;
  std::vector<std::string> names;
  std::vector<BallotLine> lines;
  bool in_body = false;
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ParseError("expected 'key: value' or 'MULT: candidates...'", line_no);
    const std::string key = trim(line.substr(0, colon));
    const std::string rest = trim(line.substr(colon + 1));
    if (!in_body && (key == "candidates" || key == "k" || key == "names")) {
      if (key == "candidates") {
        if (have_m) throw ParseError("duplicate 'candidates:' header", line_no);
        const std::int64_t v = parse_int(rest, "candidates", line_no);
        if (v < 1 || v > kMaxCandidates)
          throw ParseError("candidates must be between 1 and " +
                               std::to_string(kMaxCandidates),
                           line_no);
        m = static_cast<int>(v);
        have_m = true;
      } else if (key == "k") {
        if (have_k) throw ParseError("duplicate 'k:' header", line_no);
        const std::int64_t v = parse_int(rest, "k", line_no);
        if (v < 0) throw ParseError("k must be non-negative", line_no);
        k = static_cast<int>(v);
        have_k = true;
      } else {
        if (!names.empty()) throw ParseError("duplicate 'names:' header", line_no);
        names = split_words(rest);
        if (names.empty()) throw ParseError("'names:' lists no labels", line_no);
      }
      continue;
    }
    // Body line: MULT: i j k ...
    if (!have_m || !have_k)
      throw ParseError("ballot line before 'candidates:' and 'k:' headers", line_no);
    in_body = true;
    const std::int64_t mult = parse_int(key, "multiplicity", line_no);
    if (mult < 1) throw ParseError("multiplicity must be positive", line_no);
    CandidateSet ballot = 0;
    for (const std::string& word : split_words(rest)) {
      const std::int64_t c = parse_int(word, "candidate index", line_no);
      if (c < 1 || c > m)
        throw ParseError("candidate index " + word + " out of range 1.." +
                             std::to_string(m),
                         line_no);
      const CandidateSet bit = CandidateSet{1} << (c - 1);
      if (ballot & bit) throw ParseError("candidate " + word + " repeated in ballot", line_no);
      ballot |= bit;
    }
    lines.push_back({ballot, mult});
  }
  if (!have_m) throw ParseError("missing 'candidates:' header", line_no + 1);
  if (!have_k) throw ParseError("missing 'k:' header", line_no + 1);
  if (!names.empty() && static_cast<int>(names.size()) != m)
    throw ParseError("'names:' lists " + std::to_string(names.size()) + " labels for " +
                         std::to_string(m) + " candidates",
                     line_no + 1);
  if (k > m) throw ParseError("k exceeds the number of candidates", line_no + 1);
  ProfileFile out;
  out.profile = Profile(m, std::move(lines));
  out.committee_size = k;
  out.names = std::move(names);
  return out;
}

std::string serialize_profile(const Profile& profile, int committee_size,
                              const std::vector<std::string>& names) {
  std::ostringstream os;
  os << "candidates: " << profile.num_candidates() << "\n";
  os << "k: " << committee_size << "\n";
  if (!names.empty()) {
    os << "names:";
    for (const std::string& n : names) os << " " << n;
    os << "\n";
  }
  for (const BallotLine& line : profile.lines()) {
    os << line.multiplicity << ":";
    for (int c : indices_from_set(line.ballot)) os << " " << c;
    os << "\n";
  }
  return os.str();
}

CountingFunction parse_counting_text(const std::string& text) {
  std::istringstream stream(text);
  std::string raw;
  int line_no = 0;
  int m = 0, k = 0;
  bool have_m = false, have_k = false;
  std::string base;
  std::vector<std::tuple<int, int, Rational>> entries;
  std::string name = "table";
  while (std::getline(stream, raw)) {
    ++line_no;
    const std::string line = trim(strip_comment(raw));
    if (line.empty()) continue;
    const std::size_t colon = line.find(':');
    if (colon != std::string::npos) {
      const std::string key = trim(line.substr(0, colon));
      const std::string rest = trim(line.substr(colon + 1));
      if (key == "m") {
        const std::int64_t v = parse_int(rest, "m", line_no);
        if (v < 1 || v > kMaxCandidates) throw ParseError("m out of range", line_no);
        m = static_cast<int>(v);
        have_m = true;
      } else if (key == "k") {
        const std::int64_t v = parse_int(rest, "k", line_no);
        if (v < 0) throw ParseError("k must be non-negative", line_no);
        k = static_cast<int>(v);
        have_k = true;
      } else if (key == "base") {
        if (rest.empty()) throw ParseError("'base:' names no rule", line_no);
        base = rest;
      } else if (key == "name") {
        name = rest;
      } else {
        throw ParseError("unknown header key '" + key + "'", line_no);
      }
      continue;
    }
    if (!have_m || !have_k)
      throw ParseError("table entry before 'm:' and 'k:' headers", line_no);
    const auto words = split_words(line);
    if (words.size() != 3)
      throw ParseError("expected 'x y value'", line_no);
    const std::int64_t x = parse_int(words[0], "x", line_no);
    const std::int64_t y = parse_int(words[1], "y", line_no);
    if (x < 0 || x > k) throw ParseError("x out of range 0..k", line_no);
    if (y < 0 || y > m) throw ParseError("y out of range 0..m", line_no);
    const auto value = parse_fraction(words[2]);
    if (!value) throw ParseError("bad value '" + words[2] + "'", line_no);
    entries.emplace_back(static_cast<int>(x), static_cast<int>(y), *value);
  }
  if (!have_m) throw ParseError("missing 'm:' header", line_no + 1);
  if (!have_k) throw ParseError("missing 'k:' header", line_no + 1);
  if (k > m) throw ParseError("k exceeds m", line_no + 1);
  std::vector<std::vector<Rational>> values(
      static_cast<std::size_t>(k) + 1,
      std::vector<Rational>(static_cast<std::size_t>(m) + 1, Rational(0)));
  if (!base.empty()) {
    const CountingFunction defaults = make_counting(base, m, k);
    values = defaults.values();
    if (name == "table") name = base + "+table";
  }
  for (const auto& [x, y, value] : entries)
    values[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = value;
  return table_counting(m, k, name, std::move(values), /*allow_nonmonotone=*/true);
}

std::string serialize_counting(const CountingFunction& f) {
  std::ostringstream os;
  os << "m: " << f.num_candidates() << "\n";
  os << "k: " << f.committee_size() << "\n";
  os << "name: " << f.name() << "\n";
  for (int x = 0; x <= f.committee_size(); ++x)
    for (int y = 0; y <= f.num_candidates(); ++y)
      os << x << " " << y << " " << fraction_string(f.value(x, y)) << "\n";
  return os.str();
}

CandidateSet parse_committee(const std::string& text, int num_candidates) {
  std::string s = trim(text);
  if (s.size() >= 2 && s.front() == '{' && s.back() == '}') s = s.substr(1, s.size() - 2);
  const int limit = num_candidates > 0 ? num_candidates : kMaxCandidates;
  CandidateSet out = 0;
  std::string token;
  std::istringstream is(s);
  while (std::getline(is, token, ',')) {
    token = trim(token);
    if (token.empty()) continue;
    std::int64_t c = 0;
    try {
      std::size_t used = 0;
      c = std::stoll(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad candidate index '" + token + "'");
    }
    if (c < 1 || c > limit)
      throw std::invalid_argument("candidate index " + token + " out of range");
    out |= CandidateSet{1} << (c - 1);
  }
  return out;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
  if (!out) throw std::runtime_error("write failed: " + path);
}

namespace {

json witness_to_json(const AxiomWitness& w) {
  json j;
  j["committee_size"] = w.committee_size;
  json profiles = json::array();
  for (const Profile& p : w.profiles)
    profiles.push_back(serialize_profile(p, w.committee_size));
  j["profiles"] = std::move(profiles);
  json committees = json::array();
  for (CandidateSet c : w.committees) committees.push_back(set_string(c));
  j["committees"] = std::move(committees);
  if (!w.permutation.empty()) j["permutation"] = w.permutation;
  if (w.n) j["n"] = *w.n;
  if (!w.note.empty()) j["note"] = w.note;
  return j;
}

AxiomWitness witness_from_json(const json& j) {
  AxiomWitness w;
  w.committee_size = j.value("committee_size", 0);
  if (j.contains("profiles"))
    for (const auto& text : j.at("profiles"))
      w.profiles.push_back(parse_profile_text(text.get<std::string>()).profile);
  if (j.contains("committees"))
    for (const auto& text : j.at("committees"))
      w.committees.push_back(parse_committee(text.get<std::string>(), 0));
  if (j.contains("permutation")) w.permutation = j.at("permutation").get<std::vector<int>>();
  if (j.contains("n")) w.n = j.at("n").get<std::int64_t>();
  if (j.contains("note")) w.note = j.at("note").get<std::string>();
  return w;
}

AxiomStatus status_from_string(const std::string& s) {
  if (s == "pass") return AxiomStatus::pass;
  if (s == "fail") return AxiomStatus::fail;
  if (s == "not-applicable") return AxiomStatus::not_applicable;
  if (s == "exhausted") return AxiomStatus::exhausted;
  throw std::invalid_argument("unknown status: " + s);
}

}  // namespace

std::string report_to_text(const AuditReport& report) {
  json j;
  j["schema"] = 1;
  j["mode"] = report.mode;
  j["axiom"] = report.axiom;
  j["rule"] = report.rule_spec;
  j["status"] = to_string(report.verdict.status);
  j["detail"] = report.verdict.detail;
  j["witness"] =
      report.verdict.witness ? witness_to_json(*report.verdict.witness) : json();
  const SearchConfig& cfg = report.config;
  json search;
  search["max_m"] = cfg.max_m;
  search["max_k"] = cfg.max_k;
  search["max_voters"] = cfg.max_voters;
  search["max_ballot_multiplicity"] = cfg.max_ballot_multiplicity;
  search["max_party_weight"] = cfg.max_party_weight;
  search["mode"] = cfg.mode == SearchMode::exhaustive ? "exhaustive" : "random";
  search["seed"] = cfg.seed;
  search["samples"] = cfg.samples;
  search["continuity_n_max"] = cfg.continuity_n_max;
  search["max_instances"] = cfg.max_instances;
  search["bounds"] = report.verdict.log.bounds;
  search["instances"] = report.verdict.log.instances;
  search["inconclusive"] = report.verdict.log.inconclusive;
  j["search"] = std::move(search);
  if (report.mode == "instance") {
    json inst;
    inst["k"] = report.instance_k;
    inst["n_max"] = report.instance_n_max;
    json profiles = json::array();
    for (const Profile& p : report.instance_profiles)
      profiles.push_back(serialize_profile(p, report.instance_k));
    inst["profiles"] = std::move(profiles);
    j["instance"] = std::move(inst);
  }
  j["timing_seconds"] = report.seconds;
  return j.dump(2) + "\n";
}

AuditReport report_from_text(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), 1);
  }
  if (!j.contains("schema") || j.at("schema").get<int>() != 1)
    throw std::invalid_argument("unsupported report schema");
  AuditReport report;
  report.mode = j.at("mode").get<std::string>();
  report.axiom = j.at("axiom").get<std::string>();
  report.rule_spec = j.at("rule").get<std::string>();
  report.verdict.axiom = report.axiom;
  report.verdict.rule = report.rule_spec;
  report.verdict.status = status_from_string(j.at("status").get<std::string>());
  report.verdict.detail = j.value("detail", "");
  if (j.contains("witness") && !j.at("witness").is_null())
    report.verdict.witness = witness_from_json(j.at("witness"));
  if (j.contains("search")) {
    const json& s = j.at("search");
    SearchConfig& cfg = report.config;
    cfg.max_m = s.value("max_m", cfg.max_m);
    cfg.max_k = s.value("max_k", cfg.max_k);
    cfg.max_voters = s.value("max_voters", cfg.max_voters);
    cfg.max_ballot_multiplicity =
        s.value("max_ballot_multiplicity", cfg.max_ballot_multiplicity);
    cfg.max_party_weight = s.value("max_party_weight", cfg.max_party_weight);
    cfg.mode = s.value("mode", std::string("exhaustive")) == "random"
                   ? SearchMode::random
                   : SearchMode::exhaustive;
    cfg.seed = s.value("seed", cfg.seed);
    cfg.samples = s.value("samples", cfg.samples);
    cfg.continuity_n_max = s.value("continuity_n_max", cfg.continuity_n_max);
    cfg.max_instances = s.value("max_instances", cfg.max_instances);
    report.verdict.log.bounds = s.value("bounds", "");
    report.verdict.log.instances = s.value("instances", std::int64_t{0});
    report.verdict.log.inconclusive = s.value("inconclusive", std::int64_t{0});
    if (cfg.mode == SearchMode::random) report.verdict.log.seed = cfg.seed;
  }
  if (j.contains("instance") && !j.at("instance").is_null()) {
    const json& inst = j.at("instance");
    report.instance_k = inst.value("k", 0);
    report.instance_n_max = inst.value("n_max", std::int64_t{64});
    if (inst.contains("profiles"))
      for (const auto& text_node : inst.at("profiles"))
        report.instance_profiles.push_back(
            parse_profile_text(text_node.get<std::string>()).profile);
  }
  report.seconds = j.value("timing_seconds", 0.0);
  return report;
}

std::string report_status_witness_text(const AuditReport& report) {
  json j;
  j["status"] = to_string(report.verdict.status);
  j["witness"] =
      report.verdict.witness ? witness_to_json(*report.verdict.witness) : json();
  return j.dump(2);
}

}  // namespace abc
