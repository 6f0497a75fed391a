#include "abc/cli.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "abc/apportionment.hpp"
#include "abc/axioms.hpp"
#include "abc/counting.hpp"
#include "abc/io.hpp"
#include "abc/rules.hpp"
#include "abc/search.hpp"
#include "abc/winners.hpp"

namespace abc {

namespace {

constexpr const char* kFilePrefix = "file:";

bool has_file_prefix(const std::string& spec) {
  return spec.rfind(kFilePrefix, 0) == 0;
}

CountingFunction build_counting(const std::string& spec, int m, int k) {
  if (has_file_prefix(spec)) {
    CountingFunction f = parse_counting_text(read_text_file(spec.substr(5)));
    if (f.num_candidates() != m || f.committee_size() != k)
      throw std::invalid_argument("counting file is for m=" +
                                  std::to_string(f.num_candidates()) + ", k=" +
                                  std::to_string(f.committee_size()) +
                                  " but the election has m=" + std::to_string(m) +
                                  ", k=" + std::to_string(k));
    return f;
  }
  return make_counting(spec, m, k);
}

std::unique_ptr<Rule> build_rule(const std::string& spec, int m, int k,
                                 const EnumerationLimits& limits) {
  if (has_file_prefix(spec))
    return std::make_unique<CountingRule>(build_counting(spec, m, k), limits);
  return make_rule(spec, m, k, limits);
}

std::vector<std::int64_t> parse_int_list(const std::string& csv,
                                         const std::string& what) {
  std::vector<std::int64_t> out;
  std::string token;
  std::istringstream is(csv);
  while (std::getline(is, token, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoll(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad integer '" + token + "' in " + what);
    }
  }
  if (out.empty()) throw std::invalid_argument(what + " is empty");
  return out;
}

std::string render_score(const Rational& r, bool decimal) {
  std::string out = fraction_string(r);
  if (decimal) {
    std::ostringstream os;
    os << " (approx " << approx(r) << ")";
    out += os.str();
  }
  return out;
}

std::string render_lex_score(const std::vector<Rational>& v, bool decimal) {
  if (v.size() == 1) return render_score(v[0], decimal);
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ", ";
    out += render_score(v[i], decimal);
  }
  return out + ")";
}

// Instance-mode audit of one axiom on explicit profiles.
AxiomVerdict run_instance_audit(const Rule& rule, const std::string& axiom,
                                const std::vector<Profile>& profiles,
                                std::int64_t n_max) {
  if (profiles.empty()) throw std::invalid_argument("no profiles given");
  const Profile& a = profiles.front();
  const bool needs_pair = axiom == "consistency" || axiom == "continuity";
  if (needs_pair && profiles.size() < 2)
    throw std::invalid_argument(axiom + " needs --profile-a and --profile-b");
  if (axiom == "symmetry") {
    const int m = rule.num_candidates();
    if (m > 8)
      throw CapacityError("instance-mode symmetry iterates all candidate "
                          "permutations; m must be at most 8");
    AxiomVerdict verdict;
    for (const auto& sigma : all_permutations(m)) {
      AxiomVerdict sub = check_symmetry(rule, a, {}, sigma);
      if (sub.status == AxiomStatus::fail) {
        sub.log.instances = verdict.log.instances + 1;
        return sub;
      }
      ++verdict.log.instances;
    }
    verdict.axiom = "symmetry";
    verdict.rule = rule.name();
    verdict.detail = "anonymity and all " + std::to_string(verdict.log.instances) +
                     " candidate relabelings hold";
    return verdict;
  }
  if (axiom == "consistency") return check_consistency(rule, a, profiles[1]);
  if (axiom == "continuity") return check_continuity(rule, a, profiles[1], n_max);
  if (axiom == "weak-efficiency") return check_weak_efficiency(rule, a);
  if (axiom == "efficiency") return check_efficiency(rule, a);
  if (axiom == "disjoint-equality") return check_disjoint_equality(rule, a);
  if (axiom == "disjoint-diversity") return check_disjoint_diversity(rule, a);
  if (axiom == "lower-quota") return check_lower_quota(rule, a);
  if (axiom == "dhondt") return check_dhondt(rule, a);
  throw std::invalid_argument("unknown axiom: " + axiom);
}

void print_verdict(std::ostream& out, const AuditReport& report) {
  const AxiomVerdict& v = report.verdict;
  out << "axiom: " << report.axiom << "\n";
  out << "rule: " << report.rule_spec << "\n";
  out << "status: " << to_string(v.status) << "\n";
  if (!v.detail.empty()) out << "detail: " << v.detail << "\n";
  out << "instances: " << v.log.instances;
  if (v.log.inconclusive > 0) out << " (inconclusive: " << v.log.inconclusive << ")";
  out << "\n";
  if (!v.log.bounds.empty()) out << "bounds: " << v.log.bounds << "\n";
  if (v.witness) {
    const AxiomWitness& w = *v.witness;
    for (std::size_t i = 0; i < w.profiles.size(); ++i) {
      out << "witness profile " << static_cast<char>('A' + i) << ":\n";
      out << serialize_profile(w.profiles[i], w.committee_size);
    }
    if (!w.committees.empty()) {
      out << "witness committees:";
      for (CandidateSet c : w.committees) out << " " << set_string(c);
      out << "\n";
    }
    if (!w.permutation.empty()) {
      out << "witness permutation:";
      for (int p : w.permutation) out << " " << p;
      out << "\n";
    }
    if (w.n) out << "witness n: " << *w.n << "\n";
    if (!w.note.empty()) out << "witness note: " << w.note << "\n";
  }
}

// Re-executes the audit an existing report describes.
AuditReport execute_report(const AuditReport& original,
                           const EnumerationLimits& limits) {
  AuditReport rerun = original;
  rerun.seconds = 0;
  const auto start = std::chrono::steady_clock::now();
  if (original.mode == "search") {
    const std::string spec = original.rule_spec;
    rerun.verdict = search_counterexample(
        original.axiom, spec,
        [&spec, &limits](int m, int k) { return build_rule(spec, m, k, limits); },
        original.config);
  } else if (original.mode == "instance") {
    if (original.instance_profiles.empty())
      throw std::invalid_argument("report has no instance profiles to replay");
    const int m = original.instance_profiles.front().num_candidates();
    const auto rule = build_rule(original.rule_spec, m, original.instance_k, limits);
    rerun.verdict = run_instance_audit(*rule, original.axiom,
                                       original.instance_profiles,
                                       original.instance_n_max);
  } else {
    throw std::invalid_argument("unknown report mode: " + original.mode);
  }
  rerun.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return rerun;
}

struct CommonOptions {
  bool decimal = false;
  int threads = 1;

  EnumerationLimits limits() const {
    EnumerationLimits l;
    l.threads = threads;
    return l;
  }
};

int cmd_score(const CommonOptions& common, const std::string& rule_spec,
              const std::string& profile_path, const std::string& committee_text,
              std::ostream& out) {
  const ProfileFile pf = parse_profile_text(read_text_file(profile_path));
  const int m = pf.profile.num_candidates();
  const auto rule = build_rule(rule_spec, m, pf.committee_size, common.limits());
  const CandidateSet committee = parse_committee(committee_text, m);
  if (set_size(committee) != pf.committee_size)
    throw std::invalid_argument("committee has " + std::to_string(set_size(committee)) +
                                " members, expected k=" +
                                std::to_string(pf.committee_size));
  if (rule->lex_arity() == 0)
    throw std::invalid_argument("rule '" + rule_spec + "' has no additive score");
  out << render_lex_score(rule->lex_score(committee, pf.profile), common.decimal)
      << "\n";
  return 0;
}

int cmd_winners(const CommonOptions& common, const std::string& rule_spec,
                const std::string& profile_path, const std::string& engine,
                std::ostream& out) {
  const ProfileFile pf = parse_profile_text(read_text_file(profile_path));
  const int m = pf.profile.num_candidates();
  const auto rule = build_rule(rule_spec, m, pf.committee_size, common.limits());
  std::vector<CandidateSet> winners;
  if (engine == "bnb") {
    const CountingFunction* f = rule->counting();
    if (!f)
      throw std::invalid_argument("--engine bnb needs a counting rule");
    const WinnerSet ws = bnb_winners(*f, pf.profile, pf.committee_size,
                                     common.limits());
    out << "score: " << render_score(ws.score, common.decimal) << "\n";
    winners = ws.committees;
  } else if (engine == "enum") {
    winners = rule->winners(pf.profile);
    if (const CountingFunction* f = rule->counting())
      out << "score: "
          << render_score(score(*f, winners.front(), pf.profile), common.decimal)
          << "\n";
  } else {
    throw std::invalid_argument("unknown engine: " + engine);
  }
  for (CandidateSet w : winners) out << set_string(w) << "\n";
  return 0;
}

int cmd_rank(const CommonOptions& common, const std::string& rule_spec,
             const std::string& profile_path, std::ostream& out) {
  const ProfileFile pf = parse_profile_text(read_text_file(profile_path));
  const int m = pf.profile.num_candidates();
  const auto rule = build_rule(rule_spec, m, pf.committee_size, common.limits());
  if (!rule->has_ranking())
    throw std::invalid_argument("rule '" + rule_spec + "' does not rank committees");
  const auto tiers = rule->rank(pf.profile);
  for (std::size_t t = 0; t < tiers.size(); ++t) {
    out << "tier " << (t + 1);
    if (rule->lex_arity() > 0)
      out << " (score "
          << render_lex_score(rule->lex_score(tiers[t].front(), pf.profile),
                              common.decimal)
          << ")";
    out << ":";
    for (CandidateSet w : tiers[t]) out << " " << set_string(w);
    out << "\n";
  }
  return 0;
}

int cmd_apportion(const std::string& method, const std::string& weights_csv,
                  const std::string& capacities_csv, int seats, std::ostream& out) {
  DivisorMethod dm;
  if (method == "dhondt")
    dm = DivisorMethod::dhondt;
  else if (method == "sainte-lague")
    dm = DivisorMethod::sainte_lague;
  else
    throw std::invalid_argument("unknown method: " + method);
  const auto weights = parse_int_list(weights_csv, "--weights");
  std::vector<int> capacities;
  if (!capacities_csv.empty()) {
    for (std::int64_t c : parse_int_list(capacities_csv, "--capacities")) {
      if (c < 0) throw std::invalid_argument("capacities must be non-negative");
      capacities.push_back(static_cast<int>(c));
    }
  } else {
    capacities.assign(weights.size(), seats);
  }
  const auto vectors = divisor_apportion(weights, capacities, seats, dm);
  for (const auto& v : vectors) {
    for (std::size_t i = 0; i < v.size(); ++i) out << (i ? " " : "") << v[i];
    out << "\n";
  }
  return 0;
}

int cmd_equiv(const std::string& f_spec, const std::string& g_spec, int m, int k,
              std::ostream& out) {
  const CountingFunction f = build_counting(f_spec, m, k);
  const CountingFunction g = build_counting(g_spec, m, k);
  const EquivalenceVerdict verdict = equivalent(f, g);
  switch (verdict.kind) {
    case EquivalenceVerdict::Kind::yes: out << "verdict: yes\n"; break;
    case EquivalenceVerdict::Kind::no_affine_relation:
      out << "verdict: no-affine-relation\n";
      break;
    case EquivalenceVerdict::Kind::inconclusive: out << "verdict: inconclusive\n"; break;
  }
  if (verdict.both_trivial) out << "both-trivial: true\n";
  if (verdict.scale) out << "scale: " << fraction_string(*verdict.scale) << "\n";
  if (!verdict.offset_by_y.empty()) {
    out << "offsets:";
    for (std::size_t y = 0; y < verdict.offset_by_y.size(); ++y)
      out << " y=" << y << ":" << fraction_string(verdict.offset_by_y[y]);
    out << "\n";
  }
  if (!verdict.detail.empty()) out << "detail: " << verdict.detail << "\n";
  return 0;
}

int cmd_alpha(const std::string& kind_text, const std::string& w1_text,
              const std::string& w2_text, int m, const std::string& out_path,
              std::ostream& out) {
  AlphaKind kind;
  if (kind_text == "pav")
    kind = AlphaKind::pav;
  else if (kind_text == "cc")
    kind = AlphaKind::cc;
  else
    throw std::invalid_argument("unknown alpha kind: " + kind_text);
  const CandidateSet w1 = parse_committee(w1_text, 0);
  const CandidateSet w2 = parse_committee(w2_text, 0);
  if (m == 0) {
    for (int c : indices_from_set(w1 | w2)) m = std::max(m, c);
  }
  const Profile alpha = alpha_profile(kind, w1, w2, m);
  const std::string text = serialize_profile(alpha, set_size(w1));
  if (!out_path.empty()) {
    write_text_file(out_path, text);
    out << "profile written: " << out_path << "\n";
  } else {
    out << text;
  }
  return 0;
}

struct AuditOptions {
  std::string axiom;
  std::string rule_spec;
  std::string profile_a;
  std::string profile_b;
  std::string out_path;
  std::string replay_path;
  std::string mode = "exhaustive";
  SearchConfig config;
  std::int64_t n_max = 64;
};

int cmd_audit(const CommonOptions& common, const AuditOptions& opt, std::ostream& out) {
  const EnumerationLimits limits = common.limits();
  if (!opt.replay_path.empty()) {
    const AuditReport original = report_from_text(read_text_file(opt.replay_path));
    const AuditReport rerun = execute_report(original, limits);
    const std::string before = report_status_witness_text(original);
    const std::string after = report_status_witness_text(rerun);
    if (before == after) {
      out << "replay: reproduced\n";
      print_verdict(out, rerun);
      return 0;
    }
    out << "replay: MISMATCH\n";
    out << "--- original status/witness ---\n" << before << "\n";
    out << "--- replayed status/witness ---\n" << after << "\n";
    return 1;
  }

  if (opt.axiom.empty()) throw std::invalid_argument("--axiom is required");
  if (opt.rule_spec.empty()) throw std::invalid_argument("--rule is required");

  AuditReport report;
  report.axiom = opt.axiom;
  report.rule_spec = opt.rule_spec;
  const auto start = std::chrono::steady_clock::now();
  if (!opt.profile_a.empty()) {
    report.mode = "instance";
    std::vector<Profile> profiles;
    const ProfileFile pa = parse_profile_text(read_text_file(opt.profile_a));
    profiles.push_back(pa.profile);
    if (!opt.profile_b.empty()) {
      const ProfileFile pb = parse_profile_text(read_text_file(opt.profile_b));
      if (pb.profile.num_candidates() != pa.profile.num_candidates() ||
          pb.committee_size != pa.committee_size)
        throw std::invalid_argument("the two profiles disagree on m or k");
      profiles.push_back(pb.profile);
    }
    report.instance_k = pa.committee_size;
    report.instance_n_max = opt.n_max;
    report.instance_profiles = profiles;
    const auto rule = build_rule(opt.rule_spec, pa.profile.num_candidates(),
                                 pa.committee_size, limits);
    report.verdict = run_instance_audit(*rule, opt.axiom, profiles, opt.n_max);
  } else {
    report.mode = "search";
    report.config = opt.config;
    report.config.mode =
        opt.mode == "random" ? SearchMode::random : SearchMode::exhaustive;
    if (opt.mode != "random" && opt.mode != "exhaustive")
      throw std::invalid_argument("unknown search mode: " + opt.mode);
    const std::string spec = opt.rule_spec;
    report.verdict = search_counterexample(
        opt.axiom, spec,
        [&spec, &limits](int m, int k) { return build_rule(spec, m, k, limits); },
        report.config);
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  print_verdict(out, report);
  if (!opt.out_path.empty()) {
    write_text_file(opt.out_path, report_to_text(report));
    out << "report written: " << opt.out_path << "\n";
  }
  return report.verdict.status == AxiomStatus::fail ? 1 : 0;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  CLI::App app{"Approval-based committee elections: scoring, winners, "
               "apportionment, and axiom audits"};
  app.require_subcommand(1);

  CommonOptions common;
  app.add_flag("--decimal", common.decimal,
               "also show decimal approximations (marked, never exact)");
  app.add_option("--threads", common.threads, "worker-thread cap for the engines")
      ->check(CLI::Range(1, 256));

  std::string rule_spec, profile_path, committee_text, engine = "enum";

  CLI::App* sc_score = app.add_subcommand("score", "score one committee");
  sc_score->add_option("--rule", rule_spec)->required();
  sc_score->add_option("--profile", profile_path)->required();
  sc_score->add_option("--committee", committee_text)->required();

  CLI::App* sc_winners = app.add_subcommand("winners", "compute winning committees");
  sc_winners->add_option("--rule", rule_spec)->required();
  sc_winners->add_option("--profile", profile_path)->required();
  sc_winners->add_option("--engine", engine)->check(CLI::IsMember({"enum", "bnb"}));

  CLI::App* sc_rank = app.add_subcommand("rank", "rank all committees into tiers");
  sc_rank->add_option("--rule", rule_spec)->required();
  sc_rank->add_option("--profile", profile_path)->required();

  std::string method = "dhondt", weights_csv, capacities_csv;
  int seats = 0;
  CLI::App* sc_apportion = app.add_subcommand("apportion", "divisor apportionment");
  sc_apportion->add_option("--method", method)
      ->check(CLI::IsMember({"dhondt", "sainte-lague"}));
  sc_apportion->add_option("--weights", weights_csv)->required();
  sc_apportion->add_option("--capacities", capacities_csv);
  sc_apportion->add_option("--seats", seats)->required();

  AuditOptions audit;
  CLI::App* sc_audit = app.add_subcommand("audit", "verify or refute an axiom");
  sc_audit->add_option("--axiom", audit.axiom);
  sc_audit->add_option("--rule", audit.rule_spec);
  sc_audit->add_option("--profile-a", audit.profile_a);
  sc_audit->add_option("--profile-b", audit.profile_b);
  sc_audit->add_option("--max-m", audit.config.max_m);
  sc_audit->add_option("--max-k", audit.config.max_k);
  sc_audit->add_option("--max-voters", audit.config.max_voters);
  sc_audit->add_option("--max-mult", audit.config.max_ballot_multiplicity);
  sc_audit->add_option("--max-party-weight", audit.config.max_party_weight);
  sc_audit->add_option("--mode", audit.mode)
      ->check(CLI::IsMember({"exhaustive", "random"}));
  sc_audit->add_option("--seed", audit.config.seed);
  sc_audit->add_option("--samples", audit.config.samples);
  sc_audit->add_option("--n-max", audit.n_max);
  sc_audit->add_option("--max-instances", audit.config.max_instances);
  sc_audit->add_option("--out", audit.out_path);
  sc_audit->add_option("--replay", audit.replay_path);

  std::string f_spec, g_spec;
  int equiv_m = 0, equiv_k = 0;
  CLI::App* sc_equiv = app.add_subcommand("equiv", "counting-function equivalence");
  sc_equiv->add_option("--f", f_spec)->required();
  sc_equiv->add_option("--g", g_spec)->required();
  sc_equiv->add_option("--m", equiv_m)->required();
  sc_equiv->add_option("--k", equiv_k)->required();

  std::string alpha_kind = "pav", w1_text, w2_text, alpha_out;
  int alpha_m = 0;
  CLI::App* sc_alpha = app.add_subcommand("alpha", "two-committee profile construction");
  sc_alpha->add_option("--kind", alpha_kind)->check(CLI::IsMember({"pav", "cc"}));
  sc_alpha->add_option("--w1", w1_text)->required();
  sc_alpha->add_option("--w2", w2_text)->required();
  sc_alpha->add_option("--m", alpha_m);
  sc_alpha->add_option("--out", alpha_out);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (sc_score->parsed())
      return cmd_score(common, rule_spec, profile_path, committee_text, out);
    if (sc_winners->parsed())
      return cmd_winners(common, rule_spec, profile_path, engine, out);
    if (sc_rank->parsed()) return cmd_rank(common, rule_spec, profile_path, out);
    if (sc_apportion->parsed())
      return cmd_apportion(method, weights_csv, capacities_csv, seats, out);
    if (sc_audit->parsed()) {
      audit.config.continuity_n_max = audit.n_max;
      return cmd_audit(common, audit, out);
    }
    if (sc_equiv->parsed()) return cmd_equiv(f_spec, g_spec, equiv_m, equiv_k, out);
    if (sc_alpha->parsed())
      return cmd_alpha(alpha_kind, w1_text, w2_text, alpha_m, alpha_out, out);
    err << "error: no subcommand given\n";
    return 2;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace abc
