#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"

#include "abc/axioms.hpp"
#include "abc/cli.hpp"
#include "abc/counting.hpp"
#include "abc/io.hpp"
#include "abc/rules.hpp"

using namespace abc;

namespace {

const char* kBlockProfile =
    "candidates: 8\n"
    "k: 4\n"
    "75: 1 2 3 4\n"
    "25: 5 6 7 8\n";

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("abc_cli_" + name)).string();
}

std::string temp_file(const std::string& name, const std::string& content) {
  const std::string path = temp_path(name);
  write_text_file(path, content);
  return path;
}

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = run_command(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::vector<std::string> out_lines(const RunResult& r) {
  std::vector<std::string> lines;
  std::istringstream is(r.out);
  std::string line;
  while (std::getline(is, line)) lines.push_back(line);
  return lines;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

int parse_error_line(const std::string& text) {
  try {
    parse_profile_text(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("profile files round-trip through parse and serialize") {
  const ProfileFile pf = parse_profile_text(kBlockProfile);
  CHECK(pf.profile.num_candidates() == 8);
  CHECK(pf.committee_size == 4);
  CHECK(pf.profile.num_voters() == 100);
  CHECK(serialize_profile(pf.profile, pf.committee_size) == kBlockProfile);

  // Comments are stripped, duplicate ballots merge, order canonicalizes.
  const ProfileFile merged = parse_profile_text(
      "# leading comment\n"
      "candidates: 3\n"
      "k: 2\n"
      "\n"
      "1: 3\n"
      "1: 1 2\n"
      "2: 2 1   # same ballot again\n");
  CHECK(serialize_profile(merged.profile, merged.committee_size) ==
        "candidates: 3\nk: 2\n3: 1 2\n1: 3\n");

  const ProfileFile empty_ballot = parse_profile_text("candidates: 2\nk: 1\n1:\n");
  CHECK(empty_ballot.profile.num_voters() == 1);
  CHECK(empty_ballot.profile.lines().front().ballot == 0);
  CHECK(serialize_profile(empty_ballot.profile, 1) == "candidates: 2\nk: 1\n1:\n");

  const ProfileFile named =
      parse_profile_text("candidates: 2\nk: 1\nnames: alice bob\n1: 1\n");
  CHECK(named.names == std::vector<std::string>{"alice", "bob"});
  CHECK(serialize_profile(named.profile, 1, named.names) ==
        "candidates: 2\nk: 1\nnames: alice bob\n1: 1\n");
}

TEST_CASE("profile parse errors carry line numbers") {
  CHECK(parse_error_line("k: 1\n1: 1\n") == 2);          // ballot before headers
  CHECK(parse_error_line("candidates: 2\nk: 1\n1: 1 1\n") == 3);
  CHECK(parse_error_line("candidates: 2\nk: 3\n") == 3);  // reported at end
  CHECK(parse_error_line("candidates: 2\nk: 1\nnames: solo\n1: 1\n") == 5);
  CHECK(parse_error_line("candidates: 2\ncandidates: 2\n") == 2);
  CHECK(parse_error_line("candidates: 2\nk: 1\n0: 1\n") == 3);
  CHECK(parse_error_line("candidates: 2\nk: 1\n1: 9\n") == 3);
  CHECK(parse_error_line("candidates: 2\nk: 1\njunk line\n") == 3);
  try {
    parse_profile_text("candidates: 2\nk: 1\n1: x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(contains(e.what(), "line 3"));
  }
}

TEST_CASE("counting files override a base catalog entry") {
  const CountingFunction f =
      parse_counting_text("m: 3\nk: 2\nbase: pav\n2 2 11/10\n");
  CHECK(f.name() == "pav+table");
  CHECK(f.value(2, 2) == Rational(11, 10));
  CHECK(f.value(1, 1) == Rational(1));
  CHECK(f.value(2, 3) == Rational(3, 2));

  const CountingFunction back = parse_counting_text(serialize_counting(f));
  CHECK(back.values() == f.values());
  CHECK(back.name() == f.name());

  const CountingFunction table = parse_counting_text("m: 3\nk: 2\n1 1 1\n2 2 1\n");
  CHECK(table.name() == "table");
  CHECK(table.value(0, 0) == Rational(0));

  CHECK_THROWS_AS(parse_counting_text("m: 3\nk: 2\n5 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_counting_text("k: 2\n1 1 1\n"), ParseError);
  CHECK_THROWS_AS(parse_counting_text("m: 3\nk: 2\n1 1 nonsense\n"), ParseError);
  CHECK_THROWS_AS(parse_counting_text("m: 3\nk: 4\n"), ParseError);
}

TEST_CASE("committee text parses braced and bare forms") {
  CHECK(parse_committee("{1,3,4}", 6) == set_from_indices({1, 3, 4}));
  CHECK(parse_committee("1,3,4", 6) == set_from_indices({1, 3, 4}));
  CHECK(parse_committee(" { 2 , 5 } ", 6) == set_from_indices({2, 5}));
  CHECK(parse_committee("{}", 6) == 0);
  CHECK_THROWS_AS(parse_committee("{7}", 6), std::invalid_argument);
  CHECK_THROWS_AS(parse_committee("{zero}", 6), std::invalid_argument);
}

TEST_CASE("audit reports round-trip through JSON") {
  AuditReport report;
  report.mode = "search";
  report.axiom = "disjoint-equality";
  report.rule_spec = "pav";
  report.config.max_m = 3;
  report.config.max_k = 2;
  report.verdict.axiom = report.axiom;
  report.verdict.rule = "pav";
  report.verdict.status = AxiomStatus::fail;
  report.verdict.detail = "witnessed";
  AxiomWitness w;
  w.committee_size = 2;
  w.profiles = {Profile(3, {{0b011, 1}, {0b100, 1}})};
  w.committees = {0b011};
  w.n = 5;
  w.note = "sample";
  report.verdict.witness = w;
  report.verdict.log.instances = 17;
  report.seconds = 1.5;

  const std::string text = report_to_text(report);
  CHECK(contains(text, "\"schema\": 1"));
  const AuditReport back = report_from_text(text);
  CHECK(back.mode == report.mode);
  CHECK(back.axiom == report.axiom);
  CHECK(back.rule_spec == report.rule_spec);
  CHECK(back.config.max_m == 3);
  CHECK(back.verdict.status == AxiomStatus::fail);
  REQUIRE(back.verdict.witness.has_value());
  CHECK(back.verdict.witness->profiles == w.profiles);
  CHECK(back.verdict.witness->committees == w.committees);
  CHECK(back.verdict.witness->n == 5);
  CHECK(report_status_witness_text(back) == report_status_witness_text(report));

  CHECK_THROWS_AS(report_from_text("not json"), ParseError);
  CHECK_THROWS_AS(report_from_text("{\"schema\": 2}"), std::invalid_argument);
}

TEST_CASE("cli scores and ranks committees") {
  const std::string profile = temp_file("block.profile", kBlockProfile);
  const auto score = run({"score", "--rule", "pav", "--profile", profile,
                          "--committee", "{1,2,3,4}"});
  CHECK(score.code == 0);
  CHECK(score.out == "625/4\n");

  const auto decimal = run({"--decimal", "score", "--rule", "pav", "--profile",
                            profile, "--committee", "{1,2,3,4}"});
  CHECK(decimal.code == 0);
  CHECK(decimal.out == "625/4 (approx 156.25)\n");

  const auto lex = run({"score", "--rule", "pav-av-tiebreak", "--profile", profile,
                        "--committee", "{1,2,3,4}"});
  CHECK(lex.code == 0);
  CHECK(lex.out == "(625/4, 300)\n");

  const std::string small =
      temp_file("small.profile", "candidates: 3\nk: 2\n2: 1 2\n1: 3\n");
  const auto rank = run({"rank", "--rule", "av", "--profile", small});
  CHECK(rank.code == 0);
  CHECK(rank.out == "tier 1 (score 4): {1,2}\ntier 2 (score 3): {1,3} {2,3}\n");

  CHECK(run({"rank", "--rule", "seqpav", "--profile", small}).code == 2);
  CHECK(run({"score", "--rule", "seqpav", "--profile", small, "--committee",
             "{1,2}"}).code == 2);
  CHECK(run({"score", "--rule", "pav", "--profile", small, "--committee",
             "{1,2,3}"}).code == 2);
}

TEST_CASE("cli winner listings agree across engines") {
  const std::string profile = temp_file("block2.profile", kBlockProfile);
  const auto enumerated = run({"winners", "--rule", "pav", "--profile", profile});
  CHECK(enumerated.code == 0);
  const auto lines = out_lines(enumerated);
  REQUIRE(lines.size() == 17);
  CHECK(lines[0] == "score: 325/2");
  CHECK(lines[1] == "{1,2,3,5}");
  CHECK(lines[16] == "{2,3,4,8}");

  const auto bnb = run({"winners", "--rule", "pav", "--profile", profile,
                        "--engine", "bnb"});
  CHECK(bnb.code == 0);
  CHECK(bnb.out == enumerated.out);

  CHECK(run({"winners", "--rule", "seqpav", "--profile", profile, "--engine",
             "bnb"}).code == 2);
}

TEST_CASE("cli apportionment matches the library") {
  const auto unique = run({"apportion", "--weights", "9,21,28,42", "--seats", "10"});
  CHECK(unique.code == 0);
  CHECK(unique.out == "1 2 3 4\n");

  const auto tied = run({"apportion", "--method", "sainte-lague", "--weights",
                         "7,1", "--seats", "4"});
  CHECK(tied.out == "3 1\n4 0\n");

  const auto capped = run({"apportion", "--weights", "5,1", "--capacities", "1,3",
                           "--seats", "3"});
  CHECK(capped.out == "1 2\n");

  CHECK(run({"apportion", "--weights", "1,x", "--seats", "2"}).code == 2);
  CHECK(run({"apportion", "--weights", "1,1", "--capacities", "0,0", "--seats",
             "1"}).code == 2);
}

TEST_CASE("cli equivalence verdicts") {
  const auto same = run({"equiv", "--f", "pav", "--g", "pav", "--m", "4", "--k", "2"});
  CHECK(same.code == 0);
  CHECK(contains(same.out, "verdict: yes"));

  const auto differ =
      run({"equiv", "--f", "sav", "--g", "av", "--m", "4", "--k", "2"});
  CHECK(contains(differ.out, "verdict: no-affine-relation"));

  const std::string table =
      temp_file("scaled.counting", "m: 4\nk: 2\nbase: pav\n");
  const auto via_file = run({"equiv", "--f", "file:" + table, "--g", "pav", "--m",
                             "4", "--k", "2"});
  CHECK(via_file.code == 0);
  CHECK(contains(via_file.out, "verdict: yes"));

  CHECK(run({"equiv", "--f", "file:" + table, "--g", "pav", "--m", "5", "--k",
             "2"}).code == 2);
}

TEST_CASE("cli alpha construction feeds back into winners") {
  const auto alpha = run({"alpha", "--kind", "pav", "--w1", "{1,2}", "--w2", "{3,4}"});
  CHECK(alpha.code == 0);
  const ProfileFile pf = parse_profile_text(alpha.out);
  CHECK(pf.profile.num_voters() == 12);
  CHECK(pf.committee_size == 2);
  const CountingRule pav(pav_counting(4, 2));
  CHECK(pav.winners(pf.profile) ==
        std::vector<CandidateSet>{set_from_indices({1, 2}), set_from_indices({3, 4})});

  const std::string out_path = temp_path("alpha.profile");
  const auto written = run({"alpha", "--kind", "cc", "--w1", "{1,2}", "--w2",
                            "{1,3}", "--m", "3", "--out", out_path});
  CHECK(written.code == 0);
  CHECK(contains(written.out, "profile written: "));
  const ProfileFile stored = parse_profile_text(read_text_file(out_path));
  CHECK(stored.profile.num_voters() == 2);

  CHECK(run({"alpha", "--kind", "pav", "--w1", "{1,2}", "--w2", "{1,2}"}).code == 2);
}

TEST_CASE("cli instance audits report witnesses and replay") {
  const std::string pa =
      temp_file("cont_a.profile", "candidates: 3\nk: 2\n1: 3\n");
  const std::string pb =
      temp_file("cont_b.profile", "candidates: 3\nk: 2\n2: 1 2\n1: 3\n");
  const std::string report_path = temp_path("cont.report.json");

  const auto audit = run({"audit", "--axiom", "continuity", "--rule",
                          "pav-av-tiebreak", "--profile-a", pa, "--profile-b", pb,
                          "--out", report_path});
  CHECK(audit.code == 1);
  CHECK(contains(audit.out, "status: fail"));
  CHECK(contains(audit.out, "witness profile A:"));
  CHECK(contains(audit.out, "report written: " + report_path));
  CHECK(contains(read_text_file(report_path), "\"schema\": 1"));

  const auto replay = run({"audit", "--replay", report_path});
  CHECK(replay.code == 0);
  CHECK(contains(replay.out, "replay: reproduced"));

  const auto sym = run({"audit", "--axiom", "symmetry", "--rule", "pav",
                        "--profile-a", pa});
  CHECK(sym.code == 0);
  CHECK(contains(sym.out, "status: pass"));
  CHECK(contains(sym.out, "instances: 6"));

  CHECK(run({"audit", "--axiom", "consistency", "--rule", "pav", "--profile-a",
             pa}).code == 2);
}

TEST_CASE("cli search audits cover pass, fail, replay, and capacity exits") {
  const auto fail = run({"audit", "--axiom", "disjoint-equality", "--rule", "pav",
                         "--max-m", "3", "--max-k", "2"});
  CHECK(fail.code == 1);
  CHECK(contains(fail.out, "status: fail"));

  const std::string report_path = temp_path("search.report.json");
  const auto pass = run({"audit", "--axiom", "disjoint-equality", "--rule", "av",
                         "--max-m", "3", "--max-k", "2", "--out", report_path});
  CHECK(pass.code == 0);
  CHECK(contains(pass.out, "status: pass"));
  CHECK(contains(pass.out, "instances: 32"));

  const auto replay = run({"audit", "--replay", report_path});
  CHECK(replay.code == 0);
  CHECK(contains(replay.out, "replay: reproduced"));

  const auto capacity = run({"audit", "--axiom", "continuity", "--rule", "av",
                             "--max-m", "2", "--max-k", "1", "--max-voters", "2",
                             "--max-instances", "10"});
  CHECK(capacity.code == 3);
  CHECK(contains(capacity.err, "error:"));

  CHECK(run({"audit", "--rule", "av"}).code == 2);  // missing --axiom
}

TEST_CASE("cli usage errors and help") {
  CHECK(run({}).code == 2);
  CHECK(run({"score", "--rule", "pav"}).code == 2);
  CHECK(run({"no-such-command"}).code == 2);
  const std::string profile = temp_file("tiny.profile", "candidates: 2\nk: 1\n1: 1\n");
  CHECK(run({"winners", "--rule", "bogus", "--profile", profile}).code == 2);
  CHECK(run({"winners", "--rule", "pav", "--profile", "/nonexistent/file"}).code == 2);
  const auto help = run({"--help"});
  CHECK(help.code == 0);
  CHECK(contains(help.out, "audit"));
}
