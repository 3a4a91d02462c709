#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <set>

#include "modal/casebook.hpp"
#include "support.hpp"

using modal::CaseInfo;
using modal::CaseKind;
using modal::CaseOutcome;
using modal::case_catalog;
using modal::run_case;

TEST_CASE("catalog: fixed order, seven unique cases") {
  const auto& catalog = case_catalog();
  REQUIRE(catalog.size() == 7);
  CHECK(catalog[0].name == "anselm_local_faulty");
  CHECK(catalog[0].kind == CaseKind::ProofReject);
  CHECK(catalog[1].name == "anselm_local_countermodel");
  CHECK(catalog[2].name == "hartshorne_valid");
  CHECK(catalog[3].name == "hartshorne_semantic");
  CHECK(catalog[4].name == "goedel_steps_faulty");
  CHECK(catalog[5].name == "goedel_steps_repaired");
  CHECK(catalog[6].name == "nec_local_failure");

  std::set<std::string> names;
  for (const CaseInfo& c : catalog) {
    names.insert(c.name);
    CHECK(!c.summary.empty());
    CHECK(!c.narrative.empty());
  }
  CHECK(names.size() == 7);
}

TEST_CASE("all bundled cases pass") {
  for (const CaseInfo& c : case_catalog()) {
    CaseOutcome outcome = run_case(testsupport::cases_dir(), c.name);
    CAPTURE(outcome.name);
    CAPTURE(outcome.expected);
    CAPTURE(outcome.actual);
    CHECK(outcome.pass);
  }
}

TEST_CASE("reject cases point at an accepted repaired twin") {
  int reject_cases = 0;
  for (const CaseInfo& c : case_catalog()) {
    if (c.kind != CaseKind::ProofReject) continue;
    ++reject_cases;
    REQUIRE(!c.repaired_twin.empty());
    const CaseInfo* twin = modal::find_case(c.repaired_twin);
    REQUIRE(twin != nullptr);
    CHECK(twin->kind == CaseKind::ProofAccept);
    CHECK(run_case(testsupport::cases_dir(), twin->name).pass);
  }
  CHECK(reject_cases == 2);
}

TEST_CASE("proof-accept cases are semantically confirmed by decide") {
  for (const CaseInfo& c : case_catalog()) {
    if (c.kind != CaseKind::ProofAccept) continue;
    std::string payload =
        modal::read_text_file(testsupport::cases_dir() + "/" + c.payload_file);
    modal::Derivation d = modal::parse_derivation(payload);
    REQUIRE(modal::check(d).accepted);
    auto conclusion = d.conclusion();
    REQUIRE(conclusion.has_value());
    modal::Verdict v =
        modal::decide(d.system, d.global_premises(), d.local_premises(), *conclusion);
    CAPTURE(c.name);
    CHECK(v.kind == modal::Verdict::Kind::Valid);
  }
}

TEST_CASE("the hartshorne derivation is sixteen lines ending in []q") {
  std::string payload =
      modal::read_text_file(testsupport::cases_dir() + "/hartshorne_valid.mpf");
  modal::Derivation d = modal::parse_derivation(payload);
  CHECK(d.global_lines.size() + d.local_lines.size() == 16);
  CHECK(d.conclusion() == modal::parse_formula("[]q"));
  CHECK(d.global_premises().size() == 1);
  CHECK(d.global_premises()[0] == modal::parse_formula("[](q -> []q)"));
  CHECK(d.local_premises().size() == 1);
  CHECK(d.local_premises()[0] == modal::parse_formula("~[]~q"));
}

TEST_CASE("reject cases fail with exactly NecessitationInLocalSection") {
  for (const char* name : {"anselm_local_faulty", "goedel_steps_faulty"}) {
    std::string payload = modal::read_text_file(testsupport::cases_dir() + "/" +
                                                std::string(name) + ".mpf");
    modal::CheckReport r = modal::check(modal::parse_derivation(payload));
    CAPTURE(name);
    CHECK_FALSE(r.accepted);
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].kind == modal::CheckErrorKind::NecessitationInLocalSection);
  }
}

TEST_CASE("countermodel cases reproduce the stored .km text byte for byte") {
  for (const char* name : {"anselm_local_countermodel", "nec_local_failure"}) {
    const CaseInfo* info = modal::find_case(name);
    REQUIRE(info != nullptr);
    std::string query_text =
        modal::read_text_file(testsupport::cases_dir() + "/" + info->payload_file);
    modal::ConsequenceQuery q = modal::parse_query(query_text);
    modal::Verdict v = modal::decide(q.logic, q.globals, q.locals, q.goal);
    REQUIRE(v.kind == modal::Verdict::Kind::Countermodel);
    modal::ExpectedOutcome expected = modal::parse_expected(
        modal::read_text_file(testsupport::cases_dir() + "/" + info->expected_file),
        info->kind);
    CHECK(modal::print_model(*v.model) == expected.model_text);
  }
}

TEST_CASE("case outcomes are deterministic") {
  auto snapshot = [] {
    std::string out;
    for (const CaseOutcome& o : modal::run_all_cases(testsupport::cases_dir()))
      out += o.name + "|" + o.expected + "|" + o.actual + "|" + (o.pass ? "1" : "0") + "\n";
    return out;
  };
  CHECK(snapshot() == snapshot());
}

TEST_CASE("unknown case names raise UnknownCase") {
  CHECK_THROWS_AS(run_case(testsupport::cases_dir(), "no_such_case"), modal::UnknownCase);
}

TEST_CASE("query files: parsing and errors") {
  modal::ConsequenceQuery q = modal::parse_query(
      "# header\nlogic S5\nglobal q -> []q\nlocal <>q\ngoal []q\n");
  CHECK(q.logic == modal::Logic::S5);
  CHECK(q.globals.size() == 1);
  CHECK(q.locals.size() == 1);
  CHECK(q.goal == modal::parse_formula("[]q"));

  CHECK_THROWS_AS(modal::parse_query("goal p\n"), modal::CasebookError);       // no logic
  CHECK_THROWS_AS(modal::parse_query("logic S5\n"), modal::CasebookError);     // no goal
  CHECK_THROWS_AS(modal::parse_query("logic S5\ngoal p\ngoal q\n"), modal::CasebookError);
  CHECK_THROWS_AS(modal::parse_query("logic S9\ngoal p\n"), modal::CasebookError);
  CHECK_THROWS_AS(modal::parse_query("logic S5\nfrob p\ngoal q\n"), modal::CasebookError);
  CHECK_THROWS_AS(modal::parse_query("logic S5\ngoal p q\n"), modal::CasebookError);
}

TEST_CASE("expected files: parsing and kind consistency") {
  auto proof_ok = modal::parse_expected("status accepted\n", CaseKind::ProofAccept);
  CHECK(proof_ok.accepted);
  auto proof_rej = modal::parse_expected(
      "status rejected\nerror NecessitationInLocalSection\n", CaseKind::ProofReject);
  CHECK_FALSE(proof_rej.accepted);
  REQUIRE(proof_rej.error_kinds.size() == 1);
  CHECK(proof_rej.error_kinds[0] == modal::CheckErrorKind::NecessitationInLocalSection);

  auto counter = modal::parse_expected(
      "verdict countermodel\nmodel:\nworlds 2\nrelation universal\ndesignated 0\nval q 1\n",
      CaseKind::SemanticCountermodel);
  CHECK(counter.model_text == "worlds 2\nrelation universal\ndesignated 0\nval q 1\n");

  // kind/outcome mismatches are configuration errors
  CHECK_THROWS_AS(modal::parse_expected("status rejected\n", CaseKind::ProofAccept),
                  modal::CasebookError);
  CHECK_THROWS_AS(modal::parse_expected("verdict valid\n", CaseKind::SemanticCountermodel),
                  modal::CasebookError);
  CHECK_THROWS_AS(modal::parse_expected("status maybe\n", CaseKind::ProofAccept),
                  modal::CasebookError);
  CHECK_THROWS_AS(modal::parse_expected("error NoSuchKind\nstatus rejected\n",
                                        CaseKind::ProofReject),
                  modal::CasebookError);
}
