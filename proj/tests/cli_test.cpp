// End-to-end tests against the `modal` binary (spawned as a subprocess).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <filesystem>
#include <fstream>

#include "json.hpp"
#include "support.hpp"

using nlohmann::json;
using testsupport::run_command;

namespace {

std::string shell_quote(const std::string& s) {
  std::string out = "'";
  for (char c : s) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::string cli() { return shell_quote(testsupport::cli_path()); }

std::string cases_flag() { return " --cases " + shell_quote(testsupport::cases_dir()); }

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    path = std::filesystem::temp_directory_path() /
           ("modal_cli_test_" + std::to_string(::getpid()));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  std::string file(const std::string& name, const std::string& content) const {
    std::filesystem::path p = path / name;
    std::ofstream out(p);
    out << content;
    return p.string();
  }
};

}  // namespace

TEST_CASE("fmt: idempotent formatting, usage errors exit 2") {
  auto r = run_command(cli() + " fmt '<>q -> ~[]~q'");
  CHECK(r.exit_code == 0);
  CHECK(r.out == "<>q -> ~[]~q\n");

  auto twice = run_command(cli() + " fmt " + shell_quote(r.out));
  CHECK(twice.out == r.out);

  CHECK(run_command(cli() + " fmt 'p & & q' 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " fmt 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " frobnicate 2>/dev/null").exit_code == 2);
}

TEST_CASE("decide: countermodels print as reusable .km text, exit 1") {
  auto r = run_command(cli() + " decide --logic S5 --local '<>q' --local 'q -> []q' --goal '[]q'");
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("worlds 2\nrelation universal\ndesignated 0\nval q 1\n") !=
        std::string::npos);

  auto valid = run_command(
      cli() + " decide --logic S5 --global 'q -> []q' --local '<>q' --goal '[]q'");
  CHECK(valid.exit_code == 0);
  CHECK(valid.out.find("valid") != std::string::npos);

  // exit codes are a function of the verdict only, not the output mode
  auto json_run = run_command(
      cli() + " decide --logic S5 --local '<>q' --local 'q -> []q' --goal '[]q' --json");
  CHECK(json_run.exit_code == 1);
  json doc = json::parse(json_run.out);
  CHECK(doc["verdict"] == "countermodel");
  CHECK(doc["model"]["worlds"] == 2);
  CHECK(doc["model"]["relation"] == "universal");
  CHECK(doc["model"]["world"] == 0);
  CHECK(doc["model"]["valuation"]["q"] == json::array({1}));
  CHECK(doc.contains("bound"));

  auto vj = run_command(cli() + " decide --logic S5 --global 'q' --goal '[]q' --json");
  CHECK(vj.exit_code == 0);
  json vdoc = json::parse(vj.out);
  CHECK(vdoc["verdict"] == "valid");
  CHECK_FALSE(vdoc.contains("model"));

  auto up_to = run_command(cli() + " decide --logic T --goal '[]p -> p' --json");
  CHECK(up_to.exit_code == 0);
  CHECK(json::parse(up_to.out)["verdict"] == "valid-up-to-bound");

  CHECK(run_command(cli() + " decide --logic S9 --goal 'p' 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " decide --logic S5 2>/dev/null").exit_code == 2);
  // budget overruns are reported as errors, not verdicts
  CHECK(run_command(cli() + " decide --logic K --goal 'p & q' --max-worlds 4 2>/dev/null")
            .exit_code == 2);
}

TEST_CASE("decide: printed countermodel round-trips through eval") {
  TempDir tmp;
  auto r = run_command(cli() + " decide --logic S5 --local '<>q' --local 'q -> []q' --goal '[]q'");
  REQUIRE(r.exit_code == 1);
  // everything from the "worlds" line on is the model
  std::size_t start = r.out.find("worlds ");
  REQUIRE(start != std::string::npos);
  std::string km = tmp.file("counter.km", r.out.substr(start));

  // goal fails at the designated world, premises hold there
  CHECK(run_command(cli() + " eval " + shell_quote(km) + " '[]q'").exit_code == 1);
  CHECK(run_command(cli() + " eval " + shell_quote(km) + " '<>q'").exit_code == 0);
  CHECK(run_command(cli() + " eval " + shell_quote(km) + " 'q -> []q'").exit_code == 0);
}

TEST_CASE("eval: worlds, defaults and warnings") {
  TempDir tmp;
  std::string km = tmp.file("m.km",
                            "worlds 2\nrelation universal\ndesignated 1\nval q 1\n");
  auto at_designated = run_command(cli() + " eval " + shell_quote(km) + " 'q'");
  CHECK(at_designated.exit_code == 0);
  CHECK(at_designated.out == "true\n");

  auto at_zero = run_command(cli() + " eval " + shell_quote(km) + " --world 0 'q'");
  CHECK(at_zero.exit_code == 1);
  CHECK(at_zero.out == "false\n");

  CHECK(run_command(cli() + " eval " + shell_quote(km) + " --world 7 'q' 2>/dev/null")
            .exit_code == 2);
  CHECK(run_command(cli() + " eval /no/such/file.km 'q' 2>/dev/null").exit_code == 2);

  auto warned = run_command(cli() + " eval " + shell_quote(km) + " 'novel | q' 2>&1");
  CHECK(warned.out.find("warning") != std::string::npos);
  CHECK(warned.out.find("novel") != std::string::npos);
}

TEST_CASE("check: exit codes and structured output") {
  std::string dir = testsupport::cases_dir();
  auto ok = run_command(cli() + " check " + shell_quote(dir + "/hartshorne_valid.mpf"));
  CHECK(ok.exit_code == 0);
  CHECK(ok.out.find("accepted") != std::string::npos);

  auto bad = run_command(cli() + " check " + shell_quote(dir + "/anselm_local_faulty.mpf"));
  CHECK(bad.exit_code == 1);
  CHECK(bad.out.find("NecessitationInLocalSection") != std::string::npos);

  auto bad_json = run_command(
      cli() + " check " + shell_quote(dir + "/anselm_local_faulty.mpf") + " --json");
  CHECK(bad_json.exit_code == 1);
  json doc = json::parse(bad_json.out);
  CHECK(doc["status"] == "rejected");
  REQUIRE(doc["errors"].size() == 1);
  CHECK(doc["errors"][0]["label"] == "l3");
  CHECK(doc["errors"][0]["kind"] == "NecessitationInLocalSection");
  CHECK(doc["errors"][0].contains("message"));

  TempDir tmp;
  std::string mangled = tmp.file("broken.mpf", "system S5\nglobal:\n x p ; taut\nlocal:\n");
  CHECK(run_command(cli() + " check " + shell_quote(mangled) + " 2>/dev/null").exit_code == 2);
  CHECK(run_command(cli() + " check /no/such.mpf 2>/dev/null").exit_code == 2);
}

TEST_CASE("casebook: list and run") {
  auto list = run_command(cli() + " casebook list");
  CHECK(list.exit_code == 0);
  CHECK(list.out.find("anselm_local_faulty") != std::string::npos);
  CHECK(list.out.find("proof-reject") != std::string::npos);

  auto list_json = run_command(cli() + " casebook list --json");
  json ldoc = json::parse(list_json.out);
  REQUIRE(ldoc.size() == 7);
  CHECK(ldoc[0]["name"] == "anselm_local_faulty");
  CHECK(ldoc[0].contains("kind"));
  CHECK(ldoc[0].contains("summary"));

  auto all = run_command(cli() + " casebook run --all" + cases_flag());
  CHECK(all.exit_code == 0);
  CHECK(all.out.find("7/7") != std::string::npos);

  auto all_json = run_command(cli() + " casebook run --all --json" + cases_flag());
  CHECK(all_json.exit_code == 0);
  json adoc = json::parse(all_json.out);
  CHECK(adoc["pass"] == true);
  REQUIRE(adoc["cases"].size() == 7);
  for (const auto& c : adoc["cases"]) {
    CHECK(c["pass"] == true);
    CHECK(c.contains("expected"));
    CHECK(c.contains("actual"));
  }

  auto one = run_command(cli() + " casebook run hartshorne_valid --json" + cases_flag());
  CHECK(one.exit_code == 0);
  json odoc = json::parse(one.out);
  CHECK(odoc["name"] == "hartshorne_valid");
  CHECK(odoc["pass"] == true);

  CHECK(run_command(cli() + " casebook run no_such_case" + cases_flag() + " 2>/dev/null")
            .exit_code == 2);
  CHECK(run_command(cli() + " casebook run 2>/dev/null").exit_code == 2);
}

TEST_CASE("casebook: run --all exits 1 when a case fails") {
  // clone the cases and break one payload so its outcome diverges from the
  // stored expectation
  TempDir tmp;
  std::filesystem::path broken = tmp.path / "cases";
  std::filesystem::copy(testsupport::cases_dir(), broken);
  {
    std::ofstream out(broken / "hartshorne_valid.mpf");
    out << "system S5\nglobal:\nlocal:\n l1: q -> []q ; premise\n l2: [](q -> []q) ; nec l1\n";
  }
  auto r = run_command(cli() + " casebook run --all --cases " +
                       shell_quote(broken.string()));
  CHECK(r.exit_code == 1);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("hartshorne_valid") != std::string::npos);
  CHECK(r.out.find("6/7") != std::string::npos);

  auto rj = run_command(cli() + " casebook run --all --json --cases " +
                        shell_quote(broken.string()));
  CHECK(rj.exit_code == 1);
  CHECK(json::parse(rj.out)["pass"] == false);
}

TEST_CASE("no ANSI escapes when output is piped") {
  auto r = run_command(cli() + " casebook run --all" + cases_flag());
  CHECK(r.out.find('\033') == std::string::npos);
  setenv("NO_COLOR", "1", 1);
  auto r2 = run_command(cli() + " check " +
                        shell_quote(testsupport::cases_dir() + "/hartshorne_valid.mpf"));
  CHECK(r2.out.find('\033') == std::string::npos);
  unsetenv("NO_COLOR");
}

TEST_CASE("json output is byte-stable across runs") {
  std::string cmd =
      cli() + " decide --logic S5 --local 'q' --goal '[]q' --json";
  auto a = run_command(cmd);
  auto b = run_command(cmd);
  CHECK(a.exit_code == 1);
  CHECK(a.out == b.out);
}
