// Command-line front end for the modal toolkit. Talks to the core library
// exclusively through the C API in modal/modal.h.
//
// Exit codes: 0 success/accepted/valid, 1 rejected/countermodel found,
// 2 usage, parse, or I/O error.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#ifdef _WIN32
#include <io.h>
#define MODAL_ISATTY _isatty(_fileno(stdout))
#else
#include <unistd.h>
#define MODAL_ISATTY isatty(fileno(stdout))
#endif

#include "CLI11.hpp"
#include "json.hpp"
#include "modal/modal.h"

namespace {

using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitRejected = 1;
constexpr int kExitUsage = 2;

struct StringFree {
  void operator()(char* s) const { modal_string_free(s); }
};
using CString = std::unique_ptr<char, StringFree>;

struct FormulaFree {
  void operator()(modal_formula* f) const { modal_formula_free(f); }
};
using FormulaPtr = std::unique_ptr<modal_formula, FormulaFree>;

struct ModelFree {
  void operator()(modal_model* m) const { modal_model_free(m); }
};
using ModelPtr = std::unique_ptr<modal_model, ModelFree>;

struct VerdictFree {
  void operator()(modal_verdict* v) const { modal_verdict_free(v); }
};
using VerdictPtr = std::unique_ptr<modal_verdict, VerdictFree>;

struct DerivationFree {
  void operator()(modal_derivation* d) const { modal_derivation_free(d); }
};
using DerivationPtr = std::unique_ptr<modal_derivation, DerivationFree>;

struct ReportFree {
  void operator()(modal_check_report* r) const { modal_report_free(r); }
};
using ReportPtr = std::unique_ptr<modal_check_report, ReportFree>;

struct CasebookFree {
  void operator()(modal_casebook* cb) const { modal_casebook_free(cb); }
};
using CasebookPtr = std::unique_ptr<modal_casebook, CasebookFree>;

struct OutcomeFree {
  void operator()(modal_case_outcome* o) const { modal_outcome_free(o); }
};
using OutcomePtr = std::unique_ptr<modal_case_outcome, OutcomeFree>;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool use_color() {
  static const bool enabled = MODAL_ISATTY && std::getenv("NO_COLOR") == nullptr;
  return enabled;
}

std::string paint(const std::string& text, const char* code) {
  if (!use_color()) return text;
  return std::string("\033[") + code + "m" + text + "\033[0m";
}

std::string green(const std::string& s) { return paint(s, "32"); }
std::string red(const std::string& s) { return paint(s, "31"); }

[[noreturn]] void die(const std::string& message) { throw UsageError(message); }

FormulaPtr parse_formula_arg(const std::string& text) {
  modal_formula* f = nullptr;
  if (modal_formula_parse(text.c_str(), &f) != MODAL_OK)
    die("cannot parse formula '" + text + "': " + modal_last_error());
  return FormulaPtr(f);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) die("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

modal_logic parse_logic_arg(const std::string& name) {
  if (name == "K") return MODAL_LOGIC_K;
  if (name == "T") return MODAL_LOGIC_T;
  if (name == "S4") return MODAL_LOGIC_S4;
  if (name == "S5") return MODAL_LOGIC_S5;
  die("unknown logic '" + name + "' (expected K, T, S4 or S5)");
}

json model_to_json(const modal_model* m) {
  json out;
  out["worlds"] = modal_model_world_count(m);
  if (modal_model_is_universal(m)) {
    out["relation"] = "universal";
  } else {
    int* pairs = nullptr;
    size_t count = 0;
    modal_model_relation(m, &pairs, &count);
    json rel = json::array();
    for (size_t i = 0; i < count; ++i) rel.push_back({pairs[2 * i], pairs[2 * i + 1]});
    modal_index_array_free(pairs);
    out["relation"] = rel;
  }
  char** names = nullptr;
  size_t atom_count = 0;
  modal_model_atoms(m, &names, &atom_count);
  json val = json::object();
  for (size_t i = 0; i < atom_count; ++i) {
    int* worlds = nullptr;
    size_t world_count = 0;
    modal_model_atom_worlds(m, names[i], &worlds, &world_count);
    json ws = json::array();
    for (size_t w = 0; w < world_count; ++w) ws.push_back(worlds[w]);
    modal_index_array_free(worlds);
    val[names[i]] = ws;
  }
  modal_string_array_free(names, atom_count);
  out["valuation"] = val;
  return out;
}

// ---- fmt -------------------------------------------------------------------

int run_fmt(const std::string& formula_text) {
  FormulaPtr f = parse_formula_arg(formula_text);
  CString printed;
  {
    char* raw = nullptr;
    modal_formula_print(f.get(), &raw);
    printed.reset(raw);
  }
  std::cout << printed.get() << "\n";
  return kExitOk;
}

// ---- eval ------------------------------------------------------------------

int run_eval(const std::string& model_path, const std::string& formula_text,
             std::optional<int> world) {
  std::string km = read_file(model_path);
  modal_model* raw_model = nullptr;
  if (modal_model_parse(km.c_str(), &raw_model) != MODAL_OK)
    die("cannot parse model '" + model_path + "': " + modal_last_error());
  ModelPtr model(raw_model);
  FormulaPtr f = parse_formula_arg(formula_text);

  {  // warn about atoms the model never mentions; they read as false
    char** model_atoms = nullptr;
    size_t model_atom_count = 0;
    modal_model_atoms(model.get(), &model_atoms, &model_atom_count);
    char** formula_atoms = nullptr;
    size_t formula_atom_count = 0;
    modal_formula_atoms(f.get(), &formula_atoms, &formula_atom_count);
    for (size_t i = 0; i < formula_atom_count; ++i) {
      bool known = false;
      for (size_t j = 0; j < model_atom_count && !known; ++j)
        known = (std::string(formula_atoms[i]) == model_atoms[j]);
      if (!known)
        std::cerr << "warning: atom '" << formula_atoms[i]
                  << "' has no valuation in the model; it reads as false everywhere\n";
    }
    modal_string_array_free(formula_atoms, formula_atom_count);
    modal_string_array_free(model_atoms, model_atom_count);
  }

  int at = world.value_or(modal_model_designated(model.get()));
  if (at < 0) at = 0;
  int truth = 0;
  if (modal_model_eval(model.get(), at, f.get(), &truth) != MODAL_OK)
    die(modal_last_error());
  std::cout << (truth ? "true" : "false") << "\n";
  return truth ? kExitOk : kExitRejected;
}

// ---- decide ----------------------------------------------------------------

int run_decide(const std::string& logic_name, const std::vector<std::string>& global_texts,
               const std::vector<std::string>& local_texts, const std::string& goal_text,
               int max_worlds, bool as_json) {
  modal_logic logic = parse_logic_arg(logic_name);
  std::vector<FormulaPtr> owned;
  std::vector<const modal_formula*> globals, locals;
  for (const std::string& t : global_texts) {
    owned.push_back(parse_formula_arg(t));
    globals.push_back(owned.back().get());
  }
  for (const std::string& t : local_texts) {
    owned.push_back(parse_formula_arg(t));
    locals.push_back(owned.back().get());
  }
  FormulaPtr goal = parse_formula_arg(goal_text);

  modal_verdict* raw = nullptr;
  modal_status status =
      modal_decide(logic, globals.data(), globals.size(), locals.data(), locals.size(),
                   goal.get(), max_worlds, &raw);
  if (status != MODAL_OK) die(modal_last_error());
  VerdictPtr verdict(raw);

  modal_verdict_kind kind = modal_verdict_get_kind(verdict.get());
  int bound = modal_verdict_bound(verdict.get());

  if (as_json) {
    json out;
    out["bound"] = bound;
    switch (kind) {
      case MODAL_VERDICT_VALID: out["verdict"] = "valid"; break;
      case MODAL_VERDICT_VALID_UP_TO_BOUND: out["verdict"] = "valid-up-to-bound"; break;
      case MODAL_VERDICT_COUNTERMODEL: out["verdict"] = "countermodel"; break;
    }
    if (kind == MODAL_VERDICT_COUNTERMODEL) {
      json model = model_to_json(modal_verdict_model(verdict.get()));
      model["world"] = modal_verdict_world(verdict.get());
      out["model"] = model;
    }
    std::cout << out.dump(2) << "\n";
  } else {
    switch (kind) {
      case MODAL_VERDICT_VALID:
        std::cout << green("valid") << " (conclusive at the small-model bound, " << bound
                  << (bound == 1 ? " world" : " worlds") << ")\n";
        break;
      case MODAL_VERDICT_VALID_UP_TO_BOUND:
        std::cout << green("valid up to bound") << ": no countermodel with at most " << bound
                  << (bound == 1 ? " world" : " worlds") << " (search incomplete)\n";
        break;
      case MODAL_VERDICT_COUNTERMODEL: {
        std::cout << red("countermodel") << " found at world "
                  << modal_verdict_world(verdict.get()) << ":\n";
        char* km = nullptr;
        modal_model_print(modal_verdict_model(verdict.get()), &km);
        CString owned_km(km);
        std::cout << owned_km.get();
        break;
      }
    }
  }
  return kind == MODAL_VERDICT_COUNTERMODEL ? kExitRejected : kExitOk;
}

// ---- check -----------------------------------------------------------------

int run_check(const std::string& path, bool as_json) {
  std::string text = read_file(path);
  modal_derivation* raw_d = nullptr;
  if (modal_derivation_parse(text.c_str(), &raw_d) != MODAL_OK)
    die("cannot parse '" + path + "': " + modal_last_error());
  DerivationPtr derivation(raw_d);

  modal_check_report* raw_r = nullptr;
  if (modal_derivation_check(derivation.get(), &raw_r) != MODAL_OK) die(modal_last_error());
  ReportPtr report(raw_r);

  bool accepted = modal_report_accepted(report.get()) != 0;
  if (as_json) {
    json out;
    out["status"] = accepted ? "accepted" : "rejected";
    json errors = json::array();
    for (size_t i = 0; i < modal_report_error_count(report.get()); ++i) {
      errors.push_back({{"label", modal_report_error_label(report.get(), i)},
                        {"kind", modal_report_error_kind(report.get(), i)},
                        {"message", modal_report_error_message(report.get(), i)}});
    }
    out["errors"] = errors;
    json warnings = json::array();
    for (size_t i = 0; i < modal_report_warning_count(report.get()); ++i)
      warnings.push_back(modal_report_warning(report.get(), i));
    out["warnings"] = warnings;
    std::cout << out.dump(2) << "\n";
  } else {
    for (size_t i = 0; i < modal_report_warning_count(report.get()); ++i)
      std::cerr << "warning: " << modal_report_warning(report.get(), i) << "\n";
    if (accepted) {
      std::cout << green("accepted") << "\n";
    } else {
      std::cout << red("rejected") << "\n";
      for (size_t i = 0; i < modal_report_error_count(report.get()); ++i) {
        std::cout << "  " << modal_report_error_label(report.get(), i) << ": "
                  << modal_report_error_kind(report.get(), i) << ": "
                  << modal_report_error_message(report.get(), i) << "\n";
      }
    }
  }
  return accepted ? kExitOk : kExitRejected;
}

// ---- casebook ----------------------------------------------------------------

std::string resolve_cases_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("MODAL_CASES_DIR")) return env;
  std::error_code ec;
  if (std::filesystem::is_directory("cases", ec)) return "cases";
#ifdef MODAL_DEFAULT_CASES_DIR
  if (std::filesystem::is_directory(MODAL_DEFAULT_CASES_DIR, ec))
    return MODAL_DEFAULT_CASES_DIR;
#endif
  die("cannot locate the cases directory; pass --cases or set MODAL_CASES_DIR");
}

int run_casebook_list(bool as_json) {
  // Listing needs no directory, only the static catalog.
  size_t count = modal_casebook_count(nullptr);
  if (as_json) {
    json out = json::array();
    for (size_t i = 0; i < count; ++i) {
      out.push_back({{"name", modal_casebook_name(nullptr, i)},
                     {"kind", modal_casebook_kind(nullptr, i)},
                     {"summary", modal_casebook_summary(nullptr, i)}});
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
  }
  size_t name_width = 0, kind_width = 0;
  for (size_t i = 0; i < count; ++i) {
    name_width = std::max(name_width, std::string(modal_casebook_name(nullptr, i)).size());
    kind_width = std::max(kind_width, std::string(modal_casebook_kind(nullptr, i)).size());
  }
  for (size_t i = 0; i < count; ++i) {
    std::string name = modal_casebook_name(nullptr, i);
    std::string kind = modal_casebook_kind(nullptr, i);
    std::cout << name << std::string(name_width - name.size() + 2, ' ') << kind
              << std::string(kind_width - kind.size() + 2, ' ')
              << modal_casebook_summary(nullptr, i) << "\n";
  }
  return kExitOk;
}

int run_casebook_run(const std::string& cases_dir_flag, const std::string& name, bool all,
                     bool as_json) {
  std::string dir = resolve_cases_dir(cases_dir_flag);
  modal_casebook* raw_cb = nullptr;
  if (modal_casebook_open(dir.c_str(), &raw_cb) != MODAL_OK)
    die("cannot open cases directory '" + dir + "': " + modal_last_error());
  CasebookPtr cb(raw_cb);

  std::vector<std::string> names;
  if (all) {
    for (size_t i = 0; i < modal_casebook_count(cb.get()); ++i)
      names.push_back(modal_casebook_name(cb.get(), i));
  } else {
    names.push_back(name);
  }

  bool all_pass = true;
  size_t passed = 0;
  json cases = json::array();
  for (const std::string& case_name : names) {
    modal_case_outcome* raw_o = nullptr;
    if (modal_casebook_run(cb.get(), case_name.c_str(), &raw_o) != MODAL_OK)
      die(modal_last_error());
    OutcomePtr outcome(raw_o);

    bool pass = modal_outcome_pass(outcome.get()) != 0;
    all_pass = all_pass && pass;
    if (pass) ++passed;
    if (as_json) {
      cases.push_back({{"name", modal_outcome_name(outcome.get())},
                       {"expected", modal_outcome_expected(outcome.get())},
                       {"actual", modal_outcome_actual(outcome.get())},
                       {"pass", pass}});
    } else {
      std::cout << (pass ? green("PASS") : red("FAIL")) << "  " << case_name;
      if (!pass)
        std::cout << "  (expected " << modal_outcome_expected(outcome.get()) << ", got "
                  << modal_outcome_actual(outcome.get()) << ")";
      std::cout << "\n";
    }
  }

  if (as_json) {
    if (all) {
      json out;
      out["cases"] = cases;
      out["pass"] = all_pass;
      std::cout << out.dump(2) << "\n";
    } else {
      std::cout << cases.front().dump(2) << "\n";
    }
  } else if (all) {
    std::cout << passed << "/" << names.size() << " cases passed\n";
  }
  return all_pass ? kExitOk : kExitRejected;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"modal: S5 toolkit with local/global assumption discipline"};
  app.require_subcommand(1);

  auto* fmt = app.add_subcommand("fmt", "Parse a formula and reprint it normalized");
  std::string fmt_formula;
  fmt->add_option("formula", fmt_formula, "formula text")->required();

  auto* eval = app.add_subcommand("eval", "Evaluate a formula in a Kripke model (.km)");
  std::string eval_model, eval_formula;
  std::optional<int> eval_world;
  eval->add_option("model", eval_model, "model file (.km)")->required();
  eval->add_option("formula", eval_formula, "formula text")->required();
  eval->add_option("--world", eval_world, "world index (default: the designated world)");

  auto* decide = app.add_subcommand("decide", "Decide a local/global consequence query");
  std::string decide_logic = "S5", decide_goal;
  std::vector<std::string> decide_globals, decide_locals;
  int decide_max_worlds = 0;
  bool decide_json = false;
  decide->add_option("--logic", decide_logic, "K, T, S4 or S5")->required();
  decide->add_option("--global", decide_globals, "global premise (repeatable)");
  decide->add_option("--local", decide_locals, "local premise (repeatable)");
  decide->add_option("--goal", decide_goal, "goal formula")->required();
  decide->add_option("--max-worlds", decide_max_worlds,
                     "cap the searched world count (default: S5 small-model bound, else 3)")
      ->check(CLI::PositiveNumber);
  decide->add_flag("--json", decide_json, "emit one JSON document");

  auto* check = app.add_subcommand("check", "Check a two-section derivation (.mpf)");
  std::string check_file;
  bool check_json = false;
  check->add_option("file", check_file, "proof file (.mpf)")->required();
  check->add_flag("--json", check_json, "emit one JSON document");

  auto* casebook = app.add_subcommand("casebook", "Inspect or run the bundled casebook");
  casebook->require_subcommand(1);
  std::string cases_dir_flag;
  casebook->add_option("--cases", cases_dir_flag, "cases directory (default: $MODAL_CASES_DIR or ./cases)");

  auto* cb_list = casebook->add_subcommand("list", "List the bundled cases");
  cb_list->fallthrough();
  bool list_json = false;
  cb_list->add_flag("--json", list_json, "emit one JSON document");

  auto* cb_run = casebook->add_subcommand("run", "Run one case (or --all)");
  cb_run->fallthrough();
  std::string run_name;
  bool run_all = false, run_json = false;
  cb_run->add_option("name", run_name, "case name");
  cb_run->add_flag("--all", run_all, "run every case in catalog order");
  cb_run->add_flag("--json", run_json, "emit one JSON document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n";
    // Show the grammar of the offending command.
    CLI::App* failed = &app;
    while (!failed->get_subcommands().empty()) failed = failed->get_subcommands().back();
    std::cerr << failed->help();
    return kExitUsage;
  }

  try {
    if (fmt->parsed()) return run_fmt(fmt_formula);
    if (eval->parsed()) return run_eval(eval_model, eval_formula, eval_world);
    if (decide->parsed())
      return run_decide(decide_logic, decide_globals, decide_locals, decide_goal,
                        decide_max_worlds, decide_json);
    if (check->parsed()) return run_check(check_file, check_json);
    if (casebook->parsed()) {
      if (cb_list->parsed()) return run_casebook_list(list_json);
      if (cb_run->parsed()) {
        if (!run_all && run_name.empty()) die("give a case name or --all");
        if (run_all && !run_name.empty())
          die("give either a case name or --all, not both");
        return run_casebook_run(cases_dir_flag, run_name, run_all, run_json);
      }
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
