#include "modal/casebook.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace modal {

const char* to_string(CaseKind kind) {
  switch (kind) {
    case CaseKind::ProofAccept: return "proof-accept";
    case CaseKind::ProofReject: return "proof-reject";
    case CaseKind::SemanticValid: return "semantic-valid";
    case CaseKind::SemanticCountermodel: return "semantic-countermodel";
  }
  return "?";
}

const std::vector<CaseInfo>& case_catalog() {
  static const std::vector<CaseInfo> catalog = {
      {"anselm_local_faulty", CaseKind::ProofReject, "anselm_local_faulty.mpf",
       "anselm_local_faulty.expected",
       "necessitation applied to a locally assumed Anselm principle is rejected",
       "Anselm's principle q -> []q (what exists necessarily exists, applied to God) is "
       "assumed as a local premise together with the possibility premise ~[]~q, and the "
       "script then necessitates the principle. Necessitation is sound for theorems and "
       "global assumptions only, so the kernel rejects the step: a local assumption is "
       "known to hold at a single world, which says nothing about its necessity.",
       "hartshorne_valid"},
      {"anselm_local_countermodel", CaseKind::SemanticCountermodel,
       "anselm_local_countermodel.query", "anselm_local_countermodel.expected",
       "with both premises local, a two-world model refutes []q",
       "Semantic side of the same misstep: when <>q and q -> []q are true merely at the "
       "actual world, []q does not follow. A two-world universal model with q true only "
       "at the other world satisfies both premises at world 0 and refutes []q there.",
       ""},
      {"hartshorne_valid", CaseKind::ProofAccept, "hartshorne_valid.mpf",
       "hartshorne_valid.expected",
       "Hartshorne's derivation from the necessitated Anselm principle is accepted",
       "With Anselm's principle strengthened to the necessitated global premise "
       "[](q -> []q), the classic S5 derivation goes through: distributing the box gives "
       "<>q -> <>[]q, the characteristic S5 axiom gives <>[]q -> []q, and the local "
       "possibility premise closes the argument with []q.",
       ""},
      {"hartshorne_semantic", CaseKind::SemanticValid, "hartshorne_semantic.query",
       "hartshorne_semantic.expected",
       "reading Anselm's principle globally validates the argument",
       "Reading q -> []q as a global assumption, the argument is semantically watertight: "
       "in any universal model where the principle holds at every world, q is either true "
       "everywhere or false everywhere, so the local premise <>q forces []q.",
       ""},
      {"goedel_steps_faulty", CaseKind::ProofReject, "goedel_steps_faulty.mpf",
       "goedel_steps_faulty.expected",
       "necessitating e -> []e from unnecessitated axioms is rejected",
       "Godel's note derives e -> []e (e abbreviating 'some godlike being exists') from "
       "axioms stated in unnecessitated form and then necessitates it on the way to "
       "<>e -> []e. With the premise available only locally, that necessitation step is "
       "illegal, and the kernel flags exactly it.",
       "goedel_steps_repaired"},
      {"goedel_steps_repaired", CaseKind::ProofAccept, "goedel_steps_repaired.mpf",
       "goedel_steps_repaired.expected",
       "assuming e -> []e globally repairs the three-step chain",
       "The repair: take e -> []e as a global premise. Necessitation now applies, the "
       "diamond chain gives <>e -> <>[]e, the S5 axiom collapses <>[]e to []e, and the "
       "local possibility premise <>e yields []e.",
       ""},
      {"nec_local_failure", CaseKind::SemanticCountermodel, "nec_local_failure.query",
       "nec_local_failure.expected",
       "a bare local premise never licenses its own necessitation",
       "The smallest demonstration that local truth does not propagate: q alone at a "
       "world does not force []q. The countermodel makes q true at the designated world "
       "and false elsewhere.",
       ""},
  };
  return catalog;
}

const CaseInfo* find_case(const std::string& name) {
  for (const CaseInfo& c : case_catalog())
    if (c.name == name) return &c;
  return nullptr;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CasebookError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// ---------------------------------------------------------------------------
// Query files

ConsequenceQuery parse_query(std::string_view text) {
  std::optional<Logic> logic;
  std::vector<Formula> globals, locals;
  std::optional<Formula> goal;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line{raw};
    std::istringstream in(line);
    std::string key;
    if (!(in >> key)) continue;

    std::string rest;
    std::getline(in, rest);
    auto parse_rest = [&](const char* what) {
      try {
        return parse_formula(rest);
      } catch (const ParseError& e) {
        throw CasebookError("query line " + std::to_string(line_no) + ": bad " + what +
                            " formula: " + e.what());
      }
    };

    if (key == "logic") {
      if (logic) throw CasebookError("query line " + std::to_string(line_no) +
                                     ": duplicate 'logic'");
      std::istringstream rin(rest);
      std::string value, extra;
      if (!(rin >> value) || (rin >> extra))
        throw CasebookError("query line " + std::to_string(line_no) + ": usage: logic <K|T|S4|S5>");
      logic = logic_from_string(value);
      if (!logic)
        throw CasebookError("query line " + std::to_string(line_no) + ": unknown logic '" +
                            value + "'");
    } else if (key == "global") {
      globals.push_back(parse_rest("global"));
    } else if (key == "local") {
      locals.push_back(parse_rest("local"));
    } else if (key == "goal") {
      if (goal) throw CasebookError("query line " + std::to_string(line_no) +
                                    ": duplicate 'goal'");
      goal = parse_rest("goal");
    } else {
      throw CasebookError("query line " + std::to_string(line_no) + ": unknown key '" + key +
                          "'");
    }
  }
  if (!logic) throw CasebookError("query is missing a 'logic' line");
  if (!goal) throw CasebookError("query is missing a 'goal' line");
  return ConsequenceQuery{*logic, std::move(globals), std::move(locals), std::move(*goal)};
}

// ---------------------------------------------------------------------------
// Expected-outcome files

ExpectedOutcome parse_expected(std::string_view text, CaseKind kind) {
  ExpectedOutcome out;
  out.kind = kind;
  bool saw_header = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    std::size_t next = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::istringstream in{std::string(line)};
    std::string key;
    if (!(in >> key)) {
      pos = next;
      continue;
    }

    if (key == "status") {
      std::string value;
      in >> value;
      if (value != "accepted" && value != "rejected")
        throw CasebookError("expected line " + std::to_string(line_no) +
                            ": status must be accepted or rejected");
      out.accepted = (value == "accepted");
      saw_header = true;
    } else if (key == "error") {
      std::string value;
      in >> value;
      auto k = check_error_kind_from_string(value);
      if (!k)
        throw CasebookError("expected line " + std::to_string(line_no) +
                            ": unknown error kind '" + value + "'");
      out.error_kinds.push_back(*k);
    } else if (key == "verdict") {
      std::string value;
      in >> value;
      if (value == "valid") out.verdict = Verdict::Kind::Valid;
      else if (value == "valid-up-to-bound") out.verdict = Verdict::Kind::ValidUpToBound;
      else if (value == "countermodel") out.verdict = Verdict::Kind::Countermodel;
      else
        throw CasebookError("expected line " + std::to_string(line_no) +
                            ": unknown verdict '" + value + "'");
      saw_header = true;
    } else if (key == "model:") {
      // Everything after this marker is the exact .km text.
      out.model_text = std::string(text.substr(next));
      break;
    } else {
      throw CasebookError("expected line " + std::to_string(line_no) + ": unknown key '" +
                          key + "'");
    }
    pos = next;
  }

  if (!saw_header) throw CasebookError("expected file lacks a status/verdict line");
  bool is_proof = kind == CaseKind::ProofAccept || kind == CaseKind::ProofReject;
  if (is_proof && (kind == CaseKind::ProofAccept) != out.accepted)
    throw CasebookError("expected outcome is inconsistent with the case kind");
  if (kind == CaseKind::SemanticValid && out.verdict != Verdict::Kind::Valid)
    throw CasebookError("expected outcome is inconsistent with the case kind");
  if (kind == CaseKind::SemanticCountermodel) {
    if (out.verdict != Verdict::Kind::Countermodel || out.model_text.empty())
      throw CasebookError("countermodel case needs a 'model:' section");
    try {
      parse_model(out.model_text);  // stored text must be well-formed .km
    } catch (const ModelParseError& e) {
      throw CasebookError(std::string("stored model text is not valid .km: ") + e.what());
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Running cases

namespace {

std::string one_line(std::string text) {
  while (!text.empty() && text.back() == '\n') text.pop_back();
  std::string out;
  for (char c : text) out += (c == '\n') ? std::string("; ") : std::string(1, c);
  return out;
}

std::string describe_report(bool accepted, const std::vector<CheckErrorKind>& kinds) {
  if (accepted) return "accepted";
  std::string out = "rejected [";
  for (std::size_t i = 0; i < kinds.size(); ++i) {
    if (i) out += ", ";
    out += to_string(kinds[i]);
  }
  return out + "]";
}

}  // namespace

CaseOutcome run_case(const std::string& cases_dir, const std::string& name) {
  const CaseInfo* info = find_case(name);
  if (!info) throw UnknownCase(name);

  std::string payload = read_text_file(cases_dir + "/" + info->payload_file);
  ExpectedOutcome expected =
      parse_expected(read_text_file(cases_dir + "/" + info->expected_file), info->kind);

  CaseOutcome out;
  out.name = name;

  if (info->kind == CaseKind::ProofAccept || info->kind == CaseKind::ProofReject) {
    Derivation d = parse_derivation(payload);
    CheckReport report = check(d);
    std::vector<CheckErrorKind> actual_kinds;
    for (const CheckError& e : report.errors) actual_kinds.push_back(e.kind);

    std::vector<CheckErrorKind> want = expected.error_kinds;
    std::vector<CheckErrorKind> got = actual_kinds;
    std::sort(want.begin(), want.end());
    std::sort(got.begin(), got.end());

    out.expected = describe_report(expected.accepted, expected.error_kinds);
    out.actual = describe_report(report.accepted, actual_kinds);
    out.pass = (report.accepted == expected.accepted) && (want == got);
    return out;
  }

  ConsequenceQuery q = parse_query(payload);
  Verdict v = decide(q.logic, q.globals, q.locals, q.goal);
  if (expected.verdict == Verdict::Kind::Countermodel) {
    out.expected = std::string("countermodel {") + one_line(expected.model_text) + "}";
  } else {
    out.expected = to_string(expected.verdict);
  }
  if (v.kind == Verdict::Kind::Countermodel) {
    std::string printed = print_model(*v.model);
    out.actual = std::string("countermodel {") + one_line(printed) + "}";
    out.pass = (expected.verdict == Verdict::Kind::Countermodel) &&
               (printed == expected.model_text);  // byte-for-byte
  } else {
    out.actual = to_string(v.kind);
    out.pass = (v.kind == expected.verdict);
  }
  return out;
}

std::vector<CaseOutcome> run_all_cases(const std::string& cases_dir) {
  std::vector<CaseOutcome> out;
  for (const CaseInfo& c : case_catalog()) out.push_back(run_case(cases_dir, c.name));
  return out;
}

}  // namespace modal
