#include "modal/proof.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

namespace modal {

const char* to_string(Justification::Kind kind) {
  switch (kind) {
    case Justification::Kind::Premise: return "premise";
    case Justification::Kind::Taut: return "taut";
    case Justification::Kind::AxK: return "axK";
    case Justification::Kind::AxT: return "axT";
    case Justification::Kind::Ax4: return "ax4";
    case Justification::Kind::AxS5: return "ax5";
    case Justification::Kind::Mp: return "mp";
    case Justification::Kind::Nec: return "nec";
  }
  return "?";
}

const char* to_string(CheckErrorKind kind) {
  switch (kind) {
    case CheckErrorKind::UnknownLabel: return "UnknownLabel";
    case CheckErrorKind::ForwardReference: return "ForwardReference";
    case CheckErrorKind::DuplicateLabel: return "DuplicateLabel";
    case CheckErrorKind::NotATautology: return "NotATautology";
    case CheckErrorKind::TooManyVariables: return "TooManyVariables";
    case CheckErrorKind::SchemaMismatch: return "SchemaMismatch";
    case CheckErrorKind::AxiomNotInSystem: return "AxiomNotInSystem";
    case CheckErrorKind::MpMismatch: return "MpMismatch";
    case CheckErrorKind::NecMismatch: return "NecMismatch";
    case CheckErrorKind::NecessitationInLocalSection: return "NecessitationInLocalSection";
    case CheckErrorKind::NecessitationOfLocalLine: return "NecessitationOfLocalLine";
    case CheckErrorKind::GlobalCitesLocal: return "GlobalCitesLocal";
  }
  return "?";
}

std::optional<CheckErrorKind> check_error_kind_from_string(std::string_view name) {
  using K = CheckErrorKind;
  for (K k : {K::UnknownLabel, K::ForwardReference, K::DuplicateLabel, K::NotATautology,
              K::TooManyVariables, K::SchemaMismatch, K::AxiomNotInSystem, K::MpMismatch,
              K::NecMismatch, K::NecessitationInLocalSection, K::NecessitationOfLocalLine,
              K::GlobalCitesLocal})
    if (name == to_string(k)) return k;
  return std::nullopt;
}

std::vector<Formula> Derivation::global_premises() const {
  std::vector<Formula> out;
  for (const Line& l : global_lines)
    if (l.just.kind == Justification::Kind::Premise) out.push_back(l.formula);
  return out;
}

std::vector<Formula> Derivation::local_premises() const {
  std::vector<Formula> out;
  for (const Line& l : local_lines)
    if (l.just.kind == Justification::Kind::Premise) out.push_back(l.formula);
  return out;
}

std::optional<Formula> Derivation::conclusion() const {
  if (!local_lines.empty()) return local_lines.back().formula;
  if (!global_lines.empty()) return global_lines.back().formula;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Tautology checking on the propositional abstraction

namespace {

constexpr std::size_t kMaxTautologyVariables = 20;

// Maps every maximal Box/Diamond/Atom-headed subformula to a variable index.
void abstract_vars(const Formula& f, std::vector<Formula>& vars) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: {
      for (const Formula& v : vars)
        if (v == f) return;
      vars.push_back(f);
      return;
    }
    case Formula::Kind::Not:
      abstract_vars(f.child(), vars);
      return;
    default:
      abstract_vars(f.lhs(), vars);
      abstract_vars(f.rhs(), vars);
      return;
  }
}

bool eval_abstraction(const Formula& f, const std::vector<Formula>& vars,
                      std::uint32_t assignment) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: {
      for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i] == f) return (assignment >> i) & 1;
      throw std::logic_error("abstraction variable not found");
    }
    case Formula::Kind::Not:
      return !eval_abstraction(f.child(), vars, assignment);
    case Formula::Kind::And:
      return eval_abstraction(f.lhs(), vars, assignment) &&
             eval_abstraction(f.rhs(), vars, assignment);
    case Formula::Kind::Or:
      return eval_abstraction(f.lhs(), vars, assignment) ||
             eval_abstraction(f.rhs(), vars, assignment);
    case Formula::Kind::Implies:
      return !eval_abstraction(f.lhs(), vars, assignment) ||
             eval_abstraction(f.rhs(), vars, assignment);
    case Formula::Kind::Iff:
      return eval_abstraction(f.lhs(), vars, assignment) ==
             eval_abstraction(f.rhs(), vars, assignment);
  }
  throw std::logic_error("unreachable");
}

}  // namespace

bool is_tautology_instance(const Formula& f) {
  std::vector<Formula> vars;
  abstract_vars(f, vars);
  if (vars.size() > kMaxTautologyVariables) throw TooManyVariables(vars.size());
  std::uint32_t end = 1u << vars.size();
  for (std::uint32_t assignment = 0; assignment < end; ++assignment)
    if (!eval_abstraction(f, vars, assignment)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Axiom schema matching (on desugared formulas)

namespace {

using Binding = std::map<std::string, Formula>;

std::optional<Binding> match_k(const Formula& f) {
  // [](A -> B) -> ([]A -> []B)
  if (!f.is(Formula::Kind::Implies)) return std::nullopt;
  Formula l = f.lhs(), r = f.rhs();
  if (!l.is(Formula::Kind::Box) || !l.child().is(Formula::Kind::Implies)) return std::nullopt;
  if (!r.is(Formula::Kind::Implies)) return std::nullopt;
  if (!r.lhs().is(Formula::Kind::Box) || !r.rhs().is(Formula::Kind::Box)) return std::nullopt;
  Formula a = l.child().lhs(), b = l.child().rhs();
  if (r.lhs().child() != a || r.rhs().child() != b) return std::nullopt;
  return Binding{{"A", a}, {"B", b}};
}

std::optional<Binding> match_t(const Formula& f) {
  // []A -> A
  if (!f.is(Formula::Kind::Implies) || !f.lhs().is(Formula::Kind::Box)) return std::nullopt;
  if (f.lhs().child() != f.rhs()) return std::nullopt;
  return Binding{{"A", f.rhs()}};
}

std::optional<Binding> match_4(const Formula& f) {
  // []A -> [][]A
  if (!f.is(Formula::Kind::Implies) || !f.lhs().is(Formula::Kind::Box)) return std::nullopt;
  Formula r = f.rhs();
  if (!r.is(Formula::Kind::Box) || !r.child().is(Formula::Kind::Box)) return std::nullopt;
  if (f.lhs() != r.child()) return std::nullopt;
  return Binding{{"A", f.lhs().child()}};
}

std::optional<Binding> match_s5(const Formula& f) {
  // <>[]A -> []A, desugared: ~[]~[]A -> []A
  if (!f.is(Formula::Kind::Implies)) return std::nullopt;
  Formula l = f.lhs(), r = f.rhs();
  if (!r.is(Formula::Kind::Box)) return std::nullopt;
  if (!l.is(Formula::Kind::Not) || !l.child().is(Formula::Kind::Box)) return std::nullopt;
  Formula inner = l.child().child();
  if (!inner.is(Formula::Kind::Not) || !inner.child().is(Formula::Kind::Box)) return std::nullopt;
  if (inner.child() != r) return std::nullopt;
  return Binding{{"A", r.child()}};
}

}  // namespace

std::optional<Binding> match_axiom_schema(Justification::Kind tag, const Formula& f) {
  Formula d = desugar(f);
  switch (tag) {
    case Justification::Kind::AxK: return match_k(d);
    case Justification::Kind::AxT: return match_t(d);
    case Justification::Kind::Ax4: return match_4(d);
    case Justification::Kind::AxS5: return match_s5(d);
    default:
      throw std::invalid_argument("match_axiom_schema: not an axiom tag");
  }
}

bool axiom_in_system(Justification::Kind tag, Logic system) {
  switch (tag) {
    case Justification::Kind::AxK:
      return true;
    case Justification::Kind::AxT:
      return system == Logic::T || system == Logic::S4 || system == Logic::S5;
    case Justification::Kind::Ax4:
      return system == Logic::S4 || system == Logic::S5;
    case Justification::Kind::AxS5:
      return system == Logic::S5;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// The checker

namespace {

struct LinePos {
  Section section;
  std::size_t index;  // position in the combined global++local sequence
};

bool is_axiom_tag(Justification::Kind k) {
  return k == Justification::Kind::AxK || k == Justification::Kind::AxT ||
         k == Justification::Kind::Ax4 || k == Justification::Kind::AxS5;
}

}  // namespace

CheckReport check(const Derivation& d) {
  CheckReport report;
  auto error = [&](const Line& line, CheckErrorKind kind, std::string message) {
    report.errors.push_back({line.label, kind, std::move(message)});
  };

  // First binding wins; later duplicates are flagged and ignored.
  std::unordered_map<std::string, LinePos> labels;
  std::size_t position = 0;
  for (Section section : {Section::Global, Section::Local}) {
    const auto& lines = (section == Section::Global) ? d.global_lines : d.local_lines;
    for (const Line& line : lines) {
      auto [it, inserted] = labels.emplace(line.label, LinePos{section, position});
      if (!inserted)
        error(line, CheckErrorKind::DuplicateLabel,
              "label '" + line.label + "' is already used by an earlier line");
      ++position;
    }
  }

  std::vector<const Line*> all;
  for (const Line& l : d.global_lines) all.push_back(&l);
  for (const Line& l : d.local_lines) all.push_back(&l);
  std::vector<bool> referenced(all.size(), false);

  // Desugared formulas, computed once; Mp and Nec compare these, so the <>
  // and ~[]~ spellings are interchangeable.
  std::vector<Formula> desugared;
  desugared.reserve(all.size());
  for (const Line* l : all) desugared.push_back(desugar(l->formula));

  position = 0;
  for (Section section : {Section::Global, Section::Local}) {
    const auto& lines = (section == Section::Global) ? d.global_lines : d.local_lines;
    for (const Line& line : lines) {
      // Resolves a citation; reports and returns nullopt when illegal.
      auto resolve = [&](const std::string& ref) -> std::optional<std::size_t> {
        auto it = labels.find(ref);
        if (it == labels.end()) {
          error(line, CheckErrorKind::UnknownLabel, "no line labeled '" + ref + "'");
          return std::nullopt;
        }
        LinePos target = it->second;
        if (section == Section::Global && target.section == Section::Local) {
          error(line, CheckErrorKind::GlobalCitesLocal,
                "global-section line cites local-section line '" + ref + "'");
          return std::nullopt;
        }
        if (target.index >= position) {
          error(line, CheckErrorKind::ForwardReference,
                "'" + ref + "' is not an earlier line");
          return std::nullopt;
        }
        referenced[target.index] = true;
        return target.index;
      };

      const Justification& just = line.just;
      switch (just.kind) {
        case Justification::Kind::Premise:
          break;  // section determines the premise kind
        case Justification::Kind::Taut: {
          try {
            if (!is_tautology_instance(desugared[position]))
              error(line, CheckErrorKind::NotATautology,
                    "not a substitution instance of a propositional tautology");
          } catch (const TooManyVariables& e) {
            error(line, CheckErrorKind::TooManyVariables, e.what());
          }
          break;
        }
        case Justification::Kind::AxK:
        case Justification::Kind::AxT:
        case Justification::Kind::Ax4:
        case Justification::Kind::AxS5: {
          if (!axiom_in_system(just.kind, d.system)) {
            error(line, CheckErrorKind::AxiomNotInSystem,
                  std::string(to_string(just.kind)) + " is not an axiom of " +
                      to_string(d.system));
            break;
          }
          if (!match_axiom_schema(just.kind, line.formula))
            error(line, CheckErrorKind::SchemaMismatch,
                  std::string("formula does not match the ") + to_string(just.kind) +
                      " schema");
          break;
        }
        case Justification::Kind::Mp: {
          auto impl = resolve(just.ref1);
          auto ante = resolve(just.ref2);
          if (!impl || !ante) break;
          const Formula& imp_f = desugared[*impl];
          if (!imp_f.is(Formula::Kind::Implies)) {
            error(line, CheckErrorKind::MpMismatch,
                  "line '" + just.ref1 + "' is not an implication");
            break;
          }
          if (imp_f.lhs() != desugared[*ante]) {
            error(line, CheckErrorKind::MpMismatch,
                  "line '" + just.ref2 + "' is not the antecedent of '" + just.ref1 + "'");
            break;
          }
          if (imp_f.rhs() != desugared[position])
            error(line, CheckErrorKind::MpMismatch,
                  "formula is not the consequent of '" + just.ref1 + "'");
          break;
        }
        case Justification::Kind::Nec: {
          if (section == Section::Local) {
            error(line, CheckErrorKind::NecessitationInLocalSection,
                  "necessitation is not allowed in the local section");
            break;
          }
          auto it = labels.find(just.ref1);
          if (it == labels.end()) {
            error(line, CheckErrorKind::UnknownLabel, "no line labeled '" + just.ref1 + "'");
            break;
          }
          if (it->second.section == Section::Local) {
            error(line, CheckErrorKind::NecessitationOfLocalLine,
                  "necessitation may only cite global-section lines; '" + just.ref1 +
                      "' is local");
            break;
          }
          if (it->second.index >= position) {
            error(line, CheckErrorKind::ForwardReference,
                  "'" + just.ref1 + "' is not an earlier line");
            break;
          }
          referenced[it->second.index] = true;
          if (desugared[position] != Formula::box(desugared[it->second.index]))
            error(line, CheckErrorKind::NecMismatch,
                  "formula is not the necessitation of line '" + just.ref1 + "'");
          break;
        }
      }
      ++position;
    }
  }

  for (std::size_t i = 0; i + 1 < all.size(); ++i) {
    const Line& l = *all[i];
    if (!referenced[i] && l.just.kind != Justification::Kind::Premise)
      report.warnings.push_back("line '" + l.label + "' is never referenced");
  }

  report.accepted = report.errors.empty();
  return report;
}

// ---------------------------------------------------------------------------
// Proof files

ProofParseError::ProofParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

bool valid_label(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

Justification parse_justification(const std::string& text, int line_no) {
  std::istringstream in(text);
  std::string head;
  in >> head;
  auto rest_empty = [&]() {
    std::string extra;
    return !(in >> extra);
  };
  if (head == "premise") {
    if (!rest_empty()) throw ProofParseError(line_no, "'premise' takes no arguments");
    return Justification::premise();
  }
  if (head == "taut") {
    if (!rest_empty()) throw ProofParseError(line_no, "'taut' takes no arguments");
    return Justification::taut();
  }
  if (head == "axK" || head == "axT" || head == "ax4" || head == "ax5") {
    if (!rest_empty()) throw ProofParseError(line_no, "'" + head + "' takes no arguments");
    if (head == "axK") return Justification::axiom(Justification::Kind::AxK);
    if (head == "axT") return Justification::axiom(Justification::Kind::AxT);
    if (head == "ax4") return Justification::axiom(Justification::Kind::Ax4);
    return Justification::axiom(Justification::Kind::AxS5);
  }
  if (head == "mp") {
    std::string a, b;
    if (!(in >> a >> b) || !rest_empty())
      throw ProofParseError(line_no, "usage: mp <implication-label> <antecedent-label>");
    return Justification::mp(a, b);
  }
  if (head == "nec") {
    std::string a;
    if (!(in >> a) || !rest_empty()) throw ProofParseError(line_no, "usage: nec <label>");
    return Justification::nec(a);
  }
  throw ProofParseError(line_no, "unknown justification '" + head + "'");
}

}  // namespace

Derivation parse_derivation(std::string_view text) {
  Derivation d;
  enum class State { ExpectSystem, ExpectGlobal, InGlobal, InLocal } state = State::ExpectSystem;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view raw = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = raw.find('#'); hash != std::string_view::npos) raw = raw.substr(0, hash);
    std::string line = trim(raw);
    if (line.empty()) continue;

    if (state == State::ExpectSystem) {
      std::istringstream in(line);
      std::string key, value, extra;
      in >> key >> value;
      if (key != "system" || (in >> extra))
        throw ProofParseError(line_no, "expected 'system <K|T|S4|S5>'");
      auto logic = logic_from_string(value);
      if (!logic) throw ProofParseError(line_no, "unknown system '" + value + "'");
      d.system = *logic;
      state = State::ExpectGlobal;
      continue;
    }
    if (line == "global:") {
      if (state != State::ExpectGlobal)
        throw ProofParseError(line_no, "'global:' must appear exactly once, before 'local:'");
      state = State::InGlobal;
      continue;
    }
    if (line == "local:") {
      if (state != State::InGlobal)
        throw ProofParseError(line_no, "'local:' must come after 'global:'");
      state = State::InLocal;
      continue;
    }
    if (state != State::InGlobal && state != State::InLocal)
      throw ProofParseError(line_no, "expected a 'global:' section header");

    std::size_t colon = line.find(':');
    if (colon == std::string::npos)
      throw ProofParseError(line_no, "expected '<label>: <formula> ; <justification>'");
    std::string label = trim(line.substr(0, colon));
    if (!valid_label(label)) throw ProofParseError(line_no, "invalid label '" + label + "'");
    std::size_t semi = line.find(';', colon + 1);
    if (semi == std::string::npos)
      throw ProofParseError(line_no, "missing ';' before the justification");
    std::string formula_text = line.substr(colon + 1, semi - colon - 1);
    std::string just_text = trim(line.substr(semi + 1));

    Formula f = [&] {
      try {
        return parse_formula(formula_text);
      } catch (const ParseError& e) {
        throw ProofParseError(line_no, std::string("bad formula: ") + e.what());
      }
    }();
    Justification just = parse_justification(just_text, line_no);
    Line entry{label, std::move(f), std::move(just)};
    if (state == State::InGlobal)
      d.global_lines.push_back(std::move(entry));
    else
      d.local_lines.push_back(std::move(entry));
  }

  if (state == State::ExpectSystem) throw ProofParseError(line_no, "missing 'system' line");
  if (state == State::ExpectGlobal) throw ProofParseError(line_no, "missing 'global:' header");
  if (state == State::InGlobal) throw ProofParseError(line_no, "missing 'local:' header");
  return d;
}

std::string print_derivation(const Derivation& d) {
  std::ostringstream out;
  out << "system " << to_string(d.system) << '\n';
  out << "global:\n";
  auto emit = [&](const Line& l) {
    out << "  " << l.label << ": " << print_formula(l.formula) << " ; "
        << to_string(l.just.kind);
    if (l.just.kind == Justification::Kind::Mp)
      out << ' ' << l.just.ref1 << ' ' << l.just.ref2;
    else if (l.just.kind == Justification::Kind::Nec)
      out << ' ' << l.just.ref1;
    out << '\n';
  };
  for (const Line& l : d.global_lines) emit(l);
  out << "local:\n";
  for (const Line& l : d.local_lines) emit(l);
  return out.str();
}

}  // namespace modal
