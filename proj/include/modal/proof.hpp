#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "modal/formula.hpp"
#include "modal/semantics.hpp"

namespace modal {

// Two-part Hilbert derivations. The global section comes first and is the
// only place where necessitation is allowed; the local section follows and
// may cite any earlier line, but never use necessitation.

struct Justification {
  enum class Kind { Premise, Taut, AxK, AxT, Ax4, AxS5, Mp, Nec };

  Kind kind = Kind::Premise;
  std::string ref1;  // Mp: implication line; Nec: necessitated line
  std::string ref2;  // Mp: antecedent line

  static Justification premise() { return {Kind::Premise, {}, {}}; }
  static Justification taut() { return {Kind::Taut, {}, {}}; }
  static Justification axiom(Kind tag) { return {tag, {}, {}}; }
  static Justification mp(std::string implication, std::string antecedent) {
    return {Kind::Mp, std::move(implication), std::move(antecedent)};
  }
  static Justification nec(std::string from) { return {Kind::Nec, std::move(from), {}}; }
};

const char* to_string(Justification::Kind kind);

struct Line {
  std::string label;
  Formula formula;
  Justification just;
};

enum class Section { Global, Local };

struct Derivation {
  Logic system = Logic::S5;
  std::vector<Line> global_lines;
  std::vector<Line> local_lines;

  std::vector<Formula> global_premises() const;
  std::vector<Formula> local_premises() const;
  // The last line of the script (local section when nonempty).
  std::optional<Formula> conclusion() const;
};

enum class CheckErrorKind {
  UnknownLabel,
  ForwardReference,
  DuplicateLabel,
  NotATautology,
  TooManyVariables,
  SchemaMismatch,
  AxiomNotInSystem,
  MpMismatch,
  NecMismatch,
  NecessitationInLocalSection,
  NecessitationOfLocalLine,
  GlobalCitesLocal,
};

const char* to_string(CheckErrorKind kind);
std::optional<CheckErrorKind> check_error_kind_from_string(std::string_view name);

struct CheckError {
  std::string label;
  CheckErrorKind kind;
  std::string message;
};

struct CheckReport {
  bool accepted = false;  // true iff errors is empty
  std::vector<CheckError> errors;
  std::vector<std::string> warnings;
};

class TooManyVariables : public std::runtime_error {
 public:
  explicit TooManyVariables(std::size_t count)
      : std::runtime_error("tautology check abstraction needs " + std::to_string(count) +
                           " variables; the limit is 20") {}
};

// Abstracts every maximal Box-, Diamond-, or Atom-headed subformula as a
// propositional variable and decides truth-table validity of the result.
// Throws TooManyVariables past 20 distinct variables.
bool is_tautology_instance(const Formula& f);

// Matches desugar(f) against the desugared schema:
//   AxK  [](A -> B) -> ([]A -> []B)
//   AxT  []A -> A
//   Ax4  []A -> [][]A
//   AxS5 <>[]A -> []A
// On success returns the metavariable binding (keys "A" and, for K, "B").
std::optional<std::map<std::string, Formula>> match_axiom_schema(Justification::Kind tag,
                                                                 const Formula& f);

// True when the axiom tag is part of the given system's axiomatization
// (K < T < S4 < S5, cumulatively).
bool axiom_in_system(Justification::Kind tag, Logic system);

// Checks every line and reports all defects, not just the first. Premises
// are legal in either section (their section fixes their kind); tautologies
// and axiom instances are legal anywhere; Mp and Nec compare formulas modulo
// desugaring. Global lines may cite only global lines.
CheckReport check(const Derivation& d);

class ProofParseError : public std::runtime_error {
 public:
  ProofParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Proof file format (.mpf), line oriented:
//   system S5          (or K | T | S4)
//   global:
//     <label>: <formula> ; <justification>
//   local:
//     ...
// Justifications: premise | taut | axK | axT | ax4 | ax5 |
//                 mp <implication-label> <antecedent-label> | nec <label>.
// `#` starts a comment. Both sections may be empty.
Derivation parse_derivation(std::string_view text);

// Renders a derivation back into .mpf syntax (formulas reprinted minimally).
std::string print_derivation(const Derivation& d);

}  // namespace modal
