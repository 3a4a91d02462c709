// Shared helpers for the test suites: deterministic random generators for
// formulas, queries and derivations, a brute-force countermodel search used
// as an independent oracle, and a tiny subprocess runner for CLI tests.
#pragma once

#include <array>
#include <cstdio>
#include <cstdlib>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "modal/formula.hpp"
#include "modal/proof.hpp"
#include "modal/semantics.hpp"

namespace testsupport {

inline std::string cases_dir() {
  if (const char* env = std::getenv("MODAL_CASES_DIR")) return env;
#ifdef MODAL_CASES_DIR_DEFAULT
  return MODAL_CASES_DIR_DEFAULT;
#else
  return "cases";
#endif
}

inline std::string cli_path() {
  if (const char* env = std::getenv("MODAL_CLI")) return env;
#ifdef MODAL_CLI_PATH_DEFAULT
  return MODAL_CLI_PATH_DEFAULT;
#else
  return "modal";
#endif
}

struct CommandResult {
  int exit_code = -1;
  std::string out;
};

// Runs a shell command, capturing stdout. Redirect inside `cmd` to capture
// or silence stderr.
inline CommandResult run_command(const std::string& cmd) {
  CommandResult result;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) return result;
  std::array<char, 4096> buf{};
  size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) result.out.append(buf.data(), n);
  int status = pclose(pipe);
  if (WIFEXITED(status)) result.exit_code = WEXITSTATUS(status);
  return result;
}

// ---------------------------------------------------------------------------
// Random formulas

struct FormulaGen {
  int max_depth = 8;
  std::vector<std::string> atoms = {"p", "q", "r", "s"};
  // weights: atom, not, and, or, implies, iff, box, diamond
  std::array<int, 8> weights = {24, 12, 10, 10, 10, 6, 14, 14};
};

inline modal::Formula random_formula(std::mt19937& rng, const FormulaGen& gen, int depth = 0) {
  using modal::Formula;
  auto pick_atom = [&] {
    std::uniform_int_distribution<std::size_t> d(0, gen.atoms.size() - 1);
    return Formula::atom(gen.atoms[d(rng)]);
  };
  if (depth >= gen.max_depth) return pick_atom();

  int total = 0;
  for (int w : gen.weights) total += w;
  std::uniform_int_distribution<int> d(0, total - 1);
  int roll = d(rng);
  int kind = 0;
  for (; kind < 8; ++kind) {
    roll -= gen.weights[kind];
    if (roll < 0) break;
  }
  switch (kind) {
    case 0: return pick_atom();
    case 1: return Formula::neg(random_formula(rng, gen, depth + 1));
    case 2:
      return Formula::conj(random_formula(rng, gen, depth + 1),
                           random_formula(rng, gen, depth + 1));
    case 3:
      return Formula::disj(random_formula(rng, gen, depth + 1),
                           random_formula(rng, gen, depth + 1));
    case 4:
      return Formula::implies(random_formula(rng, gen, depth + 1),
                              random_formula(rng, gen, depth + 1));
    case 5:
      return Formula::iff(random_formula(rng, gen, depth + 1),
                          random_formula(rng, gen, depth + 1));
    case 6: return Formula::box(random_formula(rng, gen, depth + 1));
    default: return Formula::diamond(random_formula(rng, gen, depth + 1));
  }
}

// ---------------------------------------------------------------------------
// Random consequence queries, kept small enough that both the decision
// procedure and the +2-world brute force stay cheap.

struct RandomQuery {
  std::vector<modal::Formula> globals;
  std::vector<modal::Formula> locals;
  modal::Formula goal;
};

inline std::size_t distinct_box_count(const RandomQuery& q) {
  std::vector<modal::Formula> boxes;
  auto add = [&](const modal::Formula& f) {
    for (const modal::Formula& b : modal::box_subformulas(modal::desugar(f))) {
      bool seen = false;
      for (const modal::Formula& known : boxes)
        if (known == b) { seen = true; break; }
      if (!seen) boxes.push_back(b);
    }
  };
  for (const auto& f : q.globals) add(f);
  for (const auto& f : q.locals) add(f);
  add(q.goal);
  return boxes.size();
}

// Queries over <= 2 atoms and depth <= 3; resampled until the desugared
// query set has at most `max_boxes` distinct Box-subformulas so the search
// spaces stay tiny.
inline RandomQuery random_query(std::mt19937& rng, std::size_t max_boxes = 4) {
  FormulaGen gen;
  gen.max_depth = 3;
  gen.atoms = {"p", "q"};
  while (true) {
    std::uniform_int_distribution<int> premise_count(0, 2);
    RandomQuery q{{}, {}, random_formula(rng, gen)};
    int num_globals = premise_count(rng);
    int num_locals = premise_count(rng);
    for (int i = 0; i < num_globals; ++i) q.globals.push_back(random_formula(rng, gen));
    for (int i = 0; i < num_locals; ++i) q.locals.push_back(random_formula(rng, gen));
    if (distinct_box_count(q) <= max_boxes) return q;
  }
}

// ---------------------------------------------------------------------------
// Brute-force countermodel search: an oracle independent of decide()'s
// bit-level search. Walks universal models built as ordinary KripkeModel
// values and evaluates with the public recursive eval.

inline std::optional<std::pair<modal::KripkeModel, int>> brute_force_universal(
    const std::vector<modal::Formula>& globals, const std::vector<modal::Formula>& locals,
    const modal::Formula& goal, int max_worlds) {
  std::set<std::string> atom_set;
  auto add_atoms = [&](const modal::Formula& f) {
    for (const auto& a : modal::atoms_of(f)) atom_set.insert(a);
  };
  for (const auto& f : globals) add_atoms(f);
  for (const auto& f : locals) add_atoms(f);
  add_atoms(goal);
  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());

  for (int n = 1; n <= max_worlds; ++n) {
    std::uint64_t val_end = 1ull << (atoms.size() * n);
    for (std::uint64_t v = 0; v < val_end; ++v) {
      modal::KripkeModel m(n);
      m.make_universal();
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        std::set<int> worlds;
        for (int w = 0; w < n; ++w)
          if ((v >> (a * n + w)) & 1) worlds.insert(w);
        m.set_atom(atoms[a], std::move(worlds));
      }
      bool globals_ok = true;
      for (const auto& g : globals)
        if (!modal::holds_globally(m, g)) { globals_ok = false; break; }
      if (!globals_ok) continue;
      for (int w = 0; w < n; ++w) {
        bool locals_ok = true;
        for (const auto& l : locals)
          if (!modal::eval(m, w, l)) { locals_ok = false; break; }
        if (locals_ok && !modal::eval(m, w, goal)) return std::make_pair(m, w);
      }
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Random accepted derivations (S5), built forward so the checker accepts
// them by construction.

inline modal::Derivation random_accepted_derivation(std::mt19937& rng) {
  using modal::Formula;
  using modal::Justification;
  using modal::Line;

  Formula p = Formula::atom("p"), q = Formula::atom("q");
  std::vector<Formula> pool = {
      p, q, Formula::neg(p), Formula::implies(p, q), Formula::implies(q, p),
      Formula::conj(p, q), Formula::disj(p, q), Formula::box(p), Formula::diamond(q)};
  auto pick = [&](const std::vector<Formula>& from) {
    std::uniform_int_distribution<std::size_t> d(0, from.size() - 1);
    return from[d(rng)];
  };

  modal::Derivation d;
  d.system = modal::Logic::S5;
  int label_counter = 0;
  auto fresh = [&](const char* prefix) {
    return std::string(prefix) + std::to_string(++label_counter);
  };

  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> premises(0, 2);
  std::uniform_int_distribution<int> steps(3, 8);
  std::uniform_int_distribution<int> move(0, 4);

  int num_global_premises = premises(rng);
  for (int i = 0; i < num_global_premises; ++i)
    d.global_lines.push_back({fresh("g"), pick(pool), Justification::premise()});

  auto add_taut = [&](std::vector<Line>& lines) {
    Formula a = pick(pool), b = pick(pool);
    std::vector<Formula> templates = {
        Formula::implies(a, a),
        Formula::implies(a, Formula::implies(b, a)),
        Formula::implies(Formula::conj(a, b), a),
        Formula::implies(a, Formula::disj(a, b)),
        Formula::implies(Formula::neg(Formula::neg(a)), a),
        Formula::implies(Formula::implies(a, b),
                         Formula::implies(Formula::neg(b), Formula::neg(a))),
    };
    lines.push_back({fresh(&lines == &d.global_lines ? "g" : "l"), pick(templates),
                     Justification::taut()});
  };

  auto add_axiom = [&](std::vector<Line>& lines) {
    Formula a = pick(pool), b = pick(pool);
    std::uniform_int_distribution<int> which(0, 3);
    Formula inst = a;
    Justification::Kind tag = Justification::Kind::AxT;
    switch (which(rng)) {
      case 0:
        inst = Formula::implies(Formula::box(Formula::implies(a, b)),
                                Formula::implies(Formula::box(a), Formula::box(b)));
        tag = Justification::Kind::AxK;
        break;
      case 1:
        inst = Formula::implies(Formula::box(a), a);
        tag = Justification::Kind::AxT;
        break;
      case 2:
        inst = Formula::implies(Formula::box(a), Formula::box(Formula::box(a)));
        tag = Justification::Kind::Ax4;
        break;
      default:
        inst = Formula::implies(Formula::diamond(Formula::box(a)), Formula::box(a));
        tag = Justification::Kind::AxS5;
        break;
    }
    lines.push_back({fresh(&lines == &d.global_lines ? "g" : "l"), inst,
                     Justification::axiom(tag)});
  };

  // Modus ponens over any earlier lines whose formula is an implication with
  // a matching earlier antecedent.
  auto try_mp = [&](std::vector<Line>& lines, bool local) -> bool {
    std::vector<const Line*> visible;
    for (const Line& l : d.global_lines) visible.push_back(&l);
    if (local)
      for (const Line& l : d.local_lines) visible.push_back(&l);
    std::vector<std::pair<const Line*, const Line*>> options;
    for (const Line* impl : visible) {
      if (!impl->formula.is(Formula::Kind::Implies)) continue;
      Formula want = modal::desugar(impl->formula.lhs());
      for (const Line* ante : visible)
        if (modal::desugar(ante->formula) == want) options.emplace_back(impl, ante);
    }
    if (options.empty()) return false;
    std::uniform_int_distribution<std::size_t> d2(0, options.size() - 1);
    auto [impl, ante] = options[d2(rng)];
    lines.push_back({fresh(local ? "l" : "g"), impl->formula.rhs(),
                     Justification::mp(impl->label, ante->label)});
    return true;
  };

  auto try_nec = [&]() -> bool {
    if (d.global_lines.empty()) return false;
    std::uniform_int_distribution<std::size_t> d2(0, d.global_lines.size() - 1);
    const Line& from = d.global_lines[d2(rng)];
    d.global_lines.push_back(
        {fresh("g"), Formula::box(from.formula), Justification::nec(from.label)});
    return true;
  };

  int global_steps = steps(rng);
  for (int i = 0; i < global_steps; ++i) {
    switch (move(rng)) {
      case 0: add_taut(d.global_lines); break;
      case 1: add_axiom(d.global_lines); break;
      case 2:
        if (!try_nec()) add_taut(d.global_lines);
        break;
      default:
        if (!try_mp(d.global_lines, false)) add_axiom(d.global_lines);
        break;
    }
  }

  int num_local_premises = premises(rng);
  for (int i = 0; i < num_local_premises; ++i)
    d.local_lines.push_back({fresh("l"), pick(pool), Justification::premise()});
  int local_steps = coin(rng) + coin(rng);
  for (int i = 0; i < local_steps; ++i) {
    if (!try_mp(d.local_lines, true)) add_taut(d.local_lines);
  }
  return d;
}

// Replaces every ~[]~X with <>X, bottom-up (the inverse of desugaring where
// it applies).
inline modal::Formula resugar(const modal::Formula& f) {
  using modal::Formula;
  switch (f.kind()) {
    case Formula::Kind::Atom: return f;
    case Formula::Kind::Not: {
      Formula c = resugar(f.child());
      if (c.is(Formula::Kind::Box) && c.child().is(Formula::Kind::Not))
        return Formula::diamond(c.child().child());
      return Formula::neg(c);
    }
    case Formula::Kind::Box: return Formula::box(resugar(f.child()));
    case Formula::Kind::Diamond: return Formula::diamond(resugar(f.child()));
    case Formula::Kind::And: return Formula::conj(resugar(f.lhs()), resugar(f.rhs()));
    case Formula::Kind::Or: return Formula::disj(resugar(f.lhs()), resugar(f.rhs()));
    case Formula::Kind::Implies:
      return Formula::implies(resugar(f.lhs()), resugar(f.rhs()));
    case Formula::Kind::Iff: return Formula::iff(resugar(f.lhs()), resugar(f.rhs()));
  }
  throw std::logic_error("unreachable");
}

}  // namespace testsupport
