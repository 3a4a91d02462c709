#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "modal/formula.hpp"

namespace modal {

enum class Logic { K, T, S4, S5 };

const char* to_string(Logic logic);
std::optional<Logic> logic_from_string(std::string_view name);

// Frame conditions imposed on the accessibility relation by each logic:
// K none, T reflexive, S4 reflexive+transitive, S5 equivalence.
struct FrameConditions {
  bool reflexive = false;
  bool transitive = false;
  bool symmetric = false;
};

FrameConditions frame_conditions(Logic logic);

class WorldOutOfRange : public std::out_of_range {
 public:
  WorldOutOfRange(int world, int world_count);
};

// Finite Kripke model: worlds are 0..n-1, the relation is an explicit edge
// set, the valuation maps each atom to the worlds where it is true. Atoms
// absent from the valuation read as false everywhere.
class KripkeModel {
 public:
  KripkeModel() = default;
  explicit KripkeModel(int worlds);

  int worlds() const { return worlds_; }
  bool edge(int from, int to) const;
  void add_edge(int from, int to);
  void make_universal();
  bool is_universal() const;
  bool is_reflexive() const;
  std::vector<std::pair<int, int>> relation_pairs() const;  // sorted

  const std::map<std::string, std::set<int>>& valuation() const { return valuation_; }
  void set_atom(const std::string& atom, std::set<int> true_at);
  bool atom_true(const std::string& atom, int world) const;

  std::optional<int> designated() const { return designated_; }
  void set_designated(int world);

 private:
  void require_world(int w) const;

  int worlds_ = 0;
  std::vector<bool> rel_;  // worlds_ x worlds_ adjacency, row-major
  std::map<std::string, std::set<int>> valuation_;
  std::optional<int> designated_;
};

// Standard Kripke truth at a world. Throws WorldOutOfRange.
bool eval(const KripkeModel& m, int world, const Formula& f);

// True iff f holds at every world of m.
bool holds_globally(const KripkeModel& m, const Formula& f);

struct FrameViolation {
  std::string condition;     // "reflexivity" | "transitivity" | "symmetry"
  std::vector<int> witness;  // worlds witnessing the failure
};

std::string to_string(const FrameViolation& v);

// Empty result iff m's relation satisfies every frame condition of `logic`.
std::vector<FrameViolation> check_frame(const KripkeModel& m, Logic logic);

class BoundTooLarge : public std::runtime_error {
 public:
  explicit BoundTooLarge(const std::string& what) : std::runtime_error(what) {}
};

inline constexpr std::uint64_t kDefaultModelBudget = 10'000'000;

// Streams every model with exactly `n` worlds over `atoms` whose relation
// satisfies the logic's frame conditions. For S5 only the universal relation
// is produced (complete for S5 consequence; see decide). Deterministic order:
// relations by ascending bitmask, then valuations in lexicographic order.
class ModelStream {
 public:
  ModelStream(std::set<std::string> atoms, Logic logic, int n,
              std::uint64_t budget = kDefaultModelBudget);
  ModelStream(ModelStream&&) noexcept;
  ~ModelStream();

  // nullopt once exhausted.
  std::optional<KripkeModel> next();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

struct Verdict {
  enum class Kind { Valid, ValidUpToBound, Countermodel };
  Kind kind = Kind::Valid;
  int bound = 0;  // world count actually searched
  std::optional<KripkeModel> model;  // countermodel; designated == world
  int world = -1;                    // world where the goal fails

  bool is_countermodel() const { return kind == Kind::Countermodel; }
};

const char* to_string(Verdict::Kind kind);

struct DecideOptions {
  std::optional<int> max_worlds;
  std::uint64_t budget = kDefaultModelBudget;
};

// Decides the consequence query: do the globals (true at every world) and the
// locals (true at a single world) force the goal at that world, over the
// frame class of `logic`?
//
// S5 searches universal models up to the small-model bound
//   b = #distinct Box-subformulas of the desugared query set + 1,
// capped by max_worlds when given; a fruitless search of the full bound is
// conclusive and yields Valid. K/T/S4 search relations satisfying the frame
// conditions up to max_worlds (default 3) and yield ValidUpToBound.
//
// Countermodels are reported deterministically: smallest world count first,
// then smallest failing world, then first model in enumeration order.
Verdict decide(Logic logic, const std::vector<Formula>& globals,
               const std::vector<Formula>& locals, const Formula& goal,
               const DecideOptions& opts = {});

class ModelParseError : public std::runtime_error {
 public:
  ModelParseError(int line, const std::string& message);
  int line() const { return line_; }

 private:
  int line_;
};

// Model file format (.km), line oriented:
//   worlds <n>
//   relation universal | relation pairs (i j) (i j) ...
//   designated <i>          (optional; defaults to 0)
//   val <atom> <i> <i> ...  (one line per atom)
// `#` starts a comment; unknown keys are errors.
KripkeModel parse_model(std::string_view text);

// Canonical rendering: accepted back by parse_model, and byte-stable for a
// given model.
std::string print_model(const KripkeModel& m);

}  // namespace modal
