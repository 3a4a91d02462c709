#include "modal/semantics.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <limits>
#include <sstream>

namespace modal {

const char* to_string(Logic logic) {
  switch (logic) {
    case Logic::K: return "K";
    case Logic::T: return "T";
    case Logic::S4: return "S4";
    case Logic::S5: return "S5";
  }
  return "?";
}

std::optional<Logic> logic_from_string(std::string_view name) {
  if (name == "K") return Logic::K;
  if (name == "T") return Logic::T;
  if (name == "S4") return Logic::S4;
  if (name == "S5") return Logic::S5;
  return std::nullopt;
}

FrameConditions frame_conditions(Logic logic) {
  switch (logic) {
    case Logic::K: return {false, false, false};
    case Logic::T: return {true, false, false};
    case Logic::S4: return {true, true, false};
    case Logic::S5: return {true, true, true};
  }
  return {};
}

WorldOutOfRange::WorldOutOfRange(int world, int world_count)
    : std::out_of_range("world " + std::to_string(world) + " out of range for a model with " +
                        std::to_string(world_count) + " worlds") {}

// ---------------------------------------------------------------------------
// KripkeModel

KripkeModel::KripkeModel(int worlds) : worlds_(worlds) {
  if (worlds < 1) throw std::invalid_argument("a model needs at least one world");
  rel_.assign(static_cast<std::size_t>(worlds) * worlds, false);
}

void KripkeModel::require_world(int w) const {
  if (w < 0 || w >= worlds_) throw WorldOutOfRange(w, worlds_);
}

bool KripkeModel::edge(int from, int to) const {
  require_world(from);
  require_world(to);
  return rel_[static_cast<std::size_t>(from) * worlds_ + to];
}

void KripkeModel::add_edge(int from, int to) {
  require_world(from);
  require_world(to);
  rel_[static_cast<std::size_t>(from) * worlds_ + to] = true;
}

void KripkeModel::make_universal() {
  rel_.assign(rel_.size(), true);
}

bool KripkeModel::is_universal() const {
  return std::all_of(rel_.begin(), rel_.end(), [](bool b) { return b; });
}

bool KripkeModel::is_reflexive() const {
  for (int w = 0; w < worlds_; ++w)
    if (!rel_[static_cast<std::size_t>(w) * worlds_ + w]) return false;
  return true;
}

std::vector<std::pair<int, int>> KripkeModel::relation_pairs() const {
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < worlds_; ++i)
    for (int j = 0; j < worlds_; ++j)
      if (rel_[static_cast<std::size_t>(i) * worlds_ + j]) out.emplace_back(i, j);
  return out;
}

void KripkeModel::set_atom(const std::string& atom, std::set<int> true_at) {
  if (!valid_atom_name(atom)) throw std::invalid_argument("invalid atom name: '" + atom + "'");
  for (int w : true_at) require_world(w);
  valuation_[atom] = std::move(true_at);
}

bool KripkeModel::atom_true(const std::string& atom, int world) const {
  require_world(world);
  auto it = valuation_.find(atom);
  return it != valuation_.end() && it->second.count(world) > 0;
}

void KripkeModel::set_designated(int world) {
  require_world(world);
  designated_ = world;
}

// ---------------------------------------------------------------------------
// Truth evaluation

bool eval(const KripkeModel& m, int world, const Formula& f) {
  if (world < 0 || world >= m.worlds()) throw WorldOutOfRange(world, m.worlds());
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return m.atom_true(f.atom_name(), world);
    case Formula::Kind::Not:
      return !eval(m, world, f.child());
    case Formula::Kind::And:
      return eval(m, world, f.lhs()) && eval(m, world, f.rhs());
    case Formula::Kind::Or:
      return eval(m, world, f.lhs()) || eval(m, world, f.rhs());
    case Formula::Kind::Implies:
      return !eval(m, world, f.lhs()) || eval(m, world, f.rhs());
    case Formula::Kind::Iff:
      return eval(m, world, f.lhs()) == eval(m, world, f.rhs());
    case Formula::Kind::Box: {
      for (int j = 0; j < m.worlds(); ++j)
        if (m.edge(world, j) && !eval(m, j, f.child())) return false;
      return true;
    }
    case Formula::Kind::Diamond: {
      for (int j = 0; j < m.worlds(); ++j)
        if (m.edge(world, j) && eval(m, j, f.child())) return true;
      return false;
    }
  }
  throw std::logic_error("unreachable");
}

bool holds_globally(const KripkeModel& m, const Formula& f) {
  for (int w = 0; w < m.worlds(); ++w)
    if (!eval(m, w, f)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Frame conditions

std::string to_string(const FrameViolation& v) {
  std::string out = v.condition + " violated at (";
  for (std::size_t i = 0; i < v.witness.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(v.witness[i]);
  }
  out += ')';
  return out;
}

std::vector<FrameViolation> check_frame(const KripkeModel& m, Logic logic) {
  FrameConditions fc = frame_conditions(logic);
  std::vector<FrameViolation> out;
  int n = m.worlds();
  if (fc.reflexive)
    for (int w = 0; w < n; ++w)
      if (!m.edge(w, w)) out.push_back({"reflexivity", {w}});
  if (fc.transitive)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          if (m.edge(i, j) && m.edge(j, k) && !m.edge(i, k))
            out.push_back({"transitivity", {i, j, k}});
  if (fc.symmetric)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (m.edge(i, j) && !m.edge(j, i)) out.push_back({"symmetry", {i, j}});
  return out;
}

// ---------------------------------------------------------------------------
// Model enumeration
//
// A candidate is a (relation, valuation) pair. Relations are enumerated by
// ascending bitmask (bit i*n+j is the edge i->j); for T/S4 the diagonal is
// forced, for S4 non-transitive masks are filtered out, for S5 only the
// universal relation is produced. Valuations are enumerated by a counter
// whose bits, read most-significant first, spell the truth of
// (atom 0, world 0), (atom 0, world 1), ..., (atom 1, world 0), ... so that
// ascending counters are lexicographic on that bitstring.

namespace {

constexpr int kMaxRelationBits = 62;

bool mask_transitive(std::uint64_t mask, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!((mask >> (i * n + j)) & 1)) continue;
      for (int k = 0; k < n; ++k)
        if (((mask >> (j * n + k)) & 1) && !((mask >> (i * n + k)) & 1)) return false;
    }
  return true;
}

// Bits the enumerator is free to choose (diagonal is forced for T/S4).
int free_relation_bits(Logic logic, int n) {
  switch (logic) {
    case Logic::K: return n * n;
    case Logic::T:
    case Logic::S4: return n * n - n;
    case Logic::S5: return 0;
  }
  return 0;
}

// Spread `counter` over the off-diagonal positions (ascending), OR the diagonal.
std::uint64_t reflexive_mask(std::uint64_t counter, int n) {
  std::uint64_t mask = 0;
  int bit = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) {
        mask |= 1ull << (i * n + j);
      } else {
        if ((counter >> bit) & 1) mask |= 1ull << (i * n + j);
        ++bit;
      }
    }
  return mask;
}

// Candidate models with exactly n worlds over A atoms, or nullopt when the
// count does not fit in 62 bits.
std::optional<std::uint64_t> candidate_count(Logic logic, int num_atoms, int n) {
  long long bits = free_relation_bits(logic, n) + static_cast<long long>(num_atoms) * n;
  if (bits > kMaxRelationBits) return std::nullopt;
  return 1ull << bits;
}

std::uint64_t valuation_count(int num_atoms, int n) {
  return 1ull << (static_cast<std::uint64_t>(num_atoms) * n);
}

bool valuation_bit(std::uint64_t counter, int num_atoms, int n, int atom, int world) {
  int total = num_atoms * n;
  return (counter >> (total - 1 - (atom * n + world))) & 1;
}

KripkeModel materialize_model(int n, const std::vector<std::string>& atoms, bool universal,
                              std::uint64_t relation_mask, std::uint64_t valuation_counter) {
  KripkeModel m(n);
  if (universal) {
    m.make_universal();
  } else {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if ((relation_mask >> (i * n + j)) & 1) m.add_edge(i, j);
  }
  int num_atoms = static_cast<int>(atoms.size());
  for (int a = 0; a < num_atoms; ++a) {
    std::set<int> worlds;
    for (int w = 0; w < n; ++w)
      if (valuation_bit(valuation_counter, num_atoms, n, a, w)) worlds.insert(w);
    m.set_atom(atoms[a], std::move(worlds));
  }
  return m;
}

// Walks relations in the deterministic order described above.
class RelationEnum {
 public:
  RelationEnum(Logic logic, int n) : logic_(logic), n_(n) {
    if (logic == Logic::S5) {
      end_ = 1;
    } else {
      int bits = free_relation_bits(logic, n);
      if (bits > kMaxRelationBits)
        throw BoundTooLarge("relation space for " + std::to_string(n) + " worlds is too large");
      end_ = 1ull << bits;
    }
  }

  struct Relation {
    bool universal = false;
    std::uint64_t mask = 0;
  };

  std::optional<Relation> next() {
    while (counter_ < end_) {
      std::uint64_t c = counter_++;
      if (logic_ == Logic::S5) return Relation{true, 0};
      std::uint64_t mask = (logic_ == Logic::K) ? c : reflexive_mask(c, n_);
      if (logic_ == Logic::S4 && !mask_transitive(mask, n_)) continue;
      return Relation{false, mask};
    }
    return std::nullopt;
  }

 private:
  Logic logic_;
  int n_;
  std::uint64_t counter_ = 0;
  std::uint64_t end_ = 0;
};

}  // namespace

struct ModelStream::Impl {
  std::vector<std::string> atoms;
  Logic logic;
  int n;
  RelationEnum relations;
  std::optional<RelationEnum::Relation> current;
  std::uint64_t valuation_counter = 0;
  std::uint64_t valuation_end = 0;

  Impl(std::vector<std::string> atoms_in, Logic logic_in, int n_in)
      : atoms(std::move(atoms_in)), logic(logic_in), n(n_in), relations(logic_in, n_in) {
    valuation_end = valuation_count(static_cast<int>(atoms.size()), n);
  }
};

ModelStream::ModelStream(std::set<std::string> atoms, Logic logic, int n, std::uint64_t budget) {
  if (n < 1) throw std::invalid_argument("world count must be >= 1");
  if (atoms.size() > 6) throw std::invalid_argument("enumeration supports at most 6 atoms");
  auto count = candidate_count(logic, static_cast<int>(atoms.size()), n);
  if (!count || *count > budget)
    throw BoundTooLarge("enumerating " + std::to_string(n) + " worlds over " +
                        std::to_string(atoms.size()) + " atoms exceeds the model budget");
  impl_ = std::make_unique<Impl>(std::vector<std::string>(atoms.begin(), atoms.end()), logic, n);
}

ModelStream::ModelStream(ModelStream&&) noexcept = default;
ModelStream::~ModelStream() = default;

std::optional<KripkeModel> ModelStream::next() {
  Impl& s = *impl_;
  while (true) {
    if (!s.current) {
      s.current = s.relations.next();
      if (!s.current) return std::nullopt;  // exhausted for good
      s.valuation_counter = 0;
    }
    if (s.valuation_counter < s.valuation_end) {
      KripkeModel m = materialize_model(s.n, s.atoms, s.current->universal, s.current->mask,
                                        s.valuation_counter);
      ++s.valuation_counter;
      return m;
    }
    s.current.reset();
  }
}

// ---------------------------------------------------------------------------
// Decision procedure

const char* to_string(Verdict::Kind kind) {
  switch (kind) {
    case Verdict::Kind::Valid: return "valid";
    case Verdict::Kind::ValidUpToBound: return "valid-up-to-bound";
    case Verdict::Kind::Countermodel: return "countermodel";
  }
  return "?";
}

namespace {

// Query formulas are compiled to a flat postorder program evaluated over
// per-world bit rows (bit w = true at world w), one pass per candidate model.
struct Op {
  Formula::Kind kind;
  int atom = -1;
  int a = -1;
  int b = -1;
};

int compile_into(const Formula& f, const std::map<std::string, int>& atom_index,
                 std::vector<Op>& ops) {
  Op op;
  op.kind = f.kind();
  switch (f.kind()) {
    case Formula::Kind::Atom:
      op.atom = atom_index.at(f.atom_name());
      break;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond:
      op.a = compile_into(f.child(), atom_index, ops);
      break;
    default:
      op.a = compile_into(f.lhs(), atom_index, ops);
      op.b = compile_into(f.rhs(), atom_index, ops);
      break;
  }
  ops.push_back(op);
  return static_cast<int>(ops.size()) - 1;
}

struct Program {
  std::vector<Op> ops;
  int root = -1;
};

Program compile(const Formula& f, const std::map<std::string, int>& atom_index) {
  Program p;
  p.root = compile_into(f, atom_index, p.ops);
  return p;
}

std::uint64_t run_program(const Program& p, const std::vector<std::uint64_t>& atom_rows,
                          const std::vector<std::uint64_t>& succ, bool universal,
                          std::uint64_t full, int n, std::vector<std::uint64_t>& scratch) {
  scratch.resize(p.ops.size());
  for (std::size_t i = 0; i < p.ops.size(); ++i) {
    const Op& op = p.ops[i];
    switch (op.kind) {
      case Formula::Kind::Atom:
        scratch[i] = atom_rows[op.atom];
        break;
      case Formula::Kind::Not:
        scratch[i] = ~scratch[op.a] & full;
        break;
      case Formula::Kind::And:
        scratch[i] = scratch[op.a] & scratch[op.b];
        break;
      case Formula::Kind::Or:
        scratch[i] = scratch[op.a] | scratch[op.b];
        break;
      case Formula::Kind::Implies:
        scratch[i] = (~scratch[op.a] | scratch[op.b]) & full;
        break;
      case Formula::Kind::Iff:
        scratch[i] = ~(scratch[op.a] ^ scratch[op.b]) & full;
        break;
      case Formula::Kind::Box: {
        std::uint64_t child = scratch[op.a];
        if (universal) {
          scratch[i] = (child == full) ? full : 0;
        } else {
          std::uint64_t row = 0;
          for (int w = 0; w < n; ++w)
            if ((succ[w] & ~child) == 0) row |= 1ull << w;
          scratch[i] = row;
        }
        break;
      }
      case Formula::Kind::Diamond: {
        std::uint64_t child = scratch[op.a];
        if (universal) {
          scratch[i] = (child != 0) ? full : 0;
        } else {
          std::uint64_t row = 0;
          for (int w = 0; w < n; ++w)
            if (succ[w] & child) row |= 1ull << w;
          scratch[i] = row;
        }
        break;
      }
    }
  }
  return scratch[p.root];
}

struct LevelHit {
  bool universal = false;
  std::uint64_t mask = 0;
  std::uint64_t valuation = 0;
  int world = 0;
};

// Searches all (world, model) pairs at a fixed world count n, world-major:
// the hit with the smallest failing world wins, ties broken by enumeration
// order of the models. A single enumeration pass suffices because a later
// model can only win with a strictly smaller world.
std::optional<LevelHit> search_level(Logic logic, int n, const std::vector<std::string>& atoms,
                                     const std::vector<Program>& globals,
                                     const std::vector<Program>& locals, const Program& goal) {
  int num_atoms = static_cast<int>(atoms.size());
  std::uint64_t full = (n == 64) ? ~0ull : ((1ull << n) - 1);
  std::uint64_t val_end = valuation_count(num_atoms, n);
  std::vector<std::uint64_t> atom_rows(num_atoms, 0);
  std::vector<std::uint64_t> succ(n, 0);
  std::vector<std::uint64_t> scratch;

  std::optional<LevelHit> best;
  RelationEnum relations(logic, n);
  while (auto rel = relations.next()) {
    if (!rel->universal)
      for (int w = 0; w < n; ++w) succ[w] = (rel->mask >> (w * n)) & full;
    for (std::uint64_t v = 0; v < val_end; ++v) {
      for (int a = 0; a < num_atoms; ++a) {
        std::uint64_t row = 0;
        for (int w = 0; w < n; ++w)
          if (valuation_bit(v, num_atoms, n, a, w)) row |= 1ull << w;
        atom_rows[a] = row;
      }
      bool globals_hold = true;
      for (const Program& g : globals) {
        if (run_program(g, atom_rows, succ, rel->universal, full, n, scratch) != full) {
          globals_hold = false;
          break;
        }
      }
      if (!globals_hold) continue;
      std::uint64_t cand = full;
      for (const Program& l : locals) {
        cand &= run_program(l, atom_rows, succ, rel->universal, full, n, scratch);
        if (!cand) break;
      }
      if (!cand) continue;
      cand &= ~run_program(goal, atom_rows, succ, rel->universal, full, n, scratch) & full;
      if (!cand) continue;
      int w = std::countr_zero(cand);
      if (!best || w < best->world) {
        best = LevelHit{rel->universal, rel->mask, v, w};
        if (w == 0) return best;  // nothing can beat world 0 at an earlier index
      }
    }
  }
  return best;
}

}  // namespace

Verdict decide(Logic logic, const std::vector<Formula>& globals,
               const std::vector<Formula>& locals, const Formula& goal,
               const DecideOptions& opts) {
  if (opts.max_worlds && *opts.max_worlds < 1)
    throw std::invalid_argument("max_worlds must be >= 1");

  std::vector<Formula> query;
  query.reserve(globals.size() + locals.size() + 1);
  for (const Formula& f : globals) query.push_back(desugar(f));
  for (const Formula& f : locals) query.push_back(desugar(f));
  query.push_back(desugar(goal));

  std::set<std::string> atom_set;
  std::vector<Formula> boxes;
  for (const Formula& f : query) {
    for (const std::string& a : atoms_of(f)) atom_set.insert(a);
    for (const Formula& b : box_subformulas(f)) {
      bool seen = false;
      for (const Formula& known : boxes)
        if (known == b) { seen = true; break; }
      if (!seen) boxes.push_back(b);
    }
  }

  // Small-model bound: one witness world per refuted Box-subformula plus the
  // world carrying the locals.
  int small_model_bound = static_cast<int>(boxes.size()) + 1;
  int search_to;
  bool conclusive;
  if (logic == Logic::S5) {
    search_to = small_model_bound;
    if (opts.max_worlds) search_to = std::min(search_to, *opts.max_worlds);
    conclusive = (search_to == small_model_bound);
  } else {
    search_to = opts.max_worlds.value_or(3);
    conclusive = false;
  }

  int num_atoms = static_cast<int>(atom_set.size());
  std::uint64_t total = 0;
  for (int n = 1; n <= search_to; ++n) {
    auto count = candidate_count(logic, num_atoms, n);
    if (!count || total + *count < total)
      throw BoundTooLarge("search space up to " + std::to_string(search_to) +
                          " worlds exceeds the model budget");
    total += *count;
  }
  if (total > opts.budget)
    throw BoundTooLarge("search space of " + std::to_string(total) +
                        " candidate models exceeds the budget of " +
                        std::to_string(opts.budget));

  std::vector<std::string> atoms(atom_set.begin(), atom_set.end());
  std::map<std::string, int> atom_index;
  for (int i = 0; i < num_atoms; ++i) atom_index[atoms[i]] = i;

  std::vector<Program> global_progs, local_progs;
  for (std::size_t i = 0; i < globals.size(); ++i)
    global_progs.push_back(compile(query[i], atom_index));
  for (std::size_t i = 0; i < locals.size(); ++i)
    local_progs.push_back(compile(query[globals.size() + i], atom_index));
  Program goal_prog = compile(query.back(), atom_index);

  for (int n = 1; n <= search_to; ++n) {
    auto hit = search_level(logic, n, atoms, global_progs, local_progs, goal_prog);
    if (hit) {
      KripkeModel m = materialize_model(n, atoms, hit->universal, hit->mask, hit->valuation);
      m.set_designated(hit->world);
      Verdict v;
      v.kind = Verdict::Kind::Countermodel;
      v.bound = n;
      v.model = std::move(m);
      v.world = hit->world;
      return v;
    }
  }

  Verdict v;
  v.kind = conclusive ? Verdict::Kind::Valid : Verdict::Kind::ValidUpToBound;
  v.bound = search_to;
  return v;
}

// ---------------------------------------------------------------------------
// Model files

ModelParseError::ModelParseError(int line, const std::string& message)
    : std::runtime_error("line " + std::to_string(line) + ": " + message), line_(line) {}

namespace {

std::vector<std::string> split_ws(std::string_view line) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) out.emplace_back(line.substr(start, i - start));
  }
  return out;
}

int parse_int(const std::string& tok, int line_no, const char* what) {
  int value = 0;
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ModelParseError(line_no, std::string("expected ") + what + ", found '" + tok + "'");
  return value;
}

}  // namespace

KripkeModel parse_model(std::string_view text) {
  std::optional<KripkeModel> model;
  bool saw_relation = false;
  bool saw_designated = false;

  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(pos, eol == std::string_view::npos ? eol : eol - pos);
    pos = (eol == std::string_view::npos) ? text.size() + 1 : eol + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    std::vector<std::string> toks = split_ws(line);
    if (toks.empty()) continue;

    const std::string& key = toks[0];
    if (key == "worlds") {
      if (model) throw ModelParseError(line_no, "duplicate 'worlds' line");
      if (toks.size() != 2) throw ModelParseError(line_no, "usage: worlds <n>");
      int n = parse_int(toks[1], line_no, "a world count");
      if (n < 1) throw ModelParseError(line_no, "world count must be >= 1");
      model.emplace(n);
      continue;
    }
    if (!model)
      throw ModelParseError(line_no, "'worlds <n>' must come before '" + key + "'");

    if (key == "relation") {
      if (saw_relation) throw ModelParseError(line_no, "duplicate 'relation' line");
      saw_relation = true;
      if (toks.size() >= 2 && toks[1] == "universal") {
        if (toks.size() != 2) throw ModelParseError(line_no, "unexpected tokens after 'universal'");
        model->make_universal();
        continue;
      }
      if (toks.size() < 2 || toks[1] != "pairs")
        throw ModelParseError(line_no, "usage: relation universal | relation pairs (i j) ...");
      // Re-scan the raw remainder so "(0 1)" style pairs are easy to read.
      std::string rest;
      for (std::size_t i = 2; i < toks.size(); ++i) rest += toks[i] + " ";
      std::vector<int> nums;
      std::string cur;
      int depth = 0;
      for (char c : rest) {
        if (c == '(') {
          if (depth != 0) throw ModelParseError(line_no, "nested '(' in relation pairs");
          depth = 1;
        } else if (c == ')') {
          if (depth != 1) throw ModelParseError(line_no, "unmatched ')' in relation pairs");
          depth = 0;
          if (!cur.empty()) { nums.push_back(parse_int(cur, line_no, "a world index")); cur.clear(); }
        } else if (std::isspace(static_cast<unsigned char>(c))) {
          if (!cur.empty()) { nums.push_back(parse_int(cur, line_no, "a world index")); cur.clear(); }
        } else {
          if (depth != 1) throw ModelParseError(line_no, "world pairs must be parenthesized");
          cur += c;
        }
      }
      if (depth != 0) throw ModelParseError(line_no, "unterminated '(' in relation pairs");
      if (nums.size() % 2 != 0) throw ModelParseError(line_no, "relation pairs must have two indices each");
      for (std::size_t i = 0; i < nums.size(); i += 2) {
        if (nums[i] >= model->worlds() || nums[i + 1] >= model->worlds() || nums[i] < 0 ||
            nums[i + 1] < 0)
          throw ModelParseError(line_no, "world index out of range in relation");
        model->add_edge(nums[i], nums[i + 1]);
      }
      continue;
    }
    if (key == "designated") {
      if (saw_designated) throw ModelParseError(line_no, "duplicate 'designated' line");
      saw_designated = true;
      if (toks.size() != 2) throw ModelParseError(line_no, "usage: designated <i>");
      int w = parse_int(toks[1], line_no, "a world index");
      if (w < 0 || w >= model->worlds())
        throw ModelParseError(line_no, "designated world out of range");
      model->set_designated(w);
      continue;
    }
    if (key == "val") {
      if (toks.size() < 2) throw ModelParseError(line_no, "usage: val <atom> <i> <i> ...");
      const std::string& atom = toks[1];
      if (!valid_atom_name(atom))
        throw ModelParseError(line_no, "invalid atom name '" + atom + "'");
      if (model->valuation().count(atom))
        throw ModelParseError(line_no, "duplicate 'val' line for atom '" + atom + "'");
      std::set<int> worlds;
      for (std::size_t i = 2; i < toks.size(); ++i) {
        int w = parse_int(toks[i], line_no, "a world index");
        if (w < 0 || w >= model->worlds())
          throw ModelParseError(line_no, "world index out of range in valuation");
        worlds.insert(w);
      }
      model->set_atom(atom, std::move(worlds));
      continue;
    }
    throw ModelParseError(line_no, "unknown key '" + key + "'");
  }

  if (!model) throw ModelParseError(line_no, "missing 'worlds <n>' line");
  if (!saw_designated) model->set_designated(0);  // format default
  return *model;
}

std::string print_model(const KripkeModel& m) {
  std::ostringstream out;
  out << "worlds " << m.worlds() << '\n';
  if (m.is_universal()) {
    out << "relation universal\n";
  } else {
    auto pairs = m.relation_pairs();
    if (!pairs.empty()) {
      out << "relation pairs";
      for (auto [i, j] : pairs) out << " (" << i << ' ' << j << ')';
      out << '\n';
    }
  }
  if (m.designated()) out << "designated " << *m.designated() << '\n';
  for (const auto& [atom, worlds] : m.valuation()) {
    out << "val " << atom;
    for (int w : worlds) out << ' ' << w;
    out << '\n';
  }
  return out.str();
}

}  // namespace modal
