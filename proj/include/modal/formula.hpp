#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace modal {

// Propositional modal formulas. Immutable shared trees: copies are cheap,
// values are safe to share across threads, equality is structural.
class Formula {
 public:
  enum class Kind : std::uint8_t { Atom, Not, And, Or, Implies, Iff, Box, Diamond };

  static Formula atom(std::string name);  // name must match [a-z][a-zA-Z0-9_]*
  static Formula neg(Formula a);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula iff(Formula a, Formula b);
  static Formula box(Formula a);
  static Formula diamond(Formula a);

  Kind kind() const { return node_->kind; }
  bool is(Kind k) const { return node_->kind == k; }

  const std::string& atom_name() const;  // Atom only
  Formula child() const;                 // Not, Box, Diamond
  Formula lhs() const;                   // binary connectives
  Formula rhs() const;

  int depth() const { return node_->depth; }
  int modal_depth() const { return node_->modal_depth; }
  std::size_t node_count() const { return node_->nodes; }
  std::size_t hash() const { return node_->hash; }

  bool operator==(const Formula& other) const;
  bool operator!=(const Formula& other) const { return !(*this == other); }

 private:
  struct Node {
    Kind kind = Kind::Atom;
    std::string name;  // Atom only
    std::shared_ptr<const Node> a, b;
    std::size_t hash = 0;
    int depth = 1;
    int modal_depth = 0;
    std::size_t nodes = 1;
  };

  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Kind k, std::string name, const Formula* a, const Formula* b);
  static bool equal_nodes(const Node* x, const Node* y);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

// Raised by parse_formula. offset is a byte position into the input text.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t offset, std::string expected, std::string found);
  std::size_t offset() const { return offset_; }
  const std::string& expected() const { return expected_; }
  const std::string& found() const { return found_; }

 private:
  std::size_t offset_;
  std::string expected_;
  std::string found_;
};

// Raised by operations that require Diamond-free input.
class DiamondPresent : public std::logic_error {
 public:
  DiamondPresent() : std::logic_error("formula contains a diamond; desugar it first") {}
};

bool valid_atom_name(std::string_view name);

// Concrete syntax:  ~  []  <>  &  |  ->  <->  with precedence
// {~, [], <>} > & > | > -> > <->.  -> and <-> associate to the right,
// & and | to the left.  `#` starts a line comment.
Formula parse_formula(std::string_view text);

// Minimal-parenthesis rendering; parse_formula(print_formula(f)) == f.
std::string print_formula(const Formula& f);

// Rewrites every <>A to ~[]~A, innermost first. Everything else unchanged.
Formula desugar(const Formula& f);

std::set<std::string> atoms_of(const Formula& f);

// Distinct Box-headed subformulas in first-occurrence (preorder) order.
// Throws DiamondPresent unless f is Diamond-free.
std::vector<Formula> box_subformulas(const Formula& f);

}  // namespace modal
