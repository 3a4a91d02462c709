#include "modal/formula.hpp"

#include <cctype>
#include <sstream>
#include <unordered_set>
#include <utility>

namespace modal {

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
  return seed ^ (v + 0x9e3779b97f4a7c15ull + (seed << 6) + (seed >> 2));
}

}  // namespace

Formula Formula::make(Kind k, std::string name, const Formula* a, const Formula* b) {
  auto node = std::make_shared<Node>();
  node->kind = k;
  node->name = std::move(name);
  std::size_t h = mix(0x51ed270b, static_cast<std::size_t>(k));
  if (!node->name.empty()) h = mix(h, std::hash<std::string>{}(node->name));
  if (a) {
    node->a = a->node_;
    h = mix(h, a->hash());
    node->depth = a->depth() + 1;
    node->modal_depth = a->modal_depth();
    node->nodes = a->node_count() + 1;
  }
  if (b) {
    node->b = b->node_;
    h = mix(h, b->hash());
    node->depth = std::max(node->depth, b->depth() + 1);
    node->modal_depth = std::max(node->modal_depth, b->modal_depth());
    node->nodes += b->node_count();
  }
  if (k == Kind::Box || k == Kind::Diamond) node->modal_depth += 1;
  node->hash = h;
  return Formula(std::move(node));
}

Formula Formula::atom(std::string name) {
  if (!valid_atom_name(name))
    throw std::invalid_argument("invalid atom name: '" + name + "'");
  return make(Kind::Atom, std::move(name), nullptr, nullptr);
}

Formula Formula::neg(Formula a) { return make(Kind::Not, {}, &a, nullptr); }
Formula Formula::conj(Formula a, Formula b) { return make(Kind::And, {}, &a, &b); }
Formula Formula::disj(Formula a, Formula b) { return make(Kind::Or, {}, &a, &b); }
Formula Formula::implies(Formula a, Formula b) { return make(Kind::Implies, {}, &a, &b); }
Formula Formula::iff(Formula a, Formula b) { return make(Kind::Iff, {}, &a, &b); }
Formula Formula::box(Formula a) { return make(Kind::Box, {}, &a, nullptr); }
Formula Formula::diamond(Formula a) { return make(Kind::Diamond, {}, &a, nullptr); }

const std::string& Formula::atom_name() const {
  if (node_->kind != Kind::Atom) throw std::logic_error("atom_name() on non-atom");
  return node_->name;
}

Formula Formula::child() const {
  if (node_->kind != Kind::Not && node_->kind != Kind::Box && node_->kind != Kind::Diamond)
    throw std::logic_error("child() on non-unary formula");
  return Formula(node_->a);
}

Formula Formula::lhs() const {
  switch (node_->kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return Formula(node_->a);
    default:
      throw std::logic_error("lhs() on non-binary formula");
  }
}

Formula Formula::rhs() const {
  switch (node_->kind) {
    case Kind::And:
    case Kind::Or:
    case Kind::Implies:
    case Kind::Iff:
      return Formula(node_->b);
    default:
      throw std::logic_error("rhs() on non-binary formula");
  }
}

bool Formula::equal_nodes(const Node* x, const Node* y) {
  if (x == y) return true;
  if (x->kind != y->kind || x->hash != y->hash || x->nodes != y->nodes) return false;
  if (x->kind == Kind::Atom) return x->name == y->name;
  if (x->a && !equal_nodes(x->a.get(), y->a.get())) return false;
  if (x->b && !equal_nodes(x->b.get(), y->b.get())) return false;
  return true;
}

bool Formula::operator==(const Formula& other) const {
  return equal_nodes(node_.get(), other.node_.get());
}

bool valid_atom_name(std::string_view name) {
  if (name.empty() || !std::islower(static_cast<unsigned char>(name[0]))) return false;
  for (char c : name.substr(1))
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

ParseError::ParseError(std::size_t offset, std::string expected, std::string found)
    : std::runtime_error("expected " + expected + " at offset " + std::to_string(offset) +
                         ", found " + found),
      offset_(offset),
      expected_(std::move(expected)),
      found_(std::move(found)) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

struct Token {
  enum class Type { Atom, Not, Box, Diamond, And, Or, Implies, Iff, LParen, RParen, End };
  Type type = Type::End;
  std::string text;
  std::size_t offset = 0;
};

const char* describe(Token::Type t) {
  switch (t) {
    case Token::Type::Atom: return "atom";
    case Token::Type::Not: return "'~'";
    case Token::Type::Box: return "'[]'";
    case Token::Type::Diamond: return "'<>'";
    case Token::Type::And: return "'&'";
    case Token::Type::Or: return "'|'";
    case Token::Type::Implies: return "'->'";
    case Token::Type::Iff: return "'<->'";
    case Token::Type::LParen: return "'('";
    case Token::Type::RParen: return "')'";
    case Token::Type::End: return "end of input";
  }
  return "?";
}

std::string found_text(const Token& t) {
  if (t.type == Token::Type::End) return "end of input";
  return "'" + t.text + "'";
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  Token next() {
    skip_trivia();
    Token tok;
    tok.offset = pos_;
    if (pos_ >= src_.size()) {
      tok.type = Token::Type::End;
      return tok;
    }
    char c = src_[pos_];
    switch (c) {
      case '(': return simple(Token::Type::LParen, "(");
      case ')': return simple(Token::Type::RParen, ")");
      case '~': return simple(Token::Type::Not, "~");
      case '&': return simple(Token::Type::And, "&");
      case '|': return simple(Token::Type::Or, "|");
      case '[':
        if (peek(1) == ']') return simple(Token::Type::Box, "[]");
        throw ParseError(pos_, "']' after '['", char_at(pos_ + 1));
      case '-':
        if (peek(1) == '>') return simple(Token::Type::Implies, "->");
        throw ParseError(pos_, "'>' after '-'", char_at(pos_ + 1));
      case '<':
        if (peek(1) == '>') return simple(Token::Type::Diamond, "<>");
        if (peek(1) == '-' && peek(2) == '>') return simple(Token::Type::Iff, "<->");
        throw ParseError(pos_, "'<>' or '<->'", char_at(pos_));
      default:
        break;
    }
    if (std::islower(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() &&
             (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_'))
        ++pos_;
      tok.type = Token::Type::Atom;
      tok.text = std::string(src_.substr(start, pos_ - start));
      return tok;
    }
    if (std::isupper(static_cast<unsigned char>(c)))
      throw ParseError(pos_, "an atom starting with a lowercase letter", char_at(pos_));
    throw ParseError(pos_, "a formula token", char_at(pos_));
  }

 private:
  void skip_trivia() {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++pos_;
      } else if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
      } else {
        break;
      }
    }
  }

  Token simple(Token::Type type, std::string text) {
    Token tok{type, std::move(text), pos_};
    pos_ += tok.text.size();
    return tok;
  }

  char peek(std::size_t ahead) const {
    return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
  }

  std::string char_at(std::size_t p) const {
    if (p >= src_.size()) return "end of input";
    return "'" + std::string(1, src_[p]) + "'";
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

class Parser {
 public:
  explicit Parser(std::string_view src) : lexer_(src), tok_(lexer_.next()) {}

  Formula parse() {
    Formula f = parse_iff();
    if (tok_.type != Token::Type::End)
      throw ParseError(tok_.offset, "end of input", found_text(tok_));
    return f;
  }

 private:
  void advance() { tok_ = lexer_.next(); }

  bool accept(Token::Type type) {
    if (tok_.type != type) return false;
    advance();
    return true;
  }

  void expect(Token::Type type) {
    if (tok_.type != type) throw ParseError(tok_.offset, describe(type), found_text(tok_));
    advance();
  }

  // iff and implies are right-associative; or and and are left-associative.
  Formula parse_iff() {
    Formula lhs = parse_imp();
    if (accept(Token::Type::Iff)) return Formula::iff(std::move(lhs), parse_iff());
    return lhs;
  }

  Formula parse_imp() {
    Formula lhs = parse_or();
    if (accept(Token::Type::Implies)) return Formula::implies(std::move(lhs), parse_imp());
    return lhs;
  }

  Formula parse_or() {
    Formula f = parse_and();
    while (accept(Token::Type::Or)) f = Formula::disj(std::move(f), parse_and());
    return f;
  }

  Formula parse_and() {
    Formula f = parse_unary();
    while (accept(Token::Type::And)) f = Formula::conj(std::move(f), parse_unary());
    return f;
  }

  Formula parse_unary() {
    switch (tok_.type) {
      case Token::Type::Not:
        advance();
        return Formula::neg(parse_unary());
      case Token::Type::Box:
        advance();
        return Formula::box(parse_unary());
      case Token::Type::Diamond:
        advance();
        return Formula::diamond(parse_unary());
      case Token::Type::Atom: {
        std::string name = tok_.text;
        advance();
        return Formula::atom(std::move(name));
      }
      case Token::Type::LParen: {
        advance();
        Formula f = parse_iff();
        expect(Token::Type::RParen);
        return f;
      }
      default:
        throw ParseError(tok_.offset, "a formula", found_text(tok_));
    }
  }

  Lexer lexer_;
  Token tok_;
};

}  // namespace

Formula parse_formula(std::string_view text) { return Parser(text).parse(); }

// ---------------------------------------------------------------------------
// Printing

namespace {

// Binding strength; parenthesize a subformula whose level is below the
// level required by its context.
int level_of(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Iff: return 10;
    case Formula::Kind::Implies: return 20;
    case Formula::Kind::Or: return 30;
    case Formula::Kind::And: return 40;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond: return 50;
    case Formula::Kind::Atom: return 60;
  }
  return 60;
}

void print_to(const Formula& f, int required, std::string& out) {
  int lvl = level_of(f.kind());
  bool parens = lvl < required;
  if (parens) out += '(';
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out += f.atom_name();
      break;
    case Formula::Kind::Not:
      out += '~';
      print_to(f.child(), 50, out);
      break;
    case Formula::Kind::Box:
      out += "[]";
      print_to(f.child(), 50, out);
      break;
    case Formula::Kind::Diamond:
      out += "<>";
      print_to(f.child(), 50, out);
      break;
    case Formula::Kind::And:
      print_to(f.lhs(), lvl, out);
      out += " & ";
      print_to(f.rhs(), lvl + 1, out);
      break;
    case Formula::Kind::Or:
      print_to(f.lhs(), lvl, out);
      out += " | ";
      print_to(f.rhs(), lvl + 1, out);
      break;
    case Formula::Kind::Implies:
      print_to(f.lhs(), lvl + 1, out);
      out += " -> ";
      print_to(f.rhs(), lvl, out);
      break;
    case Formula::Kind::Iff:
      print_to(f.lhs(), lvl + 1, out);
      out += " <-> ";
      print_to(f.rhs(), lvl, out);
      break;
  }
  if (parens) out += ')';
}

}  // namespace

std::string print_formula(const Formula& f) {
  std::string out;
  print_to(f, 0, out);
  return out;
}

// ---------------------------------------------------------------------------
// Structural utilities

Formula desugar(const Formula& f) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return f;
    case Formula::Kind::Not:
      return Formula::neg(desugar(f.child()));
    case Formula::Kind::Box:
      return Formula::box(desugar(f.child()));
    case Formula::Kind::Diamond:
      return Formula::neg(Formula::box(Formula::neg(desugar(f.child()))));
    case Formula::Kind::And:
      return Formula::conj(desugar(f.lhs()), desugar(f.rhs()));
    case Formula::Kind::Or:
      return Formula::disj(desugar(f.lhs()), desugar(f.rhs()));
    case Formula::Kind::Implies:
      return Formula::implies(desugar(f.lhs()), desugar(f.rhs()));
    case Formula::Kind::Iff:
      return Formula::iff(desugar(f.lhs()), desugar(f.rhs()));
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_atoms(const Formula& f, std::set<std::string>& out) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      out.insert(f.atom_name());
      return;
    case Formula::Kind::Not:
    case Formula::Kind::Box:
    case Formula::Kind::Diamond:
      collect_atoms(f.child(), out);
      return;
    default:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

void collect_boxes(const Formula& f, std::vector<Formula>& out,
                   std::unordered_set<std::size_t>& seen_hashes) {
  switch (f.kind()) {
    case Formula::Kind::Atom:
      return;
    case Formula::Kind::Diamond:
      throw DiamondPresent();
    case Formula::Kind::Box: {
      bool present = false;
      if (seen_hashes.count(f.hash())) {
        for (const Formula& g : out)
          if (g == f) { present = true; break; }
      }
      if (!present) {
        seen_hashes.insert(f.hash());
        out.push_back(f);
      }
      collect_boxes(f.child(), out, seen_hashes);
      return;
    }
    case Formula::Kind::Not:
      collect_boxes(f.child(), out, seen_hashes);
      return;
    default:
      collect_boxes(f.lhs(), out, seen_hashes);
      collect_boxes(f.rhs(), out, seen_hashes);
      return;
  }
}

}  // namespace

std::set<std::string> atoms_of(const Formula& f) {
  std::set<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::vector<Formula> box_subformulas(const Formula& f) {
  std::vector<Formula> out;
  std::unordered_set<std::size_t> seen;
  collect_boxes(f, out, seen);
  return out;
}

}  // namespace modal
