#include "pmlkit/syntax.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>
#include <unordered_set>

namespace pmlkit {

// ---------------------------------------------------------------------------
// Signature

bool is_identifier(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s.front()))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  });
}

namespace {

bool is_keyword(std::string_view s) {
  return s == "box" || s == "dia" || s == "not" || s == "true" || s == "false";
}

}  // namespace

Signature::Signature(std::vector<std::string> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw std::invalid_argument("signature must not be empty");
  std::set<std::string_view> seen;
  for (const auto& a : atoms_) {
    if (!is_identifier(a) || is_keyword(a))
      throw std::invalid_argument("invalid atom name '" + a + "'");
    if (!seen.insert(a).second) throw std::invalid_argument("duplicate atom '" + a + "'");
  }
}

bool Signature::contains(std::string_view name) const { return index_of(name) < atoms_.size(); }

std::size_t Signature::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < atoms_.size(); ++i)
    if (atoms_[i] == name) return i;
  return atoms_.size();
}

// ---------------------------------------------------------------------------
// Formula

struct Formula::Node {
  Op op;
  std::string name;
  std::vector<Formula> kids;
  std::size_t depth = 0;
  std::size_t size = 1;
  std::size_t hash = 0;
  bool core = true;
  bool ground = true;
  bool sugar = false;  // some Or/And/Dia/Top/Bot below
};

Formula Formula::make(Op op, std::string name, const Formula* lhs, const Formula* rhs) {
  auto n = std::make_shared<Node>();
  n->op = op;
  n->name = std::move(name);
  n->hash = std::hash<std::string>{}(n->name) * 31 + static_cast<std::size_t>(op);
  n->core = op == Op::Atom || op == Op::Not || op == Op::Implies || op == Op::Box;
  n->ground = op != Op::Meta;
  n->sugar = !n->core && op != Op::Meta;
  for (const Formula* k : {lhs, rhs}) {
    if (!k) continue;
    n->kids.push_back(*k);
    const Node& kn = *k->node_;
    n->depth = std::max(n->depth, kn.depth + 1);
    n->size += kn.size;
    n->hash = n->hash * 1000003u ^ kn.hash;
    n->core = n->core && kn.core;
    n->ground = n->ground && kn.ground;
    n->sugar = n->sugar || kn.sugar;
  }
  return Formula(std::move(n));
}

Formula Formula::atom(std::string name) { return make(Op::Atom, std::move(name), nullptr, nullptr); }
Formula Formula::meta(std::string name) { return make(Op::Meta, std::move(name), nullptr, nullptr); }
Formula Formula::neg(Formula f) { return make(Op::Not, {}, &f, nullptr); }
Formula Formula::implies(Formula l, Formula r) { return make(Op::Implies, {}, &l, &r); }
Formula Formula::box(Formula f) { return make(Op::Box, {}, &f, nullptr); }
Formula Formula::disj(Formula l, Formula r) { return make(Op::Or, {}, &l, &r); }
Formula Formula::conj(Formula l, Formula r) { return make(Op::And, {}, &l, &r); }
Formula Formula::dia(Formula f) { return make(Op::Dia, {}, &f, nullptr); }
Formula Formula::top(std::string atom) { return make(Op::Top, std::move(atom), nullptr, nullptr); }
Formula Formula::bot(std::string atom) { return make(Op::Bot, std::move(atom), nullptr, nullptr); }

Op Formula::op() const { return node_->op; }
const std::string& Formula::name() const { return node_->name; }

const Formula& Formula::lhs() const {
  if (node_->kids.empty()) throw std::logic_error("formula has no operands");
  return node_->kids[0];
}

const Formula& Formula::rhs() const {
  if (node_->kids.size() < 2) throw std::logic_error("formula is not binary");
  return node_->kids[1];
}

bool Formula::is_core() const { return node_->core; }
bool Formula::is_ground() const { return node_->ground; }
bool Formula::has_sugar() const { return node_->sugar; }
std::size_t Formula::depth() const { return node_->depth; }
std::size_t Formula::size() const { return node_->size; }

bool operator==(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.hash != y.hash || x.op != y.op || x.size != y.size || x.name != y.name) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!(x.kids[i] == y.kids[i])) return false;
  return true;
}

bool operator<(const Formula& a, const Formula& b) {
  if (a.node_ == b.node_) return false;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op) return x.op < y.op;
  if (x.name != y.name) return x.name < y.name;
  for (std::size_t i = 0; i < x.kids.size(); ++i) {
    if (x.kids[i] < y.kids[i]) return true;
    if (y.kids[i] < x.kids[i]) return false;
  }
  return false;
}

std::size_t Formula::hash() const { return node_->hash; }

Formula desugar(const Formula& f) {
  if (!f.has_sugar()) return f;
  switch (f.op()) {
    case Op::Atom:
    case Op::Meta:
      return f;
    case Op::Not:
      return Formula::neg(desugar(f.arg()));
    case Op::Implies:
      return Formula::implies(desugar(f.lhs()), desugar(f.rhs()));
    case Op::Box:
      return Formula::box(desugar(f.arg()));
    case Op::Or:
      return Formula::implies(Formula::neg(desugar(f.lhs())), desugar(f.rhs()));
    case Op::And:
      return Formula::neg(Formula::implies(desugar(f.lhs()), Formula::neg(desugar(f.rhs()))));
    case Op::Dia:
      return Formula::neg(Formula::box(Formula::neg(desugar(f.arg()))));
    case Op::Top:
      return Formula::implies(Formula::atom(f.name()), Formula::atom(f.name()));
    case Op::Bot:
      return Formula::neg(Formula::implies(Formula::atom(f.name()), Formula::atom(f.name())));
  }
  throw std::logic_error("unreachable");
}

namespace {

void collect_atoms(const Formula& f, std::vector<std::string>& out) {
  switch (f.op()) {
    case Op::Atom:
    case Op::Top:
    case Op::Bot:
      if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
      return;
    case Op::Meta:
      return;
    case Op::Not:
    case Op::Box:
    case Op::Dia:
      collect_atoms(f.arg(), out);
      return;
    case Op::Implies:
    case Op::Or:
    case Op::And:
      collect_atoms(f.lhs(), out);
      collect_atoms(f.rhs(), out);
      return;
  }
}

}  // namespace

std::vector<std::string> atoms_of(const Formula& f) {
  std::vector<std::string> out;
  collect_atoms(f, out);
  return out;
}

std::vector<std::string> atoms_of(const Formula& f, const Signature& sig) {
  auto occ = atoms_of(f);
  std::vector<std::string> out;
  for (const auto& a : sig.atoms())
    if (std::find(occ.begin(), occ.end(), a) != occ.end()) out.push_back(a);
  return out;
}

// ---------------------------------------------------------------------------
// Lexer and parser

ParseError::ParseError(Kind kind, std::size_t position, std::string message,
                       std::vector<std::string> expected)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      position_(position),
      expected_(std::move(expected)) {}

namespace {

enum class Tok { Ident, Meta, Not, Box, Dia, True, False, Arrow, And, Or, LParen, RParen, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "atom";
    case Tok::Meta: return "metavariable";
    case Tok::Not: return "'~'";
    case Tok::Box: return "'box'";
    case Tok::Dia: return "'dia'";
    case Tok::True: return "'true'";
    case Tok::False: return "'false'";
    case Tok::Arrow: return "'->'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "?";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto word_end = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
      ++j;
    return j;
  };
  while (i < text.size()) {
    char c = text[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    std::size_t start = i;
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t j = word_end(i);
      std::string w(text.substr(i, j - i));
      Tok k = Tok::Ident;
      if (w == "box") k = Tok::Box;
      else if (w == "dia") k = Tok::Dia;
      else if (w == "not") k = Tok::Not;
      else if (w == "true") k = Tok::True;
      else if (w == "false") k = Tok::False;
      out.push_back({k, std::move(w), start});
      i = j;
      continue;
    }
    if (c == '?') {
      std::size_t j = word_end(i + 1);
      std::string_view name = text.substr(i + 1, j - i - 1);
      if (!is_identifier(name))
        throw ParseError(ParseError::Kind::Lexical, start, "malformed metavariable at offset " +
                                                               std::to_string(start));
      out.push_back({Tok::Meta, std::string(name), start});
      i = j;
      continue;
    }
    switch (c) {
      case '~': out.push_back({Tok::Not, "~", start}); ++i; continue;
      case '&': out.push_back({Tok::And, "&", start}); ++i; continue;
      case '|': out.push_back({Tok::Or, "|", start}); ++i; continue;
      case '(': out.push_back({Tok::LParen, "(", start}); ++i; continue;
      case ')': out.push_back({Tok::RParen, ")", start}); ++i; continue;
      case '-':
        if (i + 1 < text.size() && text[i + 1] == '>') {
          out.push_back({Tok::Arrow, "->", start});
          i += 2;
          continue;
        }
        break;
      default:
        break;
    }
    throw ParseError(ParseError::Kind::Lexical, start,
                     "unexpected character '" + std::string(1, c) + "' at offset " +
                         std::to_string(start));
  }
  out.push_back({Tok::End, "", text.size()});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, const Signature& sig, bool allow_meta)
      : toks_(std::move(toks)), sig_(sig), allow_meta_(allow_meta) {}

  Formula run() {
    Formula f = implication();
    if (peek().kind != Tok::End) fail({Tok::Arrow, Tok::Or, Tok::And, Tok::End});
    return f;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::initializer_list<Tok> expected) const {
    const Token& t = peek();
    std::vector<std::string> exp;
    for (Tok k : expected) exp.emplace_back(describe(k));
    std::string msg = "parse error at ";
    msg += t.kind == Tok::End ? "end of input" : "offset " + std::to_string(t.pos);
    msg += ": expected ";
    for (std::size_t i = 0; i < exp.size(); ++i) msg += (i ? ", " : "") + exp[i];
    if (t.kind != Tok::End) msg += ", found '" + t.text + "'";
    throw ParseError(ParseError::Kind::Syntax, t.pos, std::move(msg), std::move(exp));
  }

  Formula implication() {
    Formula lhs = disjunction();
    if (peek().kind == Tok::Arrow) {
      next();
      return Formula::implies(std::move(lhs), implication());
    }
    return lhs;
  }

  Formula disjunction() {
    Formula f = conjunction();
    while (peek().kind == Tok::Or) {
      next();
      f = Formula::disj(std::move(f), conjunction());
    }
    return f;
  }

  Formula conjunction() {
    Formula f = unary();
    while (peek().kind == Tok::And) {
      next();
      f = Formula::conj(std::move(f), unary());
    }
    return f;
  }

  Formula unary() {
    switch (peek().kind) {
      case Tok::Not: next(); return Formula::neg(unary());
      case Tok::Box: next(); return Formula::box(unary());
      case Tok::Dia: next(); return Formula::dia(unary());
      default: return primary();
    }
  }

  Formula primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        if (!sig_.contains(t.text))
          throw ParseError(ParseError::Kind::UnknownAtom, t.pos,
                           "unknown atom '" + t.text + "' at offset " + std::to_string(t.pos));
        next();
        return Formula::atom(t.text);
      }
      case Tok::Meta:
        if (!allow_meta_) {
          throw ParseError(ParseError::Kind::Syntax, t.pos,
                           "metavariable '?" + t.text + "' not allowed in a formula",
                           {describe(Tok::Ident)});
        }
        next();
        return Formula::meta(t.text);
      case Tok::True: next(); return Formula::top(sig_.first());
      case Tok::False: next(); return Formula::bot(sig_.first());
      case Tok::LParen: {
        next();
        Formula f = implication();
        if (peek().kind != Tok::RParen) fail({Tok::RParen});
        next();
        return f;
      }
      default:
        fail({Tok::Ident, Tok::Not, Tok::Box, Tok::Dia, Tok::True, Tok::False, Tok::LParen});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  const Signature& sig_;
  bool allow_meta_;
};

}  // namespace

Formula parse(std::string_view text, const Signature& sig) {
  return Parser(lex(text), sig, false).run();
}

Schema parse_schema(std::string_view text, const Signature& sig) {
  return Schema(Parser(lex(text), sig, true).run());
}

Signature infer_signature(std::string_view text) {
  std::vector<std::string> names;
  for (const auto& t : lex(text))
    if (t.kind == Tok::Ident && std::find(names.begin(), names.end(), t.text) == names.end())
      names.push_back(t.text);
  if (names.empty()) names.emplace_back("p");
  return Signature(std::move(names));
}

// ---------------------------------------------------------------------------
// Printing

namespace {

int precedence(Op op) {
  switch (op) {
    case Op::Implies: return 1;
    case Op::Or: return 2;
    case Op::And: return 3;
    case Op::Not:
    case Op::Box:
    case Op::Dia: return 4;
    default: return 5;
  }
}

void print_rec(const Formula& f, int min_prec, std::string& out) {
  const int p = precedence(f.op());
  const bool paren = p < min_prec;
  if (paren) out += '(';
  switch (f.op()) {
    case Op::Atom: out += f.name(); break;
    case Op::Meta: out += '?'; out += f.name(); break;
    case Op::Top: out += "true"; break;
    case Op::Bot: out += "false"; break;
    case Op::Not: out += '~'; print_rec(f.arg(), 4, out); break;
    case Op::Box: out += "box "; print_rec(f.arg(), 4, out); break;
    case Op::Dia: out += "dia "; print_rec(f.arg(), 4, out); break;
    case Op::Implies:
      print_rec(f.lhs(), 2, out);
      out += " -> ";
      print_rec(f.rhs(), 1, out);
      break;
    case Op::Or:
      print_rec(f.lhs(), 2, out);
      out += " | ";
      print_rec(f.rhs(), 3, out);
      break;
    case Op::And:
      print_rec(f.lhs(), 3, out);
      out += " & ";
      print_rec(f.rhs(), 4, out);
      break;
  }
  if (paren) out += ')';
}

void sexpr_rec(const Formula& f, std::string& out) {
  auto node = [&](const char* head, std::initializer_list<const Formula*> kids) {
    out += '(';
    out += head;
    for (const Formula* k : kids) {
      out += ' ';
      sexpr_rec(*k, out);
    }
    out += ')';
  };
  switch (f.op()) {
    case Op::Atom: out += f.name(); break;
    case Op::Meta: out += '?'; out += f.name(); break;
    case Op::Top: out += "(true "; out += f.name(); out += ')'; break;
    case Op::Bot: out += "(false "; out += f.name(); out += ')'; break;
    case Op::Not: node("not", {&f.arg()}); break;
    case Op::Box: node("box", {&f.arg()}); break;
    case Op::Dia: node("dia", {&f.arg()}); break;
    case Op::Implies: node("imp", {&f.lhs(), &f.rhs()}); break;
    case Op::Or: node("or", {&f.lhs(), &f.rhs()}); break;
    case Op::And: node("and", {&f.lhs(), &f.rhs()}); break;
  }
}

}  // namespace

std::string print(const Formula& f) {
  std::string out;
  print_rec(f, 1, out);
  return out;
}

std::string to_sexpr(const Formula& f) {
  std::string out;
  sexpr_rec(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Schemata

namespace {

void collect_metas(const Formula& f, std::vector<std::string>& out) {
  if (f.is_ground()) return;
  if (f.op() == Op::Meta) {
    if (std::find(out.begin(), out.end(), f.name()) == out.end()) out.push_back(f.name());
    return;
  }
  collect_metas(f.lhs(), out);
  if (f.op() == Op::Implies || f.op() == Op::Or || f.op() == Op::And) collect_metas(f.rhs(), out);
}

Formula substitute(const Formula& f, const Substitution& subst) {
  if (f.is_ground()) return f;
  switch (f.op()) {
    case Op::Meta: {
      auto it = subst.find(f.name());
      if (it == subst.end())
        throw std::invalid_argument("missing binding for metavariable ?" + f.name());
      return it->second;
    }
    case Op::Not: return Formula::neg(substitute(f.arg(), subst));
    case Op::Box: return Formula::box(substitute(f.arg(), subst));
    case Op::Dia: return Formula::dia(substitute(f.arg(), subst));
    case Op::Implies: return Formula::implies(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
    case Op::Or: return Formula::disj(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
    case Op::And: return Formula::conj(substitute(f.lhs(), subst), substitute(f.rhs(), subst));
    default: return f;
  }
}

}  // namespace

Schema::Schema(Formula body) : body_(std::move(body)) { collect_metas(body_, metas_); }

Formula Schema::instantiate(const Substitution& subst) const {
  for (const auto& m : metas_)
    if (!subst.count(m)) throw std::invalid_argument("missing binding for metavariable ?" + m);
  return substitute(body_, subst);
}

Schema desugar(const Schema& s) { return Schema(desugar(s.body())); }

std::string print(const Schema& s) { return print(s.body()); }

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Formula> enumerate_formulas(const Signature& sig, int max_depth) {
  if (max_depth < 0) throw std::invalid_argument("max_depth must be >= 0");
  std::vector<Formula> all;
  for (const auto& a : sig.atoms()) all.push_back(Formula::atom(a));
  std::size_t prev_begin = 0;  // first index of depth d-1
  for (int d = 1; d <= max_depth; ++d) {
    const std::size_t prev_end = all.size();
    for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(Formula::neg(all[i]));
    for (std::size_t i = 0; i < prev_end; ++i)
      for (std::size_t j = 0; j < prev_end; ++j)
        if (i >= prev_begin || j >= prev_begin) all.push_back(Formula::implies(all[i], all[j]));
    for (std::size_t i = prev_begin; i < prev_end; ++i) all.push_back(Formula::box(all[i]));
    prev_begin = prev_end;
  }
  return all;
}

}  // namespace pmlkit
