#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace pmlkit {

/// Ordered, non-empty list of propositional symbols.
class Signature {
 public:
  explicit Signature(std::vector<std::string> atoms);
  Signature(std::initializer_list<std::string> atoms)
      : Signature(std::vector<std::string>(atoms)) {}

  const std::vector<std::string>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  const std::string& first() const { return atoms_.front(); }
  bool contains(std::string_view name) const;
  /// Position of `name`, or size() when absent.
  std::size_t index_of(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<std::string> atoms_;
};

bool is_identifier(std::string_view s);

enum class Op : std::uint8_t {
  Atom,
  Meta,  // schema metavariable; never produced by parse()
  Not,
  Implies,
  Box,
  // sugar
  Or,
  And,
  Dia,
  Top,
  Bot,
};

/// Immutable formula tree. Copies share structure.
///
/// Top and Bot carry the atom used to desugar them (`p -> p` and
/// `~(p -> p)`), normally the first atom of the governing signature.
class Formula {
 public:
  static Formula atom(std::string name);
  static Formula meta(std::string name);
  static Formula neg(Formula f);
  static Formula implies(Formula lhs, Formula rhs);
  static Formula box(Formula f);
  static Formula disj(Formula lhs, Formula rhs);
  static Formula conj(Formula lhs, Formula rhs);
  static Formula dia(Formula f);
  static Formula top(std::string atom);
  static Formula bot(std::string atom);

  Op op() const;
  /// Atom, metavariable, or Top/Bot carrier name.
  const std::string& name() const;
  /// Sole operand of a unary node, left operand of a binary one.
  const Formula& lhs() const;
  const Formula& rhs() const;
  const Formula& arg() const { return lhs(); }

  bool is_core() const;    // only Atom/Not/Implies/Box
  bool is_ground() const;  // no metavariables
  bool has_sugar() const;  // some Or/And/Dia/Top/Bot
  std::size_t depth() const;
  std::size_t size() const;
  std::size_t hash() const;

  friend bool operator==(const Formula& a, const Formula& b);
  friend bool operator<(const Formula& a, const Formula& b);

 private:
  struct Node;
  explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Formula make(Op op, std::string name, const Formula* lhs, const Formula* rhs);

  std::shared_ptr<const Node> node_;
};

struct FormulaHash {
  std::size_t operator()(const Formula& f) const { return f.hash(); }
};

/// Eliminates Or/And/Dia/Top/Bot. Identity on core formulas.
Formula desugar(const Formula& f);

/// Atoms occurring in f (Top/Bot contribute their carrier atom), ordered by
/// first occurrence in a left-to-right traversal.
std::vector<std::string> atoms_of(const Formula& f);

/// Atoms of f restricted to and ordered by `sig`.
std::vector<std::string> atoms_of(const Formula& f, const Signature& sig);

class ParseError : public std::runtime_error {
 public:
  enum class Kind { Lexical, Syntax, UnknownAtom };

  ParseError(Kind kind, std::size_t position, std::string message,
             std::vector<std::string> expected = {});

  Kind kind() const { return kind_; }
  /// Byte offset into the input; input length for end-of-input.
  std::size_t position() const { return position_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  Kind kind_;
  std::size_t position_;
  std::vector<std::string> expected_;
};

/// Precedence, tightest first: `~`/`not`/`box`/`dia`, `&`, `|`, then
/// right-associative `->`. `&` and `|` associate to the left.
Formula parse(std::string_view text, const Signature& sig);

/// Signature made of the identifiers in `text`, in order of first
/// appearance; `[p]` when there are none.
Signature infer_signature(std::string_view text);

std::string print(const Formula& f);

/// Canonical s-expression, e.g. `(imp (box p) p)`.
std::string to_sexpr(const Formula& f);

using Substitution = std::map<std::string, Formula>;

/// Formula-shaped tree with `?name` metavariable leaves.
class Schema {
 public:
  explicit Schema(Formula body);

  const Formula& body() const { return body_; }
  /// Metavariable names (without `?`) in first-occurrence order.
  const std::vector<std::string>& metavariables() const { return metas_; }

  /// Throws std::invalid_argument when a metavariable has no binding.
  Formula instantiate(const Substitution& subst) const;

  bool operator==(const Schema& o) const { return body_ == o.body_; }

 private:
  Formula body_;
  std::vector<std::string> metas_;
};

Schema parse_schema(std::string_view text, const Signature& sig);

/// Desugars the schema body; metavariables stay in place.
Schema desugar(const Schema& s);

std::string print(const Schema& s);

/// Every core formula over `sig` of depth <= max_depth, grouped by
/// depth; within a depth: negations, implications, boxes.
std::vector<Formula> enumerate_formulas(const Signature& sig, int max_depth);

}  // namespace pmlkit
