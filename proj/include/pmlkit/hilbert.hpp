#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pmlkit/logic.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit {

enum class AxiomSchemaId : std::uint8_t { H1, H2, H3, Kdist, T, B, Four, Loeb };

std::string_view to_string(AxiomSchemaId id);
/// Accepts H1, H2, H3, K/KDIST, T, B, 4/FOUR, LOEB (case-insensitive).
std::optional<AxiomSchemaId> parse_axiom_id(std::string_view name);
/// Schema bodies use metavariables ?phi, ?psi, ?gamma.
const Schema& axiom_schema(AxiomSchemaId id);
/// H1-H3 and Kdist always; T, B, Four when the logic has them; never Loeb.
bool admits(Logic logic, AxiomSchemaId id);

struct AxStep {
  AxiomSchemaId schema;
  Substitution subst;
};
/// From step `minor` = A and step `major` = A -> B, infer B.
struct MpStep {
  std::size_t minor;
  std::size_t major;
};
struct NecStep {
  std::size_t premise;
};
using ProofStep = std::variant<AxStep, MpStep, NecStep>;

/// Step indices are 0-based here; scripts number steps from 1.
struct Proof {
  std::vector<ProofStep> steps;
  Formula conclusion;
};

struct ProofError {
  std::size_t step;  // 0-based; steps.size() for a conclusion mismatch
  std::string reason;
};

using ProofResult = std::variant<Formula, ProofError>;

/// Step formulas are compared after desugaring. Metavariables are treated
/// as opaque atoms, so a schematic proof checks as a proof schema.
ProofResult check_proof(const Proof& p, Logic logic);

/// Desugared formula proved by each step; throws std::invalid_argument on
/// the first bad step.
std::vector<Formula> step_formulas(const Proof& p, Logic logic);

/// Substitutes metavariables throughout a schematic proof.
Proof instantiate(const Proof& p, const Substitution& subst);

/// Natural-deduction style scratchpad that turns derivations from
/// hypotheses into hypothesis-free Hilbert proofs via the deduction theorem.
class ProofBuilder {
 public:
  std::size_t hyp(const Formula& f);
  std::size_t ax(AxiomSchemaId id, Substitution subst);
  std::size_t mp(std::size_t minor, std::size_t major);
  /// Only on lines that depend on no hypothesis.
  std::size_t nec(std::size_t line);
  /// Appends a closed proof; returns the line of its conclusion.
  std::size_t splice(const Proof& p);

  /// Removes hypothesis `h`: every line depending on it becomes `h -> line`.
  /// Returns the line of `h -> last`.
  std::size_t discharge(const Formula& h);

  const Formula& formula(std::size_t line) const { return lines_.at(line).f; }
  std::size_t size() const { return lines_.size(); }
  /// Proof of the last line. Throws if any hypothesis remains in use.
  Proof finish(const Formula& conclusion) const;

 private:
  enum class Kind : std::uint8_t { Hyp, Ax, Mp, Nec };
  struct Line {
    Line(Kind k, Formula formula) : kind(k), f(std::move(formula)) {}
    Kind kind;
    Formula f;  // desugared
    AxiomSchemaId schema = AxiomSchemaId::H1;
    Substitution subst;
    std::size_t a = 0, b = 0;
  };
  std::size_t push(Line l);
  std::vector<Line> lines_;
  std::vector<std::vector<Formula>> hyps_;  // open hypotheses per line
};

/// Derived lemmas as proof templates over the given formulas.
namespace lemma {
Proof identity(const Formula& a);                                   // a -> a
Proof dne(const Formula& a);                                        // ~~a -> a
Proof dni(const Formula& a);                                        // a -> ~~a
Proof syll(const Formula& a, const Formula& b, const Formula& c);   // (a->b) -> ((b->c) -> (a->c))
Proof contra(const Formula& a, const Formula& b);                   // (a->b) -> (~b -> ~a)
Proof and_intro(const Formula& a, const Formula& b);                // a -> (b -> a & b)
Proof k_dia(const Formula& a, const Formula& b);  // box(a->b) -> (dia a -> dia b)
}  // namespace lemma

/// K-diamond over ?phi and ?psi; instantiate() before or after checking.
Proof derive_K_dia();

/// Script syntax, one step per line, `#` comments:
///   n: AX <schema> [phi := "...", psi := "..."]
///   n: MP i j
///   n: NEC i
///   n: LEMMA <name> [a := "...", ...]     (expanded in place)
///   QED "<formula>"
/// Lemma names: ID, DNE, DNI, SYLL, CONTRA, AND_INTRO, KDIA; their
/// parameters are phi, psi, gamma. Quoted formulas may use ?metavariables.
struct ScriptError : std::runtime_error {
  ScriptError(std::size_t line, const std::string& msg);
  std::size_t line;
};

Proof parse_script(std::string_view text);
/// Prints a proof (lemmas already expanded) in script syntax.
std::string print_script(const Proof& p);

struct CorpusScript {
  std::string name;
  std::string text;
};
/// Bundled scripts: identity, kdia, box_dia_and.
const std::vector<CorpusScript>& proof_corpus();

}  // namespace pmlkit
