#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "pmlkit/kripke.hpp"
#include "pmlkit/report.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit {

/// World variable. 0 is the designated free variable `w`; k > 0 prints as
/// `v{k-1}`.
using WorldVar = std::uint32_t;
inline constexpr WorldVar kFreeWorld = 0;

std::string world_var_name(WorldVar v);

enum class CoreOp : std::uint8_t { PredW, PredR, PredV, Not, Imp, Forall };

/// First-order-style formula over the predicates W (designated world),
/// R (accessibility) and V (valuation).
class CoreForm {
 public:
  static CoreForm pred_w(WorldVar x);
  static CoreForm pred_r(WorldVar x, WorldVar y);
  static CoreForm pred_v(std::string atom, WorldVar x);
  static CoreForm neg(CoreForm c);
  static CoreForm imp(CoreForm a, CoreForm b);
  static CoreForm forall(WorldVar x, CoreForm body);

  CoreOp op() const;
  /// PredW/PredV/Forall: the variable. PredR: the source.
  WorldVar var() const;
  /// PredR: the target.
  WorldVar var2() const;
  const std::string& atom() const;
  const CoreForm& lhs() const;
  const CoreForm& rhs() const;
  const CoreForm& body() const { return lhs(); }

  std::size_t size() const;
  std::size_t quantifiers() const;

  friend bool operator==(const CoreForm& a, const CoreForm& b);

 private:
  struct Node;
  explicit CoreForm(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

/// Box becomes `forall v. W(v) -> (R(w,v) -> body[v])`.
CoreForm translate_max(const Formula& f);
/// Box becomes `forall v. R(w,v) -> body[v]` (standard translation).
CoreForm translate_min(const Formula& f);

/// Replaces every `W(x) -> c` by `c`, i.e. instantiates W as the whole
/// domain and simplifies `true -> c`.
CoreForm strip_world_guards(const CoreForm& c);

/// Free variables are exactly {w} (or none) and no quantifier rebinds a
/// variable already in scope.
bool well_scoped(const CoreForm& c);

std::string print_core(const CoreForm& c);

struct CoreEnv {
  const KripkeModel& model;
  std::map<std::string, WorldId> binding;
};

/// Quantifiers range over the whole domain; W(x) tests designation.
/// Throws std::invalid_argument on an unbound variable.
bool eval_core(const CoreForm& c, const CoreEnv& env);

/// Shared clauses for core forms. `binding[x]` holds the world of variable
/// x; it is updated in place under quantifiers and restored on return.
template <class Truth, class Interp>
Truth evaluate_core(const CoreForm& c, std::vector<WorldId>& binding, const Interp& in) {
  using T = TruthOps<Truth>;
  const auto& frame = in.frame();
  switch (c.op()) {
    case CoreOp::PredW:
      return T::from_bool(frame.designated(binding[c.var()]));
    case CoreOp::PredR:
      return T::from_bool(frame.related(binding[c.var()], binding[c.var2()]));
    case CoreOp::PredV:
      return in.atom(c.atom(), binding[c.var()]);
    case CoreOp::Not:
      return T::neg(evaluate_core<Truth>(c.lhs(), binding, in));
    case CoreOp::Imp: {
      Truth a = evaluate_core<Truth>(c.lhs(), binding, in);
      if (T::none(a)) return T::top();
      return T::imp(a, evaluate_core<Truth>(c.rhs(), binding, in));
    }
    case CoreOp::Forall: {
      const WorldVar x = c.var();
      if (binding.size() <= x) binding.resize(x + 1, 0);
      const WorldId saved = binding[x];
      Truth acc = T::top();
      for (WorldId d = 0; d < frame.size(); ++d) {
        binding[x] = d;
        acc = T::conj(acc, evaluate_core<Truth>(c.body(), binding, in));
        if (T::none(acc)) break;
      }
      binding[x] = saved;
      return acc;
    }
  }
  return T::top();
}

using Translation = std::function<CoreForm(const Formula&)>;

struct FaithfulnessOptions {
  int max_depth = 2;
  int max_worlds = 2;
  unsigned jobs = 1;
  /// Replaceable for mutation testing.
  Translation max_translation = translate_max;
  Translation min_translation = translate_min;
};

/// Exhaustive agreement check of the three evaluators over every core
/// formula of depth <= max_depth over `sig` and every model with
/// 1..max_worlds worlds (every non-empty designated subset, relation and
/// valuation). Claims: Faithful1a (deep vs maximal, pointwise),
/// Faithful1b (deep vs maximal validity over the model space), Faithful2
/// (deep vs minimal, all worlds designated), Faithful3 (maximal vs
/// minimal, all worlds designated).
Report check_faithfulness(const Signature& sig, const FaithfulnessOptions& opts);

}  // namespace pmlkit
