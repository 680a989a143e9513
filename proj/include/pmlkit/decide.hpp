#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "pmlkit/countermodel.hpp"
#include "pmlkit/kripke.hpp"
#include "pmlkit/logic.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit {

/// Diagnostic summary of a closed tableau.
struct ValidTrace {
  std::size_t branches = 0;
  std::size_t rule_applications = 0;
};

class TableauResult {
 public:
  explicit TableauResult(ValidTrace t) : v_(t) {}
  explicit TableauResult(Countermodel c) : v_(std::move(c)) {}

  bool valid() const { return std::holds_alternative<ValidTrace>(v_); }
  const ValidTrace& trace() const { return std::get<ValidTrace>(v_); }
  /// Falsifies the formula at `world` and has the logic's frame properties.
  const Countermodel& countermodel() const { return std::get<Countermodel>(v_); }

 private:
  std::variant<ValidTrace, Countermodel> v_;
};

/// The label budget was exhausted before the tableau was decided.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct DecideOptions {
  std::size_t max_labels = 64;
};

/// Labeled tableau for validity over the logic's frame class (T reflexive,
/// B symmetric, 4 transitive). Labels form a tree rooted at the world to
/// be falsified; logics with 4 use ancestor subset blocking. Open branches
/// are read off as models, closed under the frame properties and
/// re-evaluated before being reported.
TableauResult decide(const Formula& f, Logic logic, const DecideOptions& opts = {});

struct CrossCheck {
  bool decided_valid = false;
  std::optional<Countermodel> found;  // finder result up to the bound
  bool consistent = false;
  std::string detail;
};

/// Runs decide and the bounded finder on the logic's frame properties and
/// reports whether they agree: a finder model refutes Valid, and every
/// model returned by either side must falsify f.
CrossCheck cross_check(const Formula& f, Logic logic, int max_worlds);

}  // namespace pmlkit
