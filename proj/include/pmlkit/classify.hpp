#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pmlkit/decide.hpp"
#include "pmlkit/logic.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit {

struct Verdict {
  Logic logic;
  bool valid = false;
  std::optional<ValidTrace> trace;
  /// Canonical finder model (at most 4 worlds) when one exists, else the
  /// tableau model.
  std::optional<Countermodel> countermodel;
  /// Non-empty when decide hit its resource limit; no verdict then.
  std::string error;
};

struct ClassificationResult {
  Formula formula;
  /// Weakest logics in which the formula is valid, in cube order.
  std::vector<Logic> minimal;
  /// One verdict per cube logic, in cube order.
  std::vector<Verdict> evidence;
  /// Every verdict was decided.
  bool complete = true;
  /// Validity is closed upwards in the cube.
  bool monotone = true;
};

/// Decides f in all eight cube logics (independently, on up to `jobs`
/// threads) and computes the antichain of minimal logics.
ClassificationResult classify(const Formula& f, unsigned jobs = 1);

struct CorpusFormula {
  std::string name;
  Formula formula;
};

/// F1-F10 over the signature [p, q].
const std::vector<CorpusFormula>& classification_corpus();
std::optional<Formula> corpus_lookup(const std::string& name);

/// "{KB, K4}".
std::string format_logics(const std::vector<Logic>& logics);

/// One row per entry: name, a mark per cube logic, minimal antichain.
std::string classification_table(const std::vector<std::string>& names,
                                 const std::vector<ClassificationResult>& results);

}  // namespace pmlkit
