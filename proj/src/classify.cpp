#include "pmlkit/classify.hpp"

#include <algorithm>
#include <thread>

#include "pmlkit/countermodel.hpp"

namespace pmlkit {

namespace {

constexpr int kEvidenceWorlds = 4;

/// Tableau models can be large; the canonical finder model is the
/// smallest one and reads better as evidence.
std::optional<Countermodel> small_countermodel(const Formula& f, Logic l) {
  const auto props = l.frame_properties();
  return find_countermodel(f, props, kEvidenceWorlds, Signature(atoms_of(desugar(f))));
}

}  // namespace

ClassificationResult classify(const Formula& f, unsigned jobs) {
  const auto& cube = Logic::cube();
  ClassificationResult out{f, {}, {}, true, true};
  out.evidence.resize(cube.size());
  auto run = [&](std::size_t k) {
    Verdict& v = out.evidence[k];
    v.logic = cube[k];
    try {
      TableauResult r = decide(f, cube[k]);
      v.valid = r.valid();
      if (v.valid)
        v.trace = r.trace();
      else
        v.countermodel = small_countermodel(f, cube[k]).value_or(r.countermodel());
    } catch (const ResourceLimit& e) {
      v.error = e.what();
    }
  };
  jobs = std::clamp<unsigned>(jobs, 1, static_cast<unsigned>(cube.size()));
  if (jobs == 1) {
    for (std::size_t k = 0; k < cube.size(); ++k) run(k);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t k = t; k < cube.size(); k += jobs) run(k);
      });
    for (auto& th : pool) th.join();
  }

  for (const auto& v : out.evidence) {
    if (!v.error.empty()) out.complete = false;
    if (!v.valid) continue;
    for (const auto& w : out.evidence)
      if (w.logic.extends(v.logic) && w.error.empty() && !w.valid) out.monotone = false;
    const bool weaker_valid = std::any_of(out.evidence.begin(), out.evidence.end(), [&](const Verdict& w) {
      return w.valid && !(w.logic == v.logic) && v.logic.extends(w.logic);
    });
    if (!weaker_valid) out.minimal.push_back(v.logic);
  }
  return out;
}

const std::vector<CorpusFormula>& classification_corpus() {
  static const std::vector<CorpusFormula> corpus = [] {
    const Signature sig{"p", "q"};
    const std::vector<std::pair<const char*, const char*>> src = {
        {"F1", "dia dia p -> dia p"},
        {"F2", "dia box p -> box dia p"},
        {"F3", "dia box p -> box p"},
        {"F4", "box dia box dia p -> box dia p"},
        {"F5", "dia (p & dia q) -> dia p & dia q"},
        {"F6", "box (p -> q) & dia box ~q -> ~dia q"},
        {"F7", "dia p -> box (p | dia p)"},
        {"F8", "dia box p -> p | dia p"},
        {"F9", "box dia p & box dia ~p -> dia dia p"},
        {"F10", "box (p -> box q) & box dia ~q -> ~box q"},
    };
    std::vector<CorpusFormula> out;
    for (const auto& [name, text] : src) out.push_back({name, parse(text, sig)});
    return out;
  }();
  return corpus;
}

std::optional<Formula> corpus_lookup(const std::string& name) {
  for (const auto& c : classification_corpus())
    if (c.name == name) return c.formula;
  return std::nullopt;
}

std::string format_logics(const std::vector<Logic>& logics) {
  std::string out = "{";
  for (std::size_t i = 0; i < logics.size(); ++i) out += (i ? ", " : "") + logics[i].name();
  return out + "}";
}

std::string classification_table(const std::vector<std::string>& names,
                                 const std::vector<ClassificationResult>& results) {
  std::size_t name_width = 7;
  for (const auto& n : names) name_width = std::max(name_width, n.size());
  auto pad = [](std::string s, std::size_t width, std::size_t shown) {
    return s + std::string(width > shown ? width - shown : 0, ' ');
  };
  std::string out = pad("formula", name_width + 2, 7);
  for (const auto& l : Logic::cube()) out += pad(l.name(), 5, l.name().size());
  out += "minimal\n";
  for (std::size_t r = 0; r < results.size(); ++r) {
    out += pad(names[r], name_width + 2, names[r].size());
    for (const auto& v : results[r].evidence) {
      const char* mark = !v.error.empty() ? "?" : v.valid ? "✓" : "✗";
      out += pad(mark, 5, 1);
    }
    out += format_logics(results[r].minimal) + "\n";
  }
  return out;
}

}  // namespace pmlkit
