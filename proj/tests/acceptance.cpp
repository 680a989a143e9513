// Acceptance run: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <string>
#include <thread>

#include "mutations.hpp"
#include "pmlkit/classify.hpp"
#include "pmlkit/correspond.hpp"
#include "pmlkit/countermodel.hpp"
#include "pmlkit/decide.hpp"
#include "pmlkit/hilbert.hpp"
#include "pmlkit/translate.hpp"

using namespace pmlkit;

namespace {

// Wall-clock budgets in seconds.
constexpr double kClassifyBudget = 60;
constexpr double kFaithfulBudget = 300;
constexpr double kCountermodelBudget = 1;  // per search
constexpr double kSahlqvistBudget = 30;
constexpr double kLoebBudget = 120;
constexpr double kHilbertBudget = 1;
constexpr double kCrossCheckBudget = 300;

constexpr int kCorrespondenceBound = 4;
constexpr int kCrossCheckBound = 4;
constexpr std::size_t kMinMutations = 10;

unsigned workers() { return std::max(1u, std::thread::hardware_concurrency()); }

struct Outcome {
  bool ok;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

int failures = 0;

void criterion(int id, const char* title, double budget, const std::function<Outcome()>& body) {
  const auto t0 = std::chrono::steady_clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double s = seconds_since(t0);
  const bool in_time = s <= budget;
  const bool pass = o.ok && in_time;
  if (!pass) ++failures;
  std::printf("%s criterion %d: %s (%s) [%.2f s, budget %.0f s%s]\n", pass ? "PASS" : "FAIL", id, title,
              o.detail.c_str(), s, budget, in_time ? "" : ", over budget");
  std::fflush(stdout);
}

Outcome classification() {
  const std::map<std::string, std::string> expected = {
      {"F1", "{K4}"},  {"F2", "{KB}"},  {"F3", "{KB4}"},    {"F4", "{KB, K4}"}, {"F5", "{K4}"},
      {"F6", "{KB4}"}, {"F7", "{KB4}"}, {"F8", "{KT, KB}"}, {"F9", "{KT}"},     {"F10", "{KT}"}};
  int matched = 0;
  std::string bad;
  for (const auto& c : classification_corpus()) {
    const ClassificationResult r = classify(c.formula, workers());
    const std::string got = format_logics(r.minimal);
    if (got == expected.at(c.name) && r.complete && r.monotone)
      ++matched;
    else
      bad += " " + c.name + "=" + got;
  }
  return {matched == 10, std::to_string(matched) + "/10 antichains exact" + bad};
}

Outcome faithfulness() {
  FaithfulnessOptions opts;
  opts.max_depth = 3;
  opts.max_worlds = 3;
  opts.jobs = workers();
  const Report r = check_faithfulness(Signature{"p", "q"}, opts);
  std::string detail = "depth 3, 3 worlds, 2 atoms:";
  for (const auto& c : r.claims)
    detail += " " + c.name + " " + std::to_string(c.violation_count) + "/" + std::to_string(c.instances);

  FaithfulnessOptions mutated;
  mutated.max_depth = 2;
  mutated.max_worlds = 2;
  mutated.min_translation = testing::translate_min_without_r_guard;
  const Report m = check_faithfulness(Signature{"p"}, mutated);
  const std::uint64_t caught = m.find("Faithful2")->violation_count;
  detail += "; R-guard mutation: " + std::to_string(caught) + " Faithful2 violations";
  return {r.ok() && r.claims.size() == 4 && caught >= 1, detail};
}

Outcome countermodels() {
  const Formula four = parse("box p -> box box p", Signature{"p"});
  const Formula collapse = parse("p -> box p", Signature{"p"});
  const std::vector<FrameProperty> refl = {FrameProperty::Reflexive};
  double worst = 0;
  auto timed = [&](auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    auto r = fn();
    worst = std::max(worst, seconds_since(t0));
    return r;
  };

  SearchStats stats;
  SearchOptions opts;
  opts.stats = &stats;
  const auto a = timed([&] { return find_countermodel(four, refl, 3, Signature{"p"}, opts); });
  const bool a_ok = a && a->model.size() == 3 && has_property(a->model, FrameProperty::Reflexive) &&
                    !eval_deep(a->model, a->world, four);
  const std::uint64_t below = stats.visited.size() >= 2 ? stats.visited[0] + stats.visited[1] : 0;
  const auto none = timed([&] { return find_countermodel(four, refl, 2, Signature{"p"}); });
  const auto b = timed([&] { return find_countermodel(collapse, {}, 4, Signature{"p"}); });
  const bool b_ok = b && b->model.size() == 2 && !eval_deep(b->model, b->world, collapse);

  std::string detail = "4-axiom: ";
  detail += a ? std::to_string(a->model.size()) + "-world reflexive model" : "none";
  detail += ", none with <= 2 worlds (" + std::to_string(below) + " models visited)";
  detail += "; modal collapse: ";
  detail += b ? std::to_string(b->model.size()) + "-world model" : "none";
  char slowest[64];
  std::snprintf(slowest, sizeof slowest, "; slowest search %.3f s", worst);
  detail += slowest;
  return {a_ok && !none && below > 0 && b_ok && worst <= kCountermodelBudget, detail};
}

Outcome sahlqvist() {
  const std::vector<std::pair<AxiomSchemaId, FrameProperty>> pairs = {
      {AxiomSchemaId::T, FrameProperty::Reflexive},
      {AxiomSchemaId::B, FrameProperty::Symmetric},
      {AxiomSchemaId::Four, FrameProperty::Transitive}};
  bool ok = true;
  std::string detail;
  for (const auto& [id, p] : pairs) {
    const CorrespondenceResult r = correspondence_check(axiom_schema(id), p, kCorrespondenceBound);
    ok = ok && r.holds();
    detail += std::string(to_string(id)) + "/" + std::string(to_string(p)) + (r.holds() ? " holds; " : " FAILS; ");
  }
  const CorrespondenceResult bad =
      correspondence_check(axiom_schema(AxiomSchemaId::Four), FrameProperty::Reflexive, kCorrespondenceBound);
  const bool witnessed = bad.property_without_schema.has_value() && !bad.holds();
  ok = ok && witnessed;
  detail += "4/reflexive counter-frame: ";
  detail += witnessed ? describe_frame(*bad.property_without_schema) : "none";
  return {ok, detail};
}

Outcome loeb() {
  const Report r = loeb_suite(4);
  bool ok = r.claims.size() == 4;
  std::string detail;
  for (const auto& c : r.claims) {
    ok = ok && c.instances > 0 && c.violation_count == 0;
    detail += (detail.empty() ? "" : "; ") + c.name.substr(0, 3) + " " + std::to_string(c.violation_count) +
              "/" + std::to_string(c.instances);
  }
  return {ok, "violations/instances at 4 worlds: " + detail};
}

Outcome hilbert() {
  const Logic k = Logic::parse("K");
  int green = 0;
  std::size_t mutants = 0, rejected = 0;
  for (const auto& s : proof_corpus()) {
    const Proof p = parse_script(s.text);
    if (std::holds_alternative<Formula>(check_proof(p, k))) ++green;
    for (const auto& [what, q] : testing::single_step_mutations(p)) {
      ++mutants;
      if (std::holds_alternative<ProofError>(check_proof(q, Logic::parse("S5")))) ++rejected;
    }
  }
  const int scripts = static_cast<int>(proof_corpus().size());
  return {green == scripts && scripts == 3 && mutants >= kMinMutations && rejected == mutants,
          std::to_string(green) + "/" + std::to_string(scripts) + " scripts green, " + std::to_string(rejected) +
              "/" + std::to_string(mutants) + " mutations rejected"};
}

Outcome cross_checks() {
  int agree = 0, total = 0;
  std::string bad;
  for (const auto& c : classification_corpus())
    for (const auto& l : Logic::cube()) {
      ++total;
      const CrossCheck x = cross_check(c.formula, l, kCrossCheckBound);
      if (x.consistent)
        ++agree;
      else
        bad += " " + c.name + "/" + l.name() + ": " + x.detail;
    }
  return {agree == total && total == 80, std::to_string(agree) + "/" + std::to_string(total) + " pairs agree" + bad};
}

}  // namespace

int main() {
  criterion(1, "classification table", kClassifyBudget, classification);
  criterion(2, "faithfulness grid", kFaithfulBudget, faithfulness);
  criterion(3, "countermodel reproduction", 3 * kCountermodelBudget, countermodels);
  criterion(4, "Sahlqvist correspondences", kSahlqvistBudget, sahlqvist);
  criterion(5, "Loeb suite", kLoebBudget, loeb);
  criterion(6, "Hilbert corpus", kHilbertBudget, hilbert);
  criterion(7, "prover/finder cross-check", kCrossCheckBudget, cross_checks);
  return failures;
}
