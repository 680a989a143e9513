#include "cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "pmlkit/classify.hpp"
#include "pmlkit/correspond.hpp"
#include "pmlkit/countermodel.hpp"
#include "pmlkit/decide.hpp"
#include "pmlkit/hilbert.hpp"
#include "pmlkit/kripke.hpp"
#include "pmlkit/translate.hpp"

namespace pmlkit::cli {

namespace {

constexpr const char* kUsage =
    "usage: pmlkit [--jobs N] <parse|eval|check-proof|prove|countermodel|classify|correspond|loeb|"
    "faithful> ... (see --help)";

/// Bad input detected after argument parsing; reported like a usage error.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path);
  out << text;
}

Signature signature_for(const std::string& text, const std::string& sig_flag) {
  if (sig_flag.empty()) return infer_signature(text);
  std::vector<std::string> atoms;
  std::stringstream ss(sig_flag);
  for (std::string a; std::getline(ss, a, ',');) atoms.push_back(a);
  return Signature(std::move(atoms));
}

std::vector<FrameProperty> parse_props(const std::string& list) {
  std::vector<FrameProperty> props;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) props.push_back(parse_frame_property(item));
  return props;
}

Schema parse_schema_arg(const std::string& text) {
  if (auto id = parse_axiom_id(text)) return axiom_schema(*id);
  return parse_schema(text, infer_signature(text));
}

Signature first_atoms(int k) {
  static const char* kNames[] = {"p", "q", "r", "s", "t", "u"};
  if (k < 1 || k > 6) throw UsageError("--atoms must be in 1..6");
  return Signature(std::vector<std::string>(kNames, kNames + k));
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Propositional modal logic workbench", "pmlkit"};
  app.require_subcommand(1);
  unsigned jobs = 1;
  app.add_option("--jobs", jobs, "Worker threads for exhaustive searches")->check(CLI::Range(1u, 256u));

  std::string formula_text, sig_flag, model_path, logic_name, props_flag, dot_path, model_out,
      script_path, schema_text, property_name;
  int world = 0, cm_worlds = 4, corr_worlds = 4, loeb_worlds = 4, faith_worlds = 2, depth = 2,
      atoms = 1;
  std::size_t max_labels = 64;
  bool corpus = false;

  auto* parse_cmd = app.add_subcommand("parse", "Parse and print a formula");
  parse_cmd->add_option("formula", formula_text)->required();
  parse_cmd->add_option("--sig", sig_flag, "Comma-separated atoms (default: inferred)");

  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a formula at a world of a model file");
  eval_cmd->add_option("--model", model_path)->required();
  eval_cmd->add_option("--world", world)->required();
  eval_cmd->add_option("formula", formula_text)->required();

  auto* check_cmd = app.add_subcommand("check-proof", "Check a Hilbert proof script");
  check_cmd->add_option("script", script_path)->required();
  check_cmd->add_option("--logic", logic_name)->default_val("K");

  auto* prove_cmd = app.add_subcommand("prove", "Decide validity with the tableau");
  prove_cmd->add_option("formula", formula_text)->required();
  prove_cmd->add_option("--logic", logic_name)->default_val("K");
  prove_cmd->add_option("--max-labels", max_labels)->check(CLI::PositiveNumber);

  auto* cm_cmd = app.add_subcommand("countermodel", "Bounded exhaustive countermodel search");
  cm_cmd->add_option("formula", formula_text)->required();
  cm_cmd->add_option("--props", props_flag, "Frame properties, e.g. r,s,t");
  cm_cmd->add_option("--max-worlds", cm_worlds)->check(CLI::Range(1, 4));
  cm_cmd->add_option("--dot", dot_path, "Write the model as a Graphviz digraph");
  cm_cmd->add_option("--model-out", model_out, "Write the model file");

  auto* classify_cmd = app.add_subcommand("classify", "Weakest cube logics validating a formula");
  classify_cmd->add_option("formula", formula_text);
  classify_cmd->add_flag("--corpus", corpus, "Classify F1-F10");

  auto* corr_cmd = app.add_subcommand("correspond", "Check a schema/frame-property correspondence");
  corr_cmd->add_option("schema", schema_text, "Axiom name (T, B, 4, ...) or schema text")->required();
  corr_cmd->add_option("property", property_name)->required();
  corr_cmd->add_option("--max-worlds", corr_worlds)->check(CLI::Range(1, 4));

  auto* loeb_cmd = app.add_subcommand("loeb", "Check the Loeb frame claims");
  loeb_cmd->add_option("--max-worlds", loeb_worlds)->check(CLI::Range(1, 4));

  auto* faithful_cmd = app.add_subcommand("faithful", "Exhaustive faithfulness grid");
  faithful_cmd->add_option("--depth", depth)->check(CLI::Range(0, 4));
  faithful_cmd->add_option("--max-worlds", faith_worlds)->check(CLI::Range(1, 4));
  faithful_cmd->add_option("--atoms", atoms)->check(CLI::Range(1, 6));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << kUsage << "\n";
    return 2;
  }

  try {
    if (*parse_cmd) {
      const Formula f = parse(formula_text, signature_for(formula_text, sig_flag));
      out << "formula: " << print(f) << "\n";
      out << "sexpr: " << to_sexpr(f) << "\n";
      out << "core: " << print(desugar(f)) << "\n";
      return 0;
    }
    if (*eval_cmd) {
      const KripkeModel m = read_model(read_file(model_path));
      const Formula f = parse(formula_text, m.signature());
      if (world < 0 || !m.frame().designated(static_cast<WorldId>(world)))
        throw UsageError("world " + std::to_string(world) + " is not a designated world of the model");
      const bool v = eval_deep(m, static_cast<WorldId>(world), f);
      out << (v ? "true" : "false") << "\n";
      return v ? 0 : 1;
    }
    if (*check_cmd) {
      const Logic logic = Logic::parse(logic_name);
      const Proof p = parse_script(read_file(script_path));
      const ProofResult r = check_proof(p, logic);
      if (const auto* e = std::get_if<ProofError>(&r)) {
        out << "proof rejected: " << e->reason << "\n";
        return 1;
      }
      out << "proof ok in " << logic.name() << ": " << print(std::get<Formula>(r)) << " ("
          << p.steps.size() << " steps)\n";
      return 0;
    }
    if (*prove_cmd) {
      const Logic logic = Logic::parse(logic_name);
      const Formula f = parse(formula_text, infer_signature(formula_text));
      DecideOptions opts;
      opts.max_labels = max_labels;
      const TableauResult r = decide(f, logic, opts);
      if (r.valid()) {
        out << "valid in " << logic.name() << "\n";
        out << "branches: " << r.trace().branches
            << ", rule applications: " << r.trace().rule_applications << "\n";
        return 0;
      }
      const auto& cm = r.countermodel();
      out << "invalid in " << logic.name() << "\n";
      out << "countermodel (" << cm.model.size() << " worlds), falsified at world " << cm.world << ":\n";
      out << write_model(cm.model);
      return 1;
    }
    if (*cm_cmd) {
      const Formula f = parse(formula_text, infer_signature(formula_text));
      const Signature sig(atoms_of(desugar(f)));
      const auto props = parse_props(props_flag);
      SearchStats stats;
      SearchOptions opts;
      opts.jobs = jobs;
      opts.stats = &stats;
      const auto cm = find_countermodel(f, props, cm_worlds, sig, opts);
      if (!cm) {
        std::uint64_t visited = 0;
        for (auto v : stats.visited) visited += v;
        out << "no countermodel with <= " << cm_worlds << " worlds (" << visited
            << " models visited)\n";
        return 0;
      }
      const std::size_t n = cm->model.size();
      out << "countermodel found: " << n << " worlds, falsified at world " << cm->world << "\n";
      if (n > 1) {
        std::uint64_t visited = 0;
        for (std::size_t k = 0; k + 1 < n; ++k) visited += stats.visited[k];
        out << "exhaustive search: no countermodel with <= " << n - 1 << " worlds (" << visited
            << " models visited)\n";
      }
      out << write_model(cm->model);
      if (!dot_path.empty()) write_file(dot_path, export_dot(cm->model, cm->world, f));
      if (!model_out.empty()) write_file(model_out, write_model(cm->model));
      return 1;
    }
    if (*classify_cmd) {
      if (corpus == !formula_text.empty())
        throw UsageError("classify takes either a formula or --corpus");
      std::vector<std::string> names;
      std::vector<ClassificationResult> results;
      if (corpus) {
        for (const auto& c : classification_corpus()) {
          names.push_back(c.name);
          results.push_back(classify(c.formula, jobs));
        }
      } else {
        const Formula f = parse(formula_text, infer_signature(formula_text));
        names.push_back(print(f));
        results.push_back(classify(f, jobs));
      }
      out << classification_table(names, results);
      bool complete = true;
      for (std::size_t i = 0; i < results.size(); ++i) {
        if (!results[i].monotone) {
          err << names[i] << ": validity is not upward closed in the cube\n";
          return 1;
        }
        complete = complete && results[i].complete;
      }
      return complete ? 0 : 3;
    }
    if (*corr_cmd) {
      const Schema s = parse_schema_arg(schema_text);
      const FrameProperty p = parse_frame_property(property_name);
      const CorrespondenceResult r = correspondence_check(s, p, corr_worlds);
      Report report;
      ClaimReport& c = report.claim(print(s) + " <=> " + std::string(to_string(p)));
      c.instances = r.frames_checked;
      if (r.property_without_schema)
        c.add_violation("property holds but the schema is not valid: " +
                        describe_frame(*r.property_without_schema));
      if (r.schema_without_property)
        c.add_violation("schema is valid but the property fails: " +
                        describe_frame(*r.schema_without_property));
      out << report.to_text();
      return r.holds() ? 0 : 1;
    }
    if (*loeb_cmd) {
      const Report r = loeb_suite(loeb_worlds);
      out << r.to_text();
      return r.ok() ? 0 : 1;
    }
    if (*faithful_cmd) {
      FaithfulnessOptions opts;
      opts.max_depth = depth;
      opts.max_worlds = faith_worlds;
      opts.jobs = jobs;
      const Report r = check_faithfulness(first_atoms(atoms), opts);
      out << r.to_text();
      return r.ok() ? 0 : 1;
    }
  } catch (const ResourceLimit& e) {
    err << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n" << kUsage << "\n";
    return 2;
  } catch (const ScriptError& e) {
    err << "error: " << e.what() << "\n" << kUsage << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n" << kUsage << "\n";
    return 2;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << kUsage << "\n";
    return 2;
  } catch (const std::runtime_error& e) {
    // Malformed model files.
    err << "error: " << e.what() << "\n" << kUsage << "\n";
    return 2;
  }
  err << "error: no command given\n" << kUsage << "\n";
  return 2;
}

}  // namespace pmlkit::cli
