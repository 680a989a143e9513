#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pmlkit/classify.hpp"
#include "pmlkit/correspond.hpp"
#include "pmlkit/countermodel.hpp"
#include "pmlkit/decide.hpp"
#include "pmlkit/hilbert.hpp"
#include "pmlkit/kripke.hpp"
#include "pmlkit/translate.hpp"

namespace py = pybind11;
using namespace pmlkit;

namespace {

Formula parse_text(const std::string& text, const std::optional<std::vector<std::string>>& sig) {
  return parse(text, sig ? Signature(*sig) : infer_signature(text));
}

py::list report_to_py(const Report& r) {
  py::list out;
  for (const auto& c : r.claims) {
    py::dict d;
    d["name"] = c.name;
    d["instances"] = c.instances;
    d["violations"] = c.violation_count;
    d["details"] = c.violations;
    out.append(d);
  }
  return out;
}

std::vector<FrameProperty> props_from(const std::vector<std::string>& names) {
  std::vector<FrameProperty> out;
  for (const auto& n : names) out.push_back(parse_frame_property(n));
  return out;
}

Schema schema_from(const std::string& text) {
  if (auto id = parse_axiom_id(text)) return axiom_schema(*id);
  return parse_schema(text, infer_signature(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Propositional modal logic workbench";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<ResourceLimit>(m, "ResourceLimit", PyExc_RuntimeError);

  py::class_<Formula>(m, "Formula")
      .def_static("parse", &parse_text, py::arg("text"), py::arg("sig") = py::none())
      .def("desugar", [](const Formula& f) { return desugar(f); })
      .def("sexpr", [](const Formula& f) { return to_sexpr(f); })
      .def("atoms", [](const Formula& f) { return atoms_of(f); })
      .def_property_readonly("depth", &Formula::depth)
      .def_property_readonly("size", &Formula::size)
      .def("__str__", [](const Formula& f) { return print(f); })
      .def("__repr__", [](const Formula& f) { return "Formula('" + print(f) + "')"; })
      .def("__eq__", [](const Formula& a, const Formula& b) { return a == b; })
      .def("__hash__", &Formula::hash);

  m.def("parse", &parse_text, py::arg("text"), py::arg("sig") = py::none(),
        "Parse a formula; the signature defaults to its identifiers.");
  m.def("enumerate_formulas",
        [](const std::vector<std::string>& sig, int depth) {
          return enumerate_formulas(Signature(sig), depth);
        },
        py::arg("sig"), py::arg("depth"));

  py::class_<KripkeModel>(m, "KripkeModel")
      .def_static("from_text", [](const std::string& t) { return read_model(t); })
      .def("to_text", [](const KripkeModel& k) { return write_model(k); })
      .def_property_readonly("size", &KripkeModel::size)
      .def_property_readonly("edges", [](const KripkeModel& k) { return k.frame().edges(); })
      .def_property_readonly("worlds", [](const KripkeModel& k) { return k.frame().worlds(); })
      .def("eval", [](const KripkeModel& k, WorldId w, const Formula& f) { return eval_deep(k, w, f); },
           py::arg("world"), py::arg("formula"))
      .def("valid", [](const KripkeModel& k, const Formula& f) { return valid_in_model(k, f); })
      .def("has_property",
           [](const KripkeModel& k, const std::string& p) { return has_property(k, parse_frame_property(p)); })
      .def("__repr__", [](const KripkeModel& k) { return write_model(k); });

  m.def("decide",
        [](const Formula& f, const std::string& logic, std::size_t max_labels) {
          DecideOptions opts;
          opts.max_labels = max_labels;
          const TableauResult r = decide(f, Logic::parse(logic), opts);
          py::dict d;
          d["valid"] = r.valid();
          if (r.valid()) {
            d["branches"] = r.trace().branches;
            d["rule_applications"] = r.trace().rule_applications;
          } else {
            d["model"] = r.countermodel().model;
            d["world"] = r.countermodel().world;
          }
          return d;
        },
        py::arg("formula"), py::arg("logic") = "K", py::arg("max_labels") = 64);

  m.def("find_countermodel",
        [](const Formula& f, const std::vector<std::string>& props, int max_worlds, unsigned jobs)
            -> std::optional<std::pair<KripkeModel, WorldId>> {
          const auto ps = props_from(props);
          SearchOptions opts;
          opts.jobs = jobs;
          auto cm = find_countermodel(f, ps, max_worlds, Signature(atoms_of(desugar(f))), opts);
          if (!cm) return std::nullopt;
          return std::make_pair(cm->model, cm->world);
        },
        py::arg("formula"), py::arg("props") = std::vector<std::string>{}, py::arg("max_worlds") = 4,
        py::arg("jobs") = 1);

  m.def("export_dot", &export_dot, py::arg("model"), py::arg("marked"), py::arg("formula"));

  m.def("classify",
        [](const Formula& f, unsigned jobs) {
          const ClassificationResult r = classify(f, jobs);
          py::dict d, verdicts;
          std::vector<std::string> minimal;
          for (const auto& l : r.minimal) minimal.push_back(l.name());
          for (const auto& v : r.evidence)
            verdicts[py::str(v.logic.name())] =
                v.error.empty() ? py::object(py::bool_(v.valid)) : py::object(py::none());
          d["minimal"] = minimal;
          d["verdicts"] = verdicts;
          d["monotone"] = r.monotone;
          return d;
        },
        py::arg("formula"), py::arg("jobs") = 1);

  m.def("corpus", [] {
    std::vector<std::pair<std::string, Formula>> out;
    for (const auto& c : classification_corpus()) out.emplace_back(c.name, c.formula);
    return out;
  });

  m.def("check_proof_script",
        [](const std::string& text, const std::string& logic) -> std::pair<bool, std::string> {
          const ProofResult r = check_proof(parse_script(text), Logic::parse(logic));
          if (const auto* e = std::get_if<ProofError>(&r)) return {false, e->reason};
          return {true, print(std::get<Formula>(r))};
        },
        py::arg("text"), py::arg("logic") = "K");

  m.def("proof_corpus", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& s : proof_corpus()) out.emplace_back(s.name, s.text);
    return out;
  });

  m.def("check_faithfulness",
        [](const std::vector<std::string>& sig, int depth, int max_worlds, unsigned jobs) {
          FaithfulnessOptions opts;
          opts.max_depth = depth;
          opts.max_worlds = max_worlds;
          opts.jobs = jobs;
          return report_to_py(check_faithfulness(Signature(sig), opts));
        },
        py::arg("sig") = std::vector<std::string>{"p"}, py::arg("depth") = 2,
        py::arg("max_worlds") = 2, py::arg("jobs") = 1);

  m.def("correspondence_check",
        [](const std::string& schema, const std::string& prop, int max_worlds) {
          const CorrespondenceResult r =
              correspondence_check(schema_from(schema), parse_frame_property(prop), max_worlds);
          py::dict d;
          d["holds"] = r.holds();
          d["frames_checked"] = r.frames_checked;
          if (r.counter) {
            d["counter_frame"] = describe_frame(r.counter->frame);
            d["direction"] = std::string(to_string(r.counter->direction));
          }
          return d;
        },
        py::arg("schema"), py::arg("property"), py::arg("max_worlds") = 4);

  m.def("loeb_suite", [](int max_worlds) { return report_to_py(loeb_suite(max_worlds)); },
        py::arg("max_worlds") = 4);
}
