#include "pmlkit/correspond.hpp"

#include <algorithm>
#include <stdexcept>

#include "pmlkit/hilbert.hpp"

namespace pmlkit {

namespace {

constexpr int kMaxWorlds = 4;

/// Leaves (metavariables and atoms) share one namespace of quantified
/// variables; leaf k is true at world w in lane bit k*n + w.
struct LeafInterp {
  const Frame& fr;
  const std::vector<std::string>& metas;
  const std::vector<std::string>& atoms;
  std::vector<Lanes> masks;

  const Frame& frame() const { return fr; }
  Lanes lookup(std::size_t k, WorldId w) const { return masks[k * fr.size() + w]; }
  Lanes meta(const std::string& name, WorldId w) const {
    return lookup(static_cast<std::size_t>(std::find(metas.begin(), metas.end(), name) - metas.begin()), w);
  }
  Lanes atom(const std::string& name, WorldId w) const {
    return lookup(metas.size() +
                      static_cast<std::size_t>(std::find(atoms.begin(), atoms.end(), name) - atoms.begin()),
                  w);
  }
};

}  // namespace

bool schema_valid_on_frame(const Frame& frame, const Schema& s) {
  const Formula body = desugar(s.body());
  const std::vector<std::string>& metas = s.metavariables();
  const std::vector<std::string> atoms = atoms_of(body);
  const std::size_t leaves = metas.size() + atoms.size();
  const std::size_t n = frame.size();
  if (leaves * n > 24) throw std::invalid_argument("schema too large for exhaustive frame validity");

  // Values at undesignated worlds are never read, so every designated
  // subset assignment appears among the lanes.
  const AssignmentLanes lanes(leaves * n);
  const Lanes live = lanes.live();
  const auto worlds = frame.worlds();
  for (std::size_t block = 0; block < lanes.blocks(); ++block) {
    LeafInterp in{frame, metas, atoms, std::vector<Lanes>(leaves * n)};
    for (std::size_t k = 0; k < in.masks.size(); ++k) in.masks[k] = lanes.variable(k, block);
    for (WorldId w : worlds)
      if ((evaluate<Lanes>(body, w, in) & live) != live) return false;
  }
  return true;
}

std::string_view to_string(CounterFrame::Direction d) {
  return d == CounterFrame::Direction::PropertyWithoutSchema
             ? "property holds but the schema is not valid"
             : "schema is valid but the property fails";
}

void for_each_frame(int max_worlds, const std::function<void(const Frame&)>& visit) {
  if (max_worlds < 1 || max_worlds > kMaxWorlds)
    throw std::invalid_argument("max_worlds must be in 1.." + std::to_string(kMaxWorlds));
  for (std::size_t n = 1; n <= static_cast<std::size_t>(max_worlds); ++n) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n * n)); ++r)
      visit(Frame::from_bits(n, all, r));
  }
}

CorrespondenceResult correspondence_check(const Schema& s, FrameProperty p, int max_worlds) {
  CorrespondenceResult out;
  if (max_worlds < 1 || max_worlds > kMaxWorlds)
    throw std::invalid_argument("max_worlds must be in 1.." + std::to_string(kMaxWorlds));
  for (std::size_t n = 1; n <= static_cast<std::size_t>(max_worlds); ++n) {
    const std::uint64_t all = (std::uint64_t{1} << n) - 1;
    for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n * n)); ++r) {
      Frame fr = Frame::from_bits(n, all, r);
      ++out.frames_checked;
      const bool prop = has_property(fr, p);
      const bool valid = schema_valid_on_frame(fr, s);
      if (prop == valid) continue;
      auto& slot = prop ? out.property_without_schema : out.schema_without_property;
      if (!slot) slot = fr;
      if (!out.counter)
        out.counter = CounterFrame{std::move(fr), prop ? CounterFrame::Direction::PropertyWithoutSchema
                                                       : CounterFrame::Direction::SchemaWithoutProperty};
      if (out.property_without_schema && out.schema_without_property) return out;
    }
  }
  return out;
}

std::vector<FrameClaim> loeb_claims() {
  auto prop = [](FrameProperty p) {
    return [p](const Frame& f, bool) { return has_property(f, p); };
  };
  auto loeb = [](const Frame&, bool valid) { return valid; };
  return {
      {"(a) Transitive & ConverseWellFounded => Loeb",
       [](const Frame& f, bool) {
         return has_property(f, FrameProperty::Transitive) &&
                has_property(f, FrameProperty::ConverseWellFounded);
       },
       loeb},
      {"(b) Loeb => ConverseWellFounded", loeb, prop(FrameProperty::ConverseWellFounded)},
      {"(c) Loeb => Irreflexive", loeb, prop(FrameProperty::Irreflexive)},
      {"(d) Loeb => Transitive", loeb, prop(FrameProperty::Transitive)},
  };
}

Report loeb_suite(int max_worlds, const std::vector<FrameClaim>& claims) {
  Report report;
  for (const auto& c : claims) report.claim(c.name);
  const Schema& loeb = axiom_schema(AxiomSchemaId::Loeb);
  for_each_frame(max_worlds, [&](const Frame& f) {
    const bool valid = schema_valid_on_frame(f, loeb);
    for (std::size_t k = 0; k < claims.size(); ++k) {
      if (!claims[k].premise(f, valid)) continue;
      ClaimReport& cr = report.claims[k];
      ++cr.instances;
      if (!claims[k].conclusion(f, valid)) cr.add_violation("frame: " + describe_frame(f));
    }
  });
  return report;
}

std::string describe_frame(const Frame& f) {
  std::string out = "n=" + std::to_string(f.size()) + " rel=[";
  bool first = true;
  for (const auto& [u, v] : f.edges()) {
    out += (first ? "[" : ", [") + std::to_string(u) + "," + std::to_string(v) + "]";
    first = false;
  }
  out += "]";
  if (!f.all_designated()) {
    out += " in=[";
    first = true;
    for (WorldId w : f.worlds()) {
      out += (first ? "" : ",") + std::to_string(w);
      first = false;
    }
    out += "]";
  }
  return out;
}

}  // namespace pmlkit
