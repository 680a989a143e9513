#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "pmlkit/kripke.hpp"
#include "pmlkit/report.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit {

/// True iff every assignment of designated-world subsets to the schema's
/// metavariables (and atoms, if any) makes the schema true at every
/// designated world. Edges touching undesignated worlds are irrelevant.
bool schema_valid_on_frame(const Frame& frame, const Schema& s);

struct CounterFrame {
  enum class Direction {
    PropertyWithoutSchema,  // frame has the property, schema not valid
    SchemaWithoutProperty,  // schema valid, frame lacks the property
  };
  Frame frame;
  Direction direction;
};

std::string_view to_string(CounterFrame::Direction d);

struct CorrespondenceResult {
  std::uint64_t frames_checked = 0;
  /// First failing frame in canonical order; empty when the pair holds.
  std::optional<CounterFrame> counter;
  /// First failing frame of each direction.
  std::optional<Frame> property_without_schema;
  std::optional<Frame> schema_without_property;
  bool holds() const { return !counter.has_value(); }
};

/// Checks `has_property(F, p) <=> schema_valid_on_frame(F, s)` on every
/// frame with 1..max_worlds worlds (all designated), ascending world count
/// then relation bitmask. Stops once both directions have failed.
CorrespondenceResult correspondence_check(const Schema& s, FrameProperty p, int max_worlds);

/// Visits every frame with 1..max_worlds worlds, all designated, in
/// canonical order.
void for_each_frame(int max_worlds, const std::function<void(const Frame&)>& visit);

/// Frame-level implication checked on every frame: instances count the
/// frames satisfying `premise`.
struct FrameClaim {
  std::string name;
  std::function<bool(const Frame&, bool loeb_valid)> premise;
  std::function<bool(const Frame&, bool loeb_valid)> conclusion;
};

/// (a) transitive & converse well-founded => Loeb valid; (b) Loeb valid =>
/// converse well-founded; (c) Loeb valid => irreflexive; (d) Loeb valid =>
/// transitive.
std::vector<FrameClaim> loeb_claims();

Report loeb_suite(int max_worlds, const std::vector<FrameClaim>& claims = loeb_claims());

/// "n=2 rel=[[0,1],[1,0]]".
std::string describe_frame(const Frame& f);

}  // namespace pmlkit
