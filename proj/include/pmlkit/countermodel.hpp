#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pmlkit/kripke.hpp"
#include "pmlkit/syntax.hpp"

namespace pmlkit {

struct Countermodel {
  KripkeModel model;
  WorldId world;
};

struct SearchStats {
  /// visited[n-1]: (relation, valuation) pairs evaluated with n worlds.
  /// Relations lacking a requested property are skipped, not counted.
  std::vector<std::uint64_t> visited;
};

struct SearchOptions {
  unsigned jobs = 1;
  SearchStats* stats = nullptr;
};

/// First model in canonical order that has every property in `props` and a
/// world falsifying f: ascending world count, then relation bitmask (bit
/// i*n+j is the pair (i,j)), then valuation bitmask over the atoms of f
/// (bit a*n+w: a-th atom of f in `sig` order true at w), then least world.
/// All worlds are designated; atoms of `sig` not in f are false.
std::optional<Countermodel> find_countermodel(const Formula& f,
                                              std::span<const FrameProperty> props,
                                              int max_worlds, const Signature& sig,
                                              const SearchOptions& opts = {});

/// Graphviz digraph: one node per world labelled with its name and the
/// literals of the atoms of f; the marked world is drawn as a double circle.
std::string export_dot(const KripkeModel& m, WorldId marked, const Formula& f);

}  // namespace pmlkit
