#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pmlkit/syntax.hpp"
#include "pmlkit/truth.hpp"

namespace pmlkit {

using WorldId = std::uint32_t;
using Edge = std::pair<WorldId, WorldId>;

enum class FrameProperty {
  Reflexive,
  Symmetric,
  Transitive,
  Serial,
  Euclidean,
  Irreflexive,
  ConverseWellFounded,
};

std::string_view to_string(FrameProperty p);
/// Accepts full names (case-insensitive), `cwf`, and the letters r/s/t/d/e/i/w.
FrameProperty parse_frame_property(std::string_view name);

/// Domain 0..n-1, a designated non-empty subset of worlds and an
/// accessibility relation over the domain.
class Frame {
 public:
  Frame(std::size_t domain_size, std::vector<bool> designated, std::vector<Edge> edges);
  /// All of the domain designated.
  Frame(std::size_t domain_size, std::vector<Edge> edges);
  /// Relation bit i*n+j holds pair (i,j); designated bit i holds world i.
  static Frame from_bits(std::size_t n, std::uint64_t designated, std::uint64_t relation);

  std::size_t size() const { return n_; }
  bool designated(WorldId w) const { return w < n_ && designated_[w]; }
  bool all_designated() const;
  bool related(WorldId u, WorldId v) const { return matrix_[u * n_ + v]; }
  std::span<const WorldId> successors(WorldId u) const { return succ_[u]; }
  /// Sorted lexicographically.
  const std::vector<Edge>& edges() const { return edges_; }
  std::vector<WorldId> worlds() const;

  bool operator==(const Frame& o) const {
    return n_ == o.n_ && designated_ == o.designated_ && edges_ == o.edges_;
  }

 private:
  std::size_t n_;
  std::vector<bool> designated_;
  std::vector<Edge> edges_;
  std::vector<bool> matrix_;
  std::vector<std::vector<WorldId>> succ_;
};

/// Decides `p` with quantifiers restricted to the designated worlds.
bool has_property(const Frame& f, FrameProperty p);

/// Smallest superset of the relation having all of `props` that can be
/// obtained by adding edges (Reflexive, Symmetric, Transitive, Serial,
/// Euclidean are closure properties; the others are ignored).
Frame close_under(const Frame& f, std::span<const FrameProperty> props);

class KripkeModel {
 public:
  /// `truth[a][w]`: atom sig.atoms()[a] holds at world w.
  KripkeModel(Frame frame, Signature sig, std::vector<std::vector<bool>> truth);

  const Frame& frame() const { return frame_; }
  const Signature& signature() const { return sig_; }
  std::size_t size() const { return frame_.size(); }
  bool holds(std::size_t atom, WorldId w) const { return truth_[atom][w]; }
  bool holds(std::string_view atom, WorldId w) const;

  bool operator==(const KripkeModel&) const = default;

 private:
  Frame frame_;
  Signature sig_;
  std::vector<std::vector<bool>> truth_;
};

inline bool has_property(const KripkeModel& m, FrameProperty p) {
  return has_property(m.frame(), p);
}

/// Shared recursive truth clauses. `Interp` supplies the frame and atom
/// (and metavariable) truth as values of `Truth`. Box quantifies over
/// designated successors only.
template <class Truth, class Interp>
Truth evaluate(const Formula& f, WorldId w, const Interp& in) {
  using T = TruthOps<Truth>;
  switch (f.op()) {
    case Op::Atom:
      return in.atom(f.name(), w);
    case Op::Meta:
      return in.meta(f.name(), w);
    case Op::Not:
      return T::neg(evaluate<Truth>(f.arg(), w, in));
    case Op::Implies: {
      Truth a = evaluate<Truth>(f.lhs(), w, in);
      if (T::none(a)) return T::top();
      return T::imp(a, evaluate<Truth>(f.rhs(), w, in));
    }
    case Op::Box: {
      Truth acc = T::top();
      const auto& frame = in.frame();
      for (WorldId v : frame.successors(w)) {
        if (!frame.designated(v)) continue;
        acc = T::conj(acc, evaluate<Truth>(f.arg(), v, in));
        if (T::none(acc)) break;
      }
      return acc;
    }
    default:
      throw std::invalid_argument("evaluate expects a desugared formula, got " + print(f));
  }
}

/// Truth of f at designated world w. Sugar is desugared first.
bool eval_deep(const KripkeModel& m, WorldId w, const Formula& f);
bool valid_in_model(const KripkeModel& m, const Formula& f);

/// Structured text:
///   worlds: 3
///   in: [0, 1, 2]
///   rel: [[0, 0], [0, 1]]
///   val: {p: [0, 2], q: []}
std::string write_model(const KripkeModel& m);
/// Throws std::runtime_error on malformed input.
KripkeModel read_model(std::string_view text);

std::string describe_model(const KripkeModel& m);

}  // namespace pmlkit
