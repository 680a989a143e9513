#include "pmlkit/countermodel.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>
#include <thread>

namespace pmlkit {

namespace {

constexpr int kMaxWorlds = 4;

struct SliceInterp {
  const Frame& fr;
  const std::vector<std::string>& atoms;
  std::vector<Lanes> masks;  // masks[a * n + w]

  const Frame& frame() const { return fr; }
  Lanes atom(const std::string& name, WorldId w) const {
    const auto it = std::find(atoms.begin(), atoms.end(), name);
    return masks[static_cast<std::size_t>(it - atoms.begin()) * fr.size() + w];
  }
  Lanes meta(const std::string& name, WorldId) const {
    throw std::invalid_argument("cannot search countermodels for schema ?" + name);
  }
};

struct Hit {
  std::uint64_t relation;
  std::uint64_t valuation;
  WorldId world;
};

/// Scans relations [begin, end) with n worlds; first hit in canonical order.
std::optional<Hit> scan(const Formula& core, const std::vector<std::string>& atoms,
                        std::span<const FrameProperty> props, std::size_t n, std::uint64_t begin,
                        std::uint64_t end, std::uint64_t& visited) {
  const std::uint64_t all = (std::uint64_t{1} << n) - 1;
  const AssignmentLanes lanes(atoms.size() * n);
  const Lanes live = lanes.live();
  const auto live_count = static_cast<std::uint64_t>(std::popcount(live));
  for (std::uint64_t r = begin; r < end; ++r) {
    const Frame fr = Frame::from_bits(n, all, r);
    if (!std::all_of(props.begin(), props.end(),
                     [&](FrameProperty p) { return has_property(fr, p); }))
      continue;
    for (std::size_t block = 0; block < lanes.blocks(); ++block) {
      SliceInterp in{fr, atoms, std::vector<Lanes>(atoms.size() * n)};
      for (std::size_t k = 0; k < in.masks.size(); ++k) in.masks[k] = lanes.variable(k, block);
      visited += live_count;
      unsigned best_lane = 64;
      WorldId best_world = 0;
      for (WorldId w = 0; w < n; ++w) {
        const Lanes bad = ~evaluate<Lanes>(core, w, in) & live;
        if (bad == 0) continue;
        const auto lane = static_cast<unsigned>(std::countr_zero(bad));
        if (lane < best_lane) {
          best_lane = lane;
          best_world = w;
        }
      }
      if (best_lane < 64) return Hit{r, lanes.assignment(block, best_lane), best_world};
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Countermodel> find_countermodel(const Formula& f,
                                              std::span<const FrameProperty> props,
                                              int max_worlds, const Signature& sig,
                                              const SearchOptions& opts) {
  if (max_worlds < 1) throw std::invalid_argument("max_worlds must be >= 1");
  if (max_worlds > kMaxWorlds)
    throw std::invalid_argument("max_worlds must be <= " + std::to_string(kMaxWorlds));
  const Formula core = desugar(f);
  for (const auto& a : atoms_of(core))
    if (!sig.contains(a)) throw std::invalid_argument("atom '" + a + "' is not in the signature");
  const std::vector<std::string> atoms = atoms_of(core, sig);
  if (atoms.size() * static_cast<std::size_t>(max_worlds) > 30)
    throw std::invalid_argument("too many valuation bits for exhaustive search");
  if (opts.stats) opts.stats->visited.assign(static_cast<std::size_t>(max_worlds), 0);

  for (std::size_t n = 1; n <= static_cast<std::size_t>(max_worlds); ++n) {
    const std::uint64_t relations = std::uint64_t{1} << (n * n);
    const unsigned jobs =
        static_cast<unsigned>(std::clamp<std::uint64_t>(opts.jobs, 1, relations));
    std::vector<std::optional<Hit>> hits(jobs);
    std::vector<std::uint64_t> visited(jobs, 0);
    auto work = [&](unsigned t) {
      hits[t] = scan(core, atoms, props, n, relations * t / jobs, relations * (t + 1) / jobs,
                     visited[t]);
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(work, t);
      for (auto& th : pool) th.join();
    }
    if (opts.stats)
      for (auto v : visited) opts.stats->visited[n - 1] += v;
    // Slices are in canonical order, so the first slice with a hit wins.
    for (const auto& hit : hits) {
      if (!hit) continue;
      std::vector<std::vector<bool>> truth(sig.size(), std::vector<bool>(n, false));
      for (std::size_t a = 0; a < atoms.size(); ++a) {
        const std::size_t idx = sig.index_of(atoms[a]);
        for (std::size_t w = 0; w < n; ++w) truth[idx][w] = (hit->valuation >> (a * n + w)) & 1;
      }
      const std::uint64_t all = (std::uint64_t{1} << n) - 1;
      Countermodel cm{KripkeModel(Frame::from_bits(n, all, hit->relation), sig, std::move(truth)),
                      hit->world};
      if (eval_deep(cm.model, cm.world, core))
        throw std::logic_error("countermodel search returned a model that satisfies the formula");
      return cm;
    }
  }
  return std::nullopt;
}

std::string export_dot(const KripkeModel& m, WorldId marked, const Formula& f) {
  if (!m.frame().designated(marked))
    throw std::invalid_argument("marked world " + std::to_string(marked) + " is not designated");
  const std::vector<std::string> atoms = atoms_of(desugar(f), m.signature());
  std::string out = "digraph countermodel {\n";
  for (WorldId w = 0; w < m.size(); ++w) {
    std::string label = "w" + std::to_string(w);
    for (const auto& a : atoms) label += "\\n" + std::string(m.holds(a, w) ? "" : "¬") + a;
    out += "  w" + std::to_string(w) + " [label=\"" + label + "\"";
    if (w == marked) out += ", shape=doublecircle";
    if (!m.frame().designated(w)) out += ", style=dashed";
    out += "];\n";
  }
  for (const auto& [u, v] : m.frame().edges())
    out += "  w" + std::to_string(u) + " -> w" + std::to_string(v) + ";\n";
  out += "}\n";
  return out;
}

}  // namespace pmlkit
