#include "pmlkit/kripke.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <cctype>
#include <sstream>

namespace pmlkit {

std::string_view to_string(FrameProperty p) {
  switch (p) {
    case FrameProperty::Reflexive: return "reflexive";
    case FrameProperty::Symmetric: return "symmetric";
    case FrameProperty::Transitive: return "transitive";
    case FrameProperty::Serial: return "serial";
    case FrameProperty::Euclidean: return "euclidean";
    case FrameProperty::Irreflexive: return "irreflexive";
    case FrameProperty::ConverseWellFounded: return "converse-well-founded";
  }
  return "?";
}

FrameProperty parse_frame_property(std::string_view name) {
  std::string s(name);
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  if (s == "r" || s == "reflexive") return FrameProperty::Reflexive;
  if (s == "s" || s == "symmetric") return FrameProperty::Symmetric;
  if (s == "t" || s == "transitive") return FrameProperty::Transitive;
  if (s == "d" || s == "serial") return FrameProperty::Serial;
  if (s == "e" || s == "euclidean") return FrameProperty::Euclidean;
  if (s == "i" || s == "irreflexive") return FrameProperty::Irreflexive;
  if (s == "w" || s == "cwf" || s == "converse-well-founded" || s == "conversewellfounded")
    return FrameProperty::ConverseWellFounded;
  throw std::invalid_argument("unknown frame property '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Frame

Frame::Frame(std::size_t n, std::vector<bool> designated, std::vector<Edge> edges)
    : n_(n), designated_(std::move(designated)), edges_(std::move(edges)) {
  if (n_ == 0) throw std::invalid_argument("frame needs at least one world");
  if (designated_.size() != n_) throw std::invalid_argument("designated set has wrong size");
  if (std::none_of(designated_.begin(), designated_.end(), [](bool b) { return b; }))
    throw std::invalid_argument("designated worlds must be non-empty");
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  matrix_.assign(n_ * n_, false);
  succ_.assign(n_, {});
  for (auto [u, v] : edges_) {
    if (u >= n_ || v >= n_) throw std::invalid_argument("edge outside the domain");
    matrix_[u * n_ + v] = true;
    succ_[u].push_back(v);
  }
}

Frame::Frame(std::size_t n, std::vector<Edge> edges)
    : Frame(n, std::vector<bool>(n, true), std::move(edges)) {}

Frame Frame::from_bits(std::size_t n, std::uint64_t designated, std::uint64_t relation) {
  if (n == 0 || n > 8) throw std::invalid_argument("from_bits supports 1..8 worlds");
  std::vector<bool> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = (designated >> i) & 1;
  std::vector<Edge> e;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if ((relation >> (i * n + j)) & 1) e.emplace_back(i, j);
  return Frame(n, std::move(d), std::move(e));
}

bool Frame::all_designated() const {
  return std::all_of(designated_.begin(), designated_.end(), [](bool b) { return b; });
}

std::vector<WorldId> Frame::worlds() const {
  std::vector<WorldId> out;
  for (WorldId w = 0; w < n_; ++w)
    if (designated_[w]) out.push_back(w);
  return out;
}

namespace {

bool acyclic(const Frame& f) {
  // Kahn's algorithm over the designated subgraph.
  const auto ws = f.worlds();
  std::vector<int> indeg(f.size(), 0);
  for (auto [u, v] : f.edges())
    if (f.designated(u) && f.designated(v)) ++indeg[v];
  std::vector<WorldId> ready;
  for (WorldId w : ws)
    if (indeg[w] == 0) ready.push_back(w);
  std::size_t seen = 0;
  while (!ready.empty()) {
    WorldId u = ready.back();
    ready.pop_back();
    ++seen;
    for (WorldId v : f.successors(u))
      if (f.designated(v) && --indeg[v] == 0) ready.push_back(v);
  }
  return seen == ws.size();
}

}  // namespace

bool has_property(const Frame& f, FrameProperty p) {
  const auto ws = f.worlds();
  switch (p) {
    case FrameProperty::Reflexive:
      return std::all_of(ws.begin(), ws.end(), [&](WorldId x) { return f.related(x, x); });
    case FrameProperty::Irreflexive:
      return std::none_of(ws.begin(), ws.end(), [&](WorldId x) { return f.related(x, x); });
    case FrameProperty::Serial:
      return std::all_of(ws.begin(), ws.end(), [&](WorldId x) {
        return std::any_of(ws.begin(), ws.end(), [&](WorldId y) { return f.related(x, y); });
      });
    case FrameProperty::Symmetric:
      for (WorldId x : ws)
        for (WorldId y : ws)
          if (f.related(x, y) && !f.related(y, x)) return false;
      return true;
    case FrameProperty::Transitive:
      for (WorldId x : ws)
        for (WorldId y : ws)
          if (f.related(x, y))
            for (WorldId z : ws)
              if (f.related(y, z) && !f.related(x, z)) return false;
      return true;
    case FrameProperty::Euclidean:
      for (WorldId x : ws)
        for (WorldId y : ws)
          if (f.related(x, y))
            for (WorldId z : ws)
              if (f.related(x, z) && !f.related(y, z)) return false;
      return true;
    case FrameProperty::ConverseWellFounded:
      return acyclic(f);
  }
  return false;
}

Frame close_under(const Frame& f, std::span<const FrameProperty> props) {
  const std::size_t n = f.size();
  std::vector<bool> m(n * n, false);
  for (auto [u, v] : f.edges()) m[u * n + v] = true;
  auto has = [&](FrameProperty p) { return std::find(props.begin(), props.end(), p) != props.end(); };
  bool changed = true;
  while (changed) {
    changed = false;
    auto set = [&](std::size_t u, std::size_t v) {
      if (!m[u * n + v]) {
        m[u * n + v] = true;
        changed = true;
      }
    };
    for (std::size_t x = 0; x < n; ++x) {
      if (has(FrameProperty::Reflexive)) set(x, x);
      if (has(FrameProperty::Serial)) {
        bool any = false;
        for (std::size_t y = 0; y < n; ++y) any = any || m[x * n + y];
        if (!any) set(x, x);
      }
      for (std::size_t y = 0; y < n; ++y) {
        if (!m[x * n + y]) continue;
        if (has(FrameProperty::Symmetric)) set(y, x);
        for (std::size_t z = 0; z < n; ++z) {
          if (has(FrameProperty::Transitive) && m[y * n + z]) set(x, z);
          if (has(FrameProperty::Euclidean) && m[x * n + z]) set(y, z);
        }
      }
    }
  }
  std::vector<Edge> e;
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = 0; v < n; ++v)
      if (m[u * n + v]) e.emplace_back(u, v);
  std::vector<bool> d(n);
  for (std::size_t i = 0; i < n; ++i) d[i] = f.designated(static_cast<WorldId>(i));
  return Frame(n, std::move(d), std::move(e));
}

// ---------------------------------------------------------------------------
// Models and evaluation

KripkeModel::KripkeModel(Frame frame, Signature sig, std::vector<std::vector<bool>> truth)
    : frame_(std::move(frame)), sig_(std::move(sig)), truth_(std::move(truth)) {
  if (truth_.size() != sig_.size()) throw std::invalid_argument("valuation must cover the signature");
  for (const auto& row : truth_)
    if (row.size() != frame_.size()) throw std::invalid_argument("valuation must cover the domain");
}

bool KripkeModel::holds(std::string_view atom, WorldId w) const {
  std::size_t a = sig_.index_of(atom);
  if (a == sig_.size()) throw std::invalid_argument("atom '" + std::string(atom) + "' not in signature");
  return truth_[a][w];
}

namespace {

struct ModelInterp {
  const KripkeModel& m;
  const Frame& frame() const { return m.frame(); }
  bool atom(const std::string& name, WorldId w) const { return m.holds(name, w); }
  bool meta(const std::string& name, WorldId) const {
    throw std::invalid_argument("cannot evaluate metavariable ?" + name);
  }
};

}  // namespace

bool eval_deep(const KripkeModel& m, WorldId w, const Formula& f) {
  if (!m.frame().designated(w))
    throw std::out_of_range("world " + std::to_string(w) + " is not a designated world");
  ModelInterp in{m};
  if (f.is_core()) return evaluate<bool>(f, w, in);
  return evaluate<bool>(desugar(f), w, in);
}

bool valid_in_model(const KripkeModel& m, const Formula& f) {
  const Formula core = desugar(f);
  ModelInterp in{m};
  for (WorldId w : m.frame().worlds())
    if (!evaluate<bool>(core, w, in)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Model files

namespace {

std::string id_list(const std::vector<WorldId>& ids) {
  std::string s = "[";
  for (std::size_t i = 0; i < ids.size(); ++i) s += (i ? ", " : "") + std::to_string(ids[i]);
  return s + "]";
}

}  // namespace

std::string write_model(const KripkeModel& m) {
  const Frame& f = m.frame();
  std::string out = "worlds: " + std::to_string(f.size()) + "\n";
  out += "in: " + id_list(f.worlds()) + "\n";
  out += "rel: [";
  for (std::size_t i = 0; i < f.edges().size(); ++i) {
    auto [u, v] = f.edges()[i];
    out += (i ? ", [" : "[") + std::to_string(u) + ", " + std::to_string(v) + "]";
  }
  out += "]\nval: {";
  const auto& atoms = m.signature().atoms();
  for (std::size_t a = 0; a < atoms.size(); ++a) {
    std::vector<WorldId> on;
    for (WorldId w = 0; w < f.size(); ++w)
      if (m.holds(a, w)) on.push_back(w);
    out += (a ? ", " : "") + atoms[a] + ": " + id_list(on);
  }
  out += "}\n";
  return out;
}

KripkeModel read_model(std::string_view text) {
  YAML::Node doc;
  try {
    doc = YAML::Load(std::string(text));
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("model file: ") + e.what());
  }
  if (!doc.IsMap()) throw std::runtime_error("model file: expected a mapping");
  auto world_id = [](const YAML::Node& n, std::size_t size) {
    long long v = n.as<long long>();
    if (v < 0 || static_cast<std::size_t>(v) >= size)
      throw std::runtime_error("model file: world id " + std::to_string(v) + " out of range");
    return static_cast<WorldId>(v);
  };
  try {
    if (!doc["worlds"]) throw std::runtime_error("model file: missing 'worlds'");
    long long n = doc["worlds"].as<long long>();
    if (n <= 0) throw std::runtime_error("model file: 'worlds' must be positive");
    const auto size = static_cast<std::size_t>(n);

    std::vector<bool> designated(size, doc["in"] ? false : true);
    if (doc["in"])
      for (const auto& id : doc["in"]) designated[world_id(id, size)] = true;

    std::vector<Edge> edges;
    if (doc["rel"])
      for (const auto& pair : doc["rel"]) {
        if (!pair.IsSequence() || pair.size() != 2)
          throw std::runtime_error("model file: relation entries are [i, j] pairs");
        edges.emplace_back(world_id(pair[0], size), world_id(pair[1], size));
      }

    std::vector<std::string> atoms;
    std::vector<std::vector<bool>> truth;
    if (!doc["val"] || !doc["val"].IsMap() || doc["val"].size() == 0)
      throw std::runtime_error("model file: 'val' must map at least one atom");
    for (const auto& kv : doc["val"]) {
      atoms.push_back(kv.first.as<std::string>());
      std::vector<bool> row(size, false);
      for (const auto& id : kv.second) row[world_id(id, size)] = true;
      truth.push_back(std::move(row));
    }
    return KripkeModel(Frame(size, std::move(designated), std::move(edges)),
                       Signature(std::move(atoms)), std::move(truth));
  } catch (const YAML::Exception& e) {
    throw std::runtime_error(std::string("model file: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("model file: ") + e.what());
  }
}

std::string describe_model(const KripkeModel& m) {
  std::ostringstream os;
  const Frame& f = m.frame();
  os << "worlds:";
  for (WorldId w = 0; w < f.size(); ++w) {
    os << " w" << w;
    if (!f.designated(w)) os << "(outside)";
  }
  os << "\nrelation:";
  if (f.edges().empty()) os << " (empty)";
  for (auto [u, v] : f.edges()) os << " w" << u << "->w" << v;
  os << "\n";
  for (WorldId w = 0; w < f.size(); ++w) {
    os << "  w" << w << ":";
    for (std::size_t a = 0; a < m.signature().size(); ++a)
      os << ' ' << (m.holds(a, w) ? "" : "~") << m.signature().atoms()[a];
    os << "\n";
  }
  return os.str();
}

}  // namespace pmlkit
