#include "pmlkit/decide.hpp"

#include <algorithm>
#include <unordered_map>

namespace pmlkit {

namespace {

/// Subformula closure of the (desugared) query, children before parents.
struct Closure {
  struct Sub {
    Op op = Op::Atom;
    int a = -1;
    int b = -1;
    std::string name;
  };
  std::vector<Sub> subs;
  std::unordered_map<Formula, int, FormulaHash> index;

  int intern(const Formula& f) {
    if (auto it = index.find(f); it != index.end()) return it->second;
    Sub s;
    s.op = f.op();
    switch (f.op()) {
      case Op::Atom: s.name = f.name(); break;
      case Op::Not:
      case Op::Box: s.a = intern(f.arg()); break;
      case Op::Implies:
        s.a = intern(f.lhs());
        s.b = intern(f.rhs());
        break;
      default: throw std::invalid_argument("decide expects a ground formula: " + print(f));
    }
    subs.push_back(std::move(s));
    index.emplace(f, static_cast<int>(subs.size()) - 1);
    return static_cast<int>(subs.size()) - 1;
  }
};

// Signed formula encoding: 2*id for false, 2*id+1 for true.
constexpr int F(int id) { return 2 * id; }
constexpr int T(int id) { return 2 * id + 1; }

struct Label {
  int parent = -1;
  std::vector<char> has;
  std::vector<int> witness;  // per subformula: child created for F(box a)
  std::vector<int> children;
};

struct Branch {
  std::vector<Label> labels;
};

class Tableau {
 public:
  Tableau(const Formula& f, Logic logic, const DecideOptions& opts)
      : query_(desugar(f)), logic_(logic), opts_(opts) {
    root_ = cl_.intern(query_);
    sig_atoms_ = atoms_of(query_);
  }

  TableauResult run() {
    Branch b;
    new_label(b, -1);
    add(b, 0, F(root_));
    if (auto cm = search(std::move(b))) return TableauResult(std::move(*cm));
    if (rejected_open_ > 0)
      throw std::logic_error("tableau: every open branch failed the countermodel re-check");
    return TableauResult(ValidTrace{branches_, rules_});
  }

 private:
  std::size_t n() const { return cl_.subs.size(); }

  int new_label(Branch& b, int parent) {
    if (b.labels.size() >= opts_.max_labels)
      throw ResourceLimit("tableau label budget of " + std::to_string(opts_.max_labels) +
                          " exhausted");
    Label l;
    l.parent = parent;
    l.has.assign(2 * n(), 0);
    l.witness.assign(n(), -1);
    b.labels.push_back(std::move(l));
    const int id = static_cast<int>(b.labels.size()) - 1;
    if (parent >= 0) b.labels[parent].children.push_back(id);
    return id;
  }

  bool add(Branch& b, int x, int sf) {
    char& slot = b.labels[x].has[sf];
    if (slot) return false;
    slot = 1;
    ++rules_;
    return true;
  }

  /// Non-branching rules to a fixpoint.
  void saturate(Branch& b) {
    const bool t = logic_.has(Logic::T), sym = logic_.has(Logic::B), four = logic_.has(Logic::Four);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int x = 0; x < static_cast<int>(b.labels.size()); ++x) {
        for (int i = 0; i < static_cast<int>(n()); ++i) {
          const auto& s = cl_.subs[i];
          const bool pos = b.labels[x].has[T(i)], neg = b.labels[x].has[F(i)];
          if (!pos && !neg) continue;
          switch (s.op) {
            case Op::Not:
              if (pos) changed |= add(b, x, F(s.a));
              if (neg) changed |= add(b, x, T(s.a));
              break;
            case Op::Implies:
              if (neg) {
                changed |= add(b, x, T(s.a));
                changed |= add(b, x, F(s.b));
              }
              break;
            case Op::Box:
              if (!pos) break;
              if (t) changed |= add(b, x, T(s.a));
              for (std::size_t k = 0; k < b.labels[x].children.size(); ++k) {
                const int c = b.labels[x].children[k];
                changed |= add(b, c, T(s.a));
                if (four) changed |= add(b, c, T(i));
              }
              if (const int p = b.labels[x].parent; p >= 0) {
                if (sym) changed |= add(b, p, T(s.a));
                if (sym && four) changed |= add(b, p, T(i));
              }
              break;
            default: break;
          }
        }
      }
    }
  }

  bool clashes(const Branch& b) const {
    for (const auto& l : b.labels)
      for (std::size_t i = 0; i < n(); ++i)
        if (l.has[F(static_cast<int>(i))] && l.has[T(static_cast<int>(i))]) return true;
    return false;
  }

  static bool subset(const Label& a, const Label& b) {
    for (std::size_t k = 0; k < a.has.size(); ++k)
      if (a.has[k] && !b.has[k]) return false;
    return true;
  }

  /// Topmost proper ancestor whose formula set contains x's, or -1.
  int blocker(const Branch& b, int x) const {
    if (!logic_.has(Logic::Four)) return -1;
    int found = -1;
    for (int z = b.labels[x].parent; z >= 0; z = b.labels[z].parent)
      if (subset(b.labels[x], b.labels[z])) found = z;
    return found;
  }

  std::optional<Countermodel> search(Branch b) {
    while (true) {
      saturate(b);
      if (clashes(b)) {
        ++branches_;
        return std::nullopt;
      }
      if (auto split = find_beta(b)) {
        const auto [x, i] = *split;
        Branch left = b;
        add(left, x, F(cl_.subs[i].a));
        if (auto cm = search(std::move(left))) return cm;
        add(b, x, T(cl_.subs[i].b));
        return search(std::move(b));
      }
      if (!expand_pi(b)) break;
    }
    ++branches_;
    if (auto cm = extract(b)) return cm;
    ++rejected_open_;
    return std::nullopt;
  }

  std::optional<std::pair<int, int>> find_beta(const Branch& b) const {
    for (int x = 0; x < static_cast<int>(b.labels.size()); ++x)
      for (int i = 0; i < static_cast<int>(n()); ++i) {
        const auto& s = cl_.subs[i];
        const auto& has = b.labels[x].has;
        if (s.op == Op::Implies && has[T(i)] && !has[F(s.a)] && !has[T(s.b)])
          return std::make_pair(x, i);
      }
    return std::nullopt;
  }

  /// Creates one witness child; false when every unblocked F(box a) has one.
  bool expand_pi(Branch& b) {
    for (int x = 0; x < static_cast<int>(b.labels.size()); ++x) {
      if (blocker(b, x) >= 0) continue;
      for (int i = 0; i < static_cast<int>(n()); ++i) {
        const auto& s = cl_.subs[i];
        if (s.op != Op::Box || !b.labels[x].has[F(i)] || b.labels[x].witness[i] >= 0) continue;
        const int c = new_label(b, x);
        b.labels[x].witness[i] = c;
        add(b, c, F(s.a));
        return true;
      }
    }
    return false;
  }

  std::optional<Countermodel> extract(const Branch& b) const {
    const std::size_t count = b.labels.size();
    const bool sym = logic_.has(Logic::B);
    std::vector<Edge> edges;
    auto link = [&](int u, int v) {
      edges.emplace_back(u, v);
      if (sym) edges.emplace_back(v, u);
    };
    for (int x = 0; x < static_cast<int>(count); ++x) {
      for (int c : b.labels[x].children) link(x, c);
      if (const int z = blocker(b, x); z >= 0)
        for (int c : b.labels[z].children) link(x, c);
    }
    const auto props = logic_.frame_properties();
    Frame frame = close_under(Frame(count, std::move(edges)), props);

    const Signature sig(sig_atoms_);
    std::vector<std::vector<bool>> truth(sig.size(), std::vector<bool>(count, false));
    for (std::size_t a = 0; a < sig.size(); ++a) {
      const auto it = cl_.index.find(Formula::atom(sig.atoms()[a]));
      if (it == cl_.index.end()) continue;
      for (std::size_t x = 0; x < count; ++x) truth[a][x] = b.labels[x].has[T(it->second)];
    }
    KripkeModel model(std::move(frame), sig, std::move(truth));
    for (auto p : props)
      if (!has_property(model, p)) return std::nullopt;
    if (eval_deep(model, 0, query_)) return std::nullopt;
    return Countermodel{std::move(model), 0};
  }

  Formula query_;
  Logic logic_;
  DecideOptions opts_;
  Closure cl_;
  int root_ = 0;
  std::vector<std::string> sig_atoms_;
  std::size_t branches_ = 0;
  std::size_t rules_ = 0;
  std::size_t rejected_open_ = 0;
};

}  // namespace

TableauResult decide(const Formula& f, Logic logic, const DecideOptions& opts) {
  return Tableau(f, logic, opts).run();
}

CrossCheck cross_check(const Formula& f, Logic logic, int max_worlds) {
  CrossCheck out;
  const TableauResult r = decide(f, logic);
  out.decided_valid = r.valid();
  const Signature sig(atoms_of(desugar(f)));
  const auto props = logic.frame_properties();
  out.found = find_countermodel(f, props, max_worlds, sig);

  std::string problems;
  if (!r.valid()) {
    const auto& cm = r.countermodel();
    if (eval_deep(cm.model, cm.world, f)) problems += "tableau model satisfies the formula; ";
    for (auto p : props)
      if (!has_property(cm.model, p))
        problems += "tableau model is not " + std::string(to_string(p)) + "; ";
  }
  if (out.found && eval_deep(out.found->model, out.found->world, f))
    problems += "finder model satisfies the formula; ";
  if (out.decided_valid && out.found) problems += "tableau says valid but the finder found a model; ";
  if (!out.decided_valid && !out.found)
    problems += "tableau says invalid but the finder found no model with <= " +
                std::to_string(max_worlds) + " worlds; ";
  out.consistent = problems.empty();
  if (out.consistent) {
    out.detail = out.decided_valid ? "valid; no countermodel up to the bound"
                                   : "invalid; finder model with " +
                                         std::to_string(out.found->model.size()) + " worlds";
  } else {
    out.detail = problems.substr(0, problems.size() - 2);
  }
  return out;
}

}  // namespace pmlkit
