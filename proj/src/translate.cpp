#include "pmlkit/translate.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>
#include <thread>

namespace pmlkit {

std::string world_var_name(WorldVar v) {
  return v == kFreeWorld ? std::string("w") : "v" + std::to_string(v - 1);
}

// ---------------------------------------------------------------------------
// CoreForm

struct CoreForm::Node {
  CoreOp op;
  WorldVar x = 0;
  WorldVar y = 0;
  std::string atom;
  std::vector<CoreForm> kids;
  std::size_t size = 1;
  std::size_t quantifiers = 0;
};

CoreForm CoreForm::pred_w(WorldVar x) {
  auto n = std::make_shared<Node>();
  n->op = CoreOp::PredW;
  n->x = x;
  return CoreForm(std::move(n));
}

CoreForm CoreForm::pred_r(WorldVar x, WorldVar y) {
  auto n = std::make_shared<Node>();
  n->op = CoreOp::PredR;
  n->x = x;
  n->y = y;
  return CoreForm(std::move(n));
}

CoreForm CoreForm::pred_v(std::string atom, WorldVar x) {
  auto n = std::make_shared<Node>();
  n->op = CoreOp::PredV;
  n->x = x;
  n->atom = std::move(atom);
  return CoreForm(std::move(n));
}

CoreForm CoreForm::neg(CoreForm c) {
  auto n = std::make_shared<Node>();
  n->op = CoreOp::Not;
  n->size = 1 + c.size();
  n->quantifiers = c.quantifiers();
  n->kids.push_back(std::move(c));
  return CoreForm(std::move(n));
}

CoreForm CoreForm::imp(CoreForm a, CoreForm b) {
  auto n = std::make_shared<Node>();
  n->op = CoreOp::Imp;
  n->size = 1 + a.size() + b.size();
  n->quantifiers = a.quantifiers() + b.quantifiers();
  n->kids.push_back(std::move(a));
  n->kids.push_back(std::move(b));
  return CoreForm(std::move(n));
}

CoreForm CoreForm::forall(WorldVar x, CoreForm body) {
  auto n = std::make_shared<Node>();
  n->op = CoreOp::Forall;
  n->x = x;
  n->size = 1 + body.size();
  n->quantifiers = 1 + body.quantifiers();
  n->kids.push_back(std::move(body));
  return CoreForm(std::move(n));
}

CoreOp CoreForm::op() const { return node_->op; }
WorldVar CoreForm::var() const { return node_->x; }
WorldVar CoreForm::var2() const { return node_->y; }
const std::string& CoreForm::atom() const { return node_->atom; }
const CoreForm& CoreForm::lhs() const { return node_->kids.at(0); }
const CoreForm& CoreForm::rhs() const { return node_->kids.at(1); }
std::size_t CoreForm::size() const { return node_->size; }
std::size_t CoreForm::quantifiers() const { return node_->quantifiers; }

bool operator==(const CoreForm& a, const CoreForm& b) {
  if (a.node_ == b.node_) return true;
  const auto& x = *a.node_;
  const auto& y = *b.node_;
  if (x.op != y.op || x.x != y.x || x.y != y.y || x.atom != y.atom || x.size != y.size) return false;
  for (std::size_t i = 0; i < x.kids.size(); ++i)
    if (!(x.kids[i] == y.kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Translations

namespace {

template <bool Guarded>
CoreForm translate(const Formula& f, WorldVar cur) {
  switch (f.op()) {
    case Op::Atom:
      return CoreForm::pred_v(f.name(), cur);
    case Op::Not:
      return CoreForm::neg(translate<Guarded>(f.arg(), cur));
    case Op::Implies:
      return CoreForm::imp(translate<Guarded>(f.lhs(), cur), translate<Guarded>(f.rhs(), cur));
    case Op::Box: {
      // Variables are numbered by modal nesting depth, so siblings reuse a
      // name and nothing in scope is ever rebound.
      const WorldVar v = cur + 1;
      CoreForm step = CoreForm::imp(CoreForm::pred_r(cur, v), translate<Guarded>(f.arg(), v));
      if constexpr (Guarded) step = CoreForm::imp(CoreForm::pred_w(v), std::move(step));
      return CoreForm::forall(v, std::move(step));
    }
    default:
      return translate<Guarded>(desugar(f), cur);
  }
}

}  // namespace

CoreForm translate_max(const Formula& f) {
  if (!f.is_ground()) throw std::invalid_argument("cannot translate a schema");
  return translate<true>(f, kFreeWorld);
}

CoreForm translate_min(const Formula& f) {
  if (!f.is_ground()) throw std::invalid_argument("cannot translate a schema");
  return translate<false>(f, kFreeWorld);
}

CoreForm strip_world_guards(const CoreForm& c) {
  switch (c.op()) {
    case CoreOp::PredW:
    case CoreOp::PredR:
    case CoreOp::PredV:
      return c;
    case CoreOp::Not:
      return CoreForm::neg(strip_world_guards(c.lhs()));
    case CoreOp::Imp:
      if (c.lhs().op() == CoreOp::PredW) return strip_world_guards(c.rhs());
      return CoreForm::imp(strip_world_guards(c.lhs()), strip_world_guards(c.rhs()));
    case CoreOp::Forall:
      return CoreForm::forall(c.var(), strip_world_guards(c.body()));
  }
  return c;
}

namespace {

bool scoped(const CoreForm& c, std::set<WorldVar>& bound) {
  auto ok = [&](WorldVar x) { return bound.count(x) > 0; };
  switch (c.op()) {
    case CoreOp::PredW:
    case CoreOp::PredV:
      return ok(c.var());
    case CoreOp::PredR:
      return ok(c.var()) && ok(c.var2());
    case CoreOp::Not:
      return scoped(c.lhs(), bound);
    case CoreOp::Imp:
      return scoped(c.lhs(), bound) && scoped(c.rhs(), bound);
    case CoreOp::Forall: {
      if (ok(c.var())) return false;
      bound.insert(c.var());
      bool r = scoped(c.body(), bound);
      bound.erase(c.var());
      return r;
    }
  }
  return false;
}

}  // namespace

bool well_scoped(const CoreForm& c) {
  std::set<WorldVar> bound{kFreeWorld};
  return scoped(c, bound);
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_rec(const CoreForm& c, bool left_of_imp, std::string& out) {
  switch (c.op()) {
    case CoreOp::PredW:
      out += "W(" + world_var_name(c.var()) + ")";
      return;
    case CoreOp::PredR:
      out += "R(" + world_var_name(c.var()) + "," + world_var_name(c.var2()) + ")";
      return;
    case CoreOp::PredV:
      out += "V(" + c.atom() + "," + world_var_name(c.var()) + ")";
      return;
    case CoreOp::Not: {
      out += "¬";
      const bool paren = c.lhs().op() == CoreOp::Imp;
      if (paren) out += '(';
      print_rec(c.lhs(), paren ? false : left_of_imp, out);
      if (paren) out += ')';
      return;
    }
    case CoreOp::Imp: {
      const bool paren = left_of_imp;
      if (paren) out += '(';
      print_rec(c.lhs(), true, out);
      out += " -> ";
      // Nested implications on the right are bracketed as well so guard
      // chains read explicitly.
      const bool rparen = c.rhs().op() == CoreOp::Imp;
      if (rparen) out += '(';
      print_rec(c.rhs(), false, out);
      if (rparen) out += ')';
      if (paren) out += ')';
      return;
    }
    case CoreOp::Forall: {
      const bool paren = left_of_imp;
      if (paren) out += '(';
      out += "∀" + world_var_name(c.var()) + ". ";
      print_rec(c.body(), false, out);
      if (paren) out += ')';
      return;
    }
  }
}

}  // namespace

std::string print_core(const CoreForm& c) {
  std::string out;
  print_rec(c, false, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

struct ModelCoreInterp {
  const KripkeModel& m;
  const Frame& frame() const { return m.frame(); }
  bool atom(const std::string& name, WorldId w) const { return m.holds(name, w); }
};

void collect_free(const CoreForm& c, std::set<WorldVar>& bound, std::set<WorldVar>& out) {
  auto use = [&](WorldVar x) {
    if (!bound.count(x)) out.insert(x);
  };
  switch (c.op()) {
    case CoreOp::PredW:
    case CoreOp::PredV:
      use(c.var());
      return;
    case CoreOp::PredR:
      use(c.var());
      use(c.var2());
      return;
    case CoreOp::Not:
      collect_free(c.lhs(), bound, out);
      return;
    case CoreOp::Imp:
      collect_free(c.lhs(), bound, out);
      collect_free(c.rhs(), bound, out);
      return;
    case CoreOp::Forall: {
      const bool had = bound.count(c.var()) > 0;
      bound.insert(c.var());
      collect_free(c.body(), bound, out);
      if (!had) bound.erase(c.var());
      return;
    }
  }
}

}  // namespace

bool eval_core(const CoreForm& c, const CoreEnv& env) {
  std::set<WorldVar> bound, free;
  collect_free(c, bound, free);
  std::vector<WorldId> binding;
  for (WorldVar x : free) {
    auto it = env.binding.find(world_var_name(x));
    if (it == env.binding.end())
      throw std::invalid_argument("unbound world variable " + world_var_name(x));
    if (it->second >= env.model.size())
      throw std::invalid_argument("binding of " + it->first + " outside the domain");
    if (binding.size() <= x) binding.resize(x + 1, 0);
    binding[x] = it->second;
  }
  return evaluate_core<bool>(c, binding, ModelCoreInterp{env.model});
}

// ---------------------------------------------------------------------------
// Faithfulness grid

namespace {

struct LaneInterp {
  const Frame& fr;
  const Signature& sig;
  std::vector<Lanes> masks;  // masks[a * n + w]

  const Frame& frame() const { return fr; }
  Lanes atom(const std::string& name, WorldId w) const {
    return masks[sig.index_of(name) * fr.size() + w];
  }
  Lanes meta(const std::string& name, WorldId) const {
    throw std::invalid_argument("cannot evaluate metavariable ?" + name);
  }
};

struct FrameSpec {
  std::size_t n;
  std::uint64_t designated;
  std::uint64_t relation;
};

KripkeModel model_at(const Frame& fr, const Signature& sig, std::uint64_t assignment) {
  const std::size_t n = fr.size();
  std::vector<std::vector<bool>> truth(sig.size(), std::vector<bool>(n));
  for (std::size_t a = 0; a < sig.size(); ++a)
    for (std::size_t w = 0; w < n; ++w) truth[a][w] = (assignment >> (a * n + w)) & 1;
  return KripkeModel(fr, sig, std::move(truth));
}

std::string one_line(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::replace(s.begin(), s.end(), '\n', ';');
  return s;
}

struct GridState {
  Report report;
  std::vector<char> deep_valid;
  std::vector<char> max_valid;
};

void run_slice(const Signature& sig, const std::vector<Formula>& formulas,
               const std::vector<CoreForm>& maxs, const std::vector<CoreForm>& mins,
               const std::vector<FrameSpec>& frames, std::size_t begin, std::size_t end,
               GridState& st) {
  for (const char* name : {"Faithful1a", "Faithful1b", "Faithful2", "Faithful3"})
    st.report.claim(name);
  auto& c1a = st.report.claims[0];
  auto& c2 = st.report.claims[2];
  auto& c3 = st.report.claims[3];
  std::vector<WorldId> binding;

  for (std::size_t fi = begin; fi < end; ++fi) {
    const FrameSpec& spec = frames[fi];
    const Frame fr = Frame::from_bits(spec.n, spec.designated, spec.relation);
    const auto ws = fr.worlds();
    const bool full = fr.all_designated();
    const std::size_t n = spec.n;
    AssignmentLanes lanes(sig.size() * n);
    const Lanes live = lanes.live();
    const auto live_count = static_cast<std::uint64_t>(std::popcount(live));

    for (std::size_t block = 0; block < lanes.blocks(); ++block) {
      LaneInterp in{fr, sig, std::vector<Lanes>(sig.size() * n)};
      for (std::size_t k = 0; k < sig.size() * n; ++k) in.masks[k] = lanes.variable(k, block);

      auto report = [&](ClaimReport& claim, std::size_t i, Lanes bad, WorldId w) {
        const unsigned lane = static_cast<unsigned>(std::countr_zero(bad));
        const auto count = static_cast<std::uint64_t>(std::popcount(bad));
        const KripkeModel m = model_at(fr, sig, lanes.assignment(block, lane));
        claim.add_violation("formula: " + print(formulas[i]) + "; model: " +
                            one_line(write_model(m)) + "; world: " + std::to_string(w));
        claim.violation_count += count - 1;
      };

      for (std::size_t i = 0; i < formulas.size(); ++i) {
        for (WorldId w : ws) {
          binding.assign(1, w);
          const Lanes deep = evaluate<Lanes>(formulas[i], w, in) & live;
          const Lanes shallow = evaluate_core<Lanes>(maxs[i], binding, in) & live;
          c1a.instances += live_count;
          if (Lanes bad = deep ^ shallow) report(c1a, i, bad, w);
          if (deep != live) st.deep_valid[i] = 0;
          if (shallow != live) st.max_valid[i] = 0;
          if (full) {
            binding.assign(1, w);
            const Lanes minimal = evaluate_core<Lanes>(mins[i], binding, in) & live;
            c2.instances += live_count;
            c3.instances += live_count;
            if (Lanes bad = deep ^ minimal) report(c2, i, bad, w);
            if (Lanes bad = shallow ^ minimal) report(c3, i, bad, w);
          }
        }
      }
    }
  }
}

}  // namespace

Report check_faithfulness(const Signature& sig, const FaithfulnessOptions& opts) {
  if (opts.max_depth < 0) throw std::invalid_argument("depth must be >= 0");
  if (opts.max_worlds < 1 || opts.max_worlds > 4)
    throw std::invalid_argument("max_worlds must be in 1..4");
  if (sig.size() * static_cast<std::size_t>(opts.max_worlds) > 24)
    throw std::invalid_argument("too many valuation bits for an exhaustive grid");

  const auto formulas = enumerate_formulas(sig, opts.max_depth);
  std::vector<CoreForm> maxs, mins;
  maxs.reserve(formulas.size());
  mins.reserve(formulas.size());
  for (const auto& f : formulas) {
    maxs.push_back(opts.max_translation(f));
    mins.push_back(opts.min_translation(f));
  }

  std::vector<FrameSpec> frames;
  for (std::size_t n = 1; n <= static_cast<std::size_t>(opts.max_worlds); ++n)
    for (std::uint64_t d = 1; d < (std::uint64_t{1} << n); ++d)
      for (std::uint64_t r = 0; r < (std::uint64_t{1} << (n * n)); ++r) frames.push_back({n, d, r});

  const unsigned jobs = std::max(1u, std::min<unsigned>(opts.jobs, frames.size()));
  std::vector<GridState> states(jobs);
  for (auto& st : states) {
    st.deep_valid.assign(formulas.size(), 1);
    st.max_valid.assign(formulas.size(), 1);
  }
  auto slice = [&](unsigned t) {
    const std::size_t b = frames.size() * t / jobs;
    const std::size_t e = frames.size() * (t + 1) / jobs;
    run_slice(sig, formulas, maxs, mins, frames, b, e, states[t]);
  };
  if (jobs == 1) {
    slice(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(slice, t);
    for (auto& th : pool) th.join();
  }

  Report out;
  for (const char* name : {"Faithful1a", "Faithful1b", "Faithful2", "Faithful3"}) out.claim(name);
  std::vector<char> deep_valid(formulas.size(), 1), max_valid(formulas.size(), 1);
  for (const auto& st : states) {
    out.merge(st.report);
    for (std::size_t i = 0; i < formulas.size(); ++i) {
      deep_valid[i] &= st.deep_valid[i];
      max_valid[i] &= st.max_valid[i];
    }
  }
  auto& c1b = out.claim("Faithful1b");
  for (std::size_t i = 0; i < formulas.size(); ++i) {
    ++c1b.instances;
    if (deep_valid[i] != max_valid[i])
      c1b.add_violation("formula: " + print(formulas[i]) + "; deep " +
                        (deep_valid[i] ? "valid" : "invalid") + ", maximal " +
                        (max_valid[i] ? "valid" : "invalid"));
  }
  return out;
}

}  // namespace pmlkit
