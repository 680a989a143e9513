#include "pmlkit/hilbert.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <stdexcept>

namespace pmlkit {

namespace {

Formula mv(const char* name) { return Formula::meta(name); }
Formula imp(Formula a, Formula b) { return Formula::implies(std::move(a), std::move(b)); }
Formula neg(Formula a) { return Formula::neg(std::move(a)); }
Formula box(Formula a) { return Formula::box(std::move(a)); }

const std::array<Schema, 8>& schemata() {
  static const std::array<Schema, 8> all = [] {
    const Formula p = mv("phi"), q = mv("psi"), g = mv("gamma");
    return std::array<Schema, 8>{
        Schema(imp(p, imp(q, p))),
        Schema(imp(imp(p, imp(q, g)), imp(imp(p, q), imp(p, g)))),
        Schema(imp(imp(neg(p), neg(q)), imp(q, p))),
        Schema(imp(box(imp(p, q)), imp(box(p), box(q)))),
        Schema(imp(box(p), p)),
        Schema(imp(p, box(Formula::dia(p)))),
        Schema(imp(box(p), box(box(p)))),
        Schema(imp(box(imp(box(p), p)), box(p))),
    };
  }();
  return all;
}

constexpr std::array<std::string_view, 8> kAxiomNames = {"H1", "H2", "H3", "K",
                                                         "T",  "B",  "4",  "LOEB"};

std::string upper(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return out;
}

/// Instance formula of an Ax step, desugared. Throws on a bad substitution.
Formula axiom_instance(const AxStep& ax) {
  const Schema& s = axiom_schema(ax.schema);
  for (const auto& [name, value] : ax.subst) {
    const auto& metas = s.metavariables();
    if (std::find(metas.begin(), metas.end(), name) == metas.end())
      throw std::invalid_argument("unexpected binding for ?" + name + " in schema " +
                                  std::string(to_string(ax.schema)));
  }
  return desugar(s.instantiate(ax.subst));
}

std::string step_ref(std::size_t i) { return "step " + std::to_string(i + 1); }

}  // namespace

std::string_view to_string(AxiomSchemaId id) { return kAxiomNames[static_cast<int>(id)]; }

std::optional<AxiomSchemaId> parse_axiom_id(std::string_view name) {
  const std::string up = upper(name);
  if (up == "KDIST") return AxiomSchemaId::Kdist;
  if (up == "FOUR") return AxiomSchemaId::Four;
  for (std::size_t i = 0; i < kAxiomNames.size(); ++i)
    if (up == kAxiomNames[i]) return static_cast<AxiomSchemaId>(i);
  return std::nullopt;
}

const Schema& axiom_schema(AxiomSchemaId id) { return schemata()[static_cast<int>(id)]; }

bool admits(Logic logic, AxiomSchemaId id) {
  switch (id) {
    case AxiomSchemaId::T: return logic.has(Logic::T);
    case AxiomSchemaId::B: return logic.has(Logic::B);
    case AxiomSchemaId::Four: return logic.has(Logic::Four);
    case AxiomSchemaId::Loeb: return false;
    default: return true;
  }
}

namespace {

std::optional<ProofError> check_steps(const Proof& p, Logic logic, std::vector<Formula>& forms) {
  forms.clear();
  forms.reserve(p.steps.size());
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    const ProofStep& step = p.steps[i];
    auto fail = [&](const std::string& why) { return ProofError{i, step_ref(i) + ": " + why}; };
    if (const auto* ax = std::get_if<AxStep>(&step)) {
      if (!admits(logic, ax->schema))
        return fail("schema " + std::string(to_string(ax->schema)) + " is not admitted in " +
                    logic.name());
      try {
        forms.push_back(axiom_instance(*ax));
      } catch (const std::invalid_argument& e) {
        return fail(e.what());
      }
    } else if (const auto* mp = std::get_if<MpStep>(&step)) {
      if (mp->minor >= i || mp->major >= i) return fail("MP cites a step that does not precede it");
      const Formula& major = forms[mp->major];
      if (major.op() != Op::Implies || !(major.lhs() == forms[mp->minor]))
        return fail("MP: " + step_ref(mp->major) + " is not an implication whose antecedent is " +
                    step_ref(mp->minor));
      forms.push_back(major.rhs());
    } else {
      const auto& nec = std::get<NecStep>(step);
      if (nec.premise >= i) return fail("NEC cites a step that does not precede it");
      forms.push_back(Formula::box(forms[nec.premise]));
    }
  }
  return std::nullopt;
}

}  // namespace

std::vector<Formula> step_formulas(const Proof& p, Logic logic) {
  std::vector<Formula> forms;
  if (auto err = check_steps(p, logic, forms)) throw std::invalid_argument(err->reason);
  return forms;
}

ProofResult check_proof(const Proof& p, Logic logic) {
  if (p.steps.empty()) return ProofError{0, "empty proof"};
  std::vector<Formula> forms;
  if (auto err = check_steps(p, logic, forms)) return *err;
  if (!(desugar(p.conclusion) == forms.back()))
    return ProofError{p.steps.size(), "conclusion mismatch: the last step proves " +
                                          print(forms.back())};
  return p.conclusion;
}

Proof instantiate(const Proof& p, const Substitution& subst) {
  auto inst = [&](const Formula& f) { return Schema(f).instantiate(subst); };
  Proof out{{}, inst(p.conclusion)};
  out.steps.reserve(p.steps.size());
  for (const auto& step : p.steps) {
    if (const auto* ax = std::get_if<AxStep>(&step)) {
      AxStep copy{ax->schema, {}};
      for (const auto& [k, v] : ax->subst) copy.subst.emplace(k, inst(v));
      out.steps.emplace_back(std::move(copy));
    } else {
      out.steps.push_back(step);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// ProofBuilder

std::size_t ProofBuilder::push(Line l) {
  lines_.push_back(std::move(l));
  hyps_.emplace_back();
  return lines_.size() - 1;
}

std::size_t ProofBuilder::hyp(const Formula& f) {
  const std::size_t i = push(Line{Kind::Hyp, desugar(f)});
  hyps_[i].push_back(lines_[i].f);
  return i;
}

std::size_t ProofBuilder::ax(AxiomSchemaId id, Substitution subst) {
  Formula f = axiom_instance(AxStep{id, subst});
  Line l{Kind::Ax, std::move(f)};
  l.schema = id;
  l.subst = std::move(subst);
  return push(std::move(l));
}

std::size_t ProofBuilder::mp(std::size_t minor, std::size_t major) {
  const Formula& m = formula(major);
  if (m.op() != Op::Implies || !(m.lhs() == formula(minor)))
    throw std::invalid_argument("builder: MP premises do not match");
  Line l{Kind::Mp, m.rhs()};
  l.a = minor;
  l.b = major;
  std::vector<Formula> deps = hyps_[minor];
  for (const auto& h : hyps_[major])
    if (std::find(deps.begin(), deps.end(), h) == deps.end()) deps.push_back(h);
  const std::size_t i = push(std::move(l));
  hyps_[i] = std::move(deps);
  return i;
}

std::size_t ProofBuilder::nec(std::size_t line) {
  if (!hyps_.at(line).empty()) throw std::invalid_argument("builder: NEC on a line with open hypotheses");
  Line l{Kind::Nec, Formula::box(formula(line))};
  l.a = line;
  return push(std::move(l));
}

std::size_t ProofBuilder::splice(const Proof& p) {
  const std::size_t base = lines_.size();
  for (const auto& step : p.steps) {
    if (const auto* a = std::get_if<AxStep>(&step)) {
      ax(a->schema, a->subst);
    } else if (const auto* m = std::get_if<MpStep>(&step)) {
      mp(base + m->minor, base + m->major);
    } else {
      nec(base + std::get<NecStep>(step).premise);
    }
  }
  if (lines_.size() == base || !(lines_.back().f == desugar(p.conclusion)))
    throw std::invalid_argument("builder: spliced proof does not end in its conclusion");
  return lines_.size() - 1;
}

std::size_t ProofBuilder::discharge(const Formula& hypothesis) {
  if (lines_.empty()) throw std::invalid_argument("builder: nothing to discharge");
  const Formula h = desugar(hypothesis);
  std::vector<Line> old = std::move(lines_);
  std::vector<std::vector<Formula>> old_hyps = std::move(hyps_);
  lines_.clear();
  hyps_.clear();

  auto depends = [&](std::size_t k) {
    return std::find(old_hyps[k].begin(), old_hyps[k].end(), h) != old_hyps[k].end();
  };
  std::vector<std::size_t> plain(old.size()), implied(old.size());
  std::vector<char> has_implied(old.size(), 0);

  // h -> chi for a line chi that does not use h: H1 then MP.
  auto weaken = [&](std::size_t k) {
    if (!has_implied[k]) {
      const std::size_t h1 = ax(AxiomSchemaId::H1, {{"phi", old[k].f}, {"psi", h}});
      implied[k] = mp(plain[k], h1);
      has_implied[k] = 1;
    }
    return implied[k];
  };

  for (std::size_t k = 0; k < old.size(); ++k) {
    const Line& l = old[k];
    if (!depends(k)) {
      switch (l.kind) {
        case Kind::Hyp: plain[k] = hyp(l.f); break;
        case Kind::Ax: plain[k] = ax(l.schema, l.subst); break;
        case Kind::Mp: plain[k] = mp(plain[l.a], plain[l.b]); break;
        case Kind::Nec: plain[k] = nec(plain[l.a]); break;
      }
      continue;
    }
    if (l.kind == Kind::Hyp) {
      implied[k] = splice(lemma::identity(h));
    } else {
      // Only MP lines can depend on a hypothesis.
      const std::size_t ia = depends(l.a) ? implied[l.a] : weaken(l.a);
      const std::size_t ib = depends(l.b) ? implied[l.b] : weaken(l.b);
      const std::size_t h2 =
          ax(AxiomSchemaId::H2, {{"phi", h}, {"psi", old[l.a].f}, {"gamma", l.f}});
      implied[k] = mp(ia, mp(ib, h2));
    }
    has_implied[k] = 1;
  }
  const std::size_t last = old.size() - 1;
  return depends(last) ? implied[last] : weaken(last);
}

Proof ProofBuilder::finish(const Formula& conclusion) const {
  if (lines_.empty()) throw std::invalid_argument("builder: empty derivation");
  const std::size_t last = lines_.size() - 1;
  if (!hyps_[last].empty()) throw std::invalid_argument("builder: open hypotheses remain");
  if (!(desugar(conclusion) == lines_[last].f))
    throw std::invalid_argument("builder: conclusion does not match the last line");

  std::vector<char> used(lines_.size(), 0);
  used[last] = 1;
  for (std::size_t k = lines_.size(); k-- > 0;) {
    if (!used[k]) continue;
    const Line& l = lines_[k];
    if (l.kind == Kind::Mp) used[l.a] = used[l.b] = 1;
    if (l.kind == Kind::Nec) used[l.a] = 1;
  }
  std::vector<std::size_t> index(lines_.size());
  Proof out{{}, conclusion};
  for (std::size_t k = 0; k < lines_.size(); ++k) {
    if (!used[k]) continue;
    const Line& l = lines_[k];
    index[k] = out.steps.size();
    switch (l.kind) {
      case Kind::Hyp: throw std::logic_error("builder: hypothesis reachable from a closed line");
      case Kind::Ax: out.steps.emplace_back(AxStep{l.schema, l.subst}); break;
      case Kind::Mp: out.steps.emplace_back(MpStep{index[l.a], index[l.b]}); break;
      case Kind::Nec: out.steps.emplace_back(NecStep{index[l.a]}); break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Lemmas

namespace lemma {

Proof identity(const Formula& a) {
  const Formula aa = imp(a, a);
  Proof p{{}, aa};
  p.steps.emplace_back(AxStep{AxiomSchemaId::H1, {{"phi", a}, {"psi", aa}}});
  p.steps.emplace_back(AxStep{AxiomSchemaId::H2, {{"phi", a}, {"psi", aa}, {"gamma", a}}});
  p.steps.emplace_back(MpStep{0, 1});
  p.steps.emplace_back(AxStep{AxiomSchemaId::H1, {{"phi", a}, {"psi", a}}});
  p.steps.emplace_back(MpStep{3, 2});
  return p;
}

Proof dne(const Formula& a) {
  const Formula nna = neg(neg(a));
  ProofBuilder b;
  const auto h = b.hyp(nna);
  const auto a1 = b.ax(AxiomSchemaId::H1, {{"phi", nna}, {"psi", neg(neg(nna))}});
  const auto m1 = b.mp(h, a1);
  const auto a2 = b.ax(AxiomSchemaId::H3, {{"phi", neg(nna)}, {"psi", neg(a)}});
  const auto m2 = b.mp(m1, a2);
  const auto a3 = b.ax(AxiomSchemaId::H3, {{"phi", a}, {"psi", nna}});
  const auto m3 = b.mp(m2, a3);
  b.mp(h, m3);
  b.discharge(nna);
  return b.finish(imp(nna, a));
}

Proof dni(const Formula& a) {
  ProofBuilder b;
  const auto t = b.splice(dne(neg(a)));
  const auto h3 = b.ax(AxiomSchemaId::H3, {{"phi", neg(neg(a))}, {"psi", a}});
  b.mp(t, h3);
  return b.finish(imp(a, neg(neg(a))));
}

Proof syll(const Formula& a, const Formula& bb, const Formula& c) {
  ProofBuilder b;
  const auto h1 = b.hyp(imp(a, bb));
  const auto h2 = b.hyp(imp(bb, c));
  const auto h3 = b.hyp(a);
  b.mp(b.mp(h3, h1), h2);
  b.discharge(a);
  b.discharge(imp(bb, c));
  b.discharge(imp(a, bb));
  return b.finish(imp(imp(a, bb), imp(imp(bb, c), imp(a, c))));
}

Proof contra(const Formula& a, const Formula& bb) {
  ProofBuilder b;
  const auto h = b.hyp(imp(a, bb));
  const auto x = b.hyp(neg(neg(a)));
  const auto e = b.splice(dne(a));
  const auto fa = b.mp(x, e);
  const auto fb = b.mp(fa, h);
  const auto i = b.splice(dni(bb));
  b.mp(fb, i);
  const auto nn = b.discharge(neg(neg(a)));
  const auto h3 = b.ax(AxiomSchemaId::H3, {{"phi", neg(a)}, {"psi", neg(bb)}});
  b.mp(nn, h3);
  b.discharge(imp(a, bb));
  return b.finish(imp(imp(a, bb), imp(neg(bb), neg(a))));
}

Proof and_intro(const Formula& a, const Formula& bb) {
  const Formula a_nb = imp(a, neg(bb));
  ProofBuilder b;
  const auto ha = b.hyp(a);
  const auto hb = b.hyp(bb);
  const auto hc = b.hyp(a_nb);
  b.mp(ha, hc);
  const auto inner = b.discharge(a_nb);  // (a -> ~b) -> ~b
  const auto cp = b.splice(contra(a_nb, neg(bb)));
  const auto m1 = b.mp(inner, cp);  // ~~b -> ~(a -> ~b)
  const auto i = b.splice(dni(bb));
  const auto nnb = b.mp(hb, i);
  b.mp(nnb, m1);
  b.discharge(bb);
  b.discharge(a);
  return b.finish(imp(a, imp(bb, Formula::conj(a, bb))));
}

Proof k_dia(const Formula& a, const Formula& bb) {
  ProofBuilder b;
  const auto t1 = b.splice(contra(a, bb));
  const auto n1 = b.nec(t1);
  const auto k1 = b.ax(AxiomSchemaId::Kdist, {{"phi", imp(a, bb)}, {"psi", imp(neg(bb), neg(a))}});
  const auto m1 = b.mp(n1, k1);
  const auto h = b.hyp(box(imp(a, bb)));
  const auto m2 = b.mp(h, m1);
  const auto k2 = b.ax(AxiomSchemaId::Kdist, {{"phi", neg(bb)}, {"psi", neg(a)}});
  const auto m3 = b.mp(m2, k2);
  const auto t2 = b.splice(contra(box(neg(bb)), box(neg(a))));
  b.mp(m3, t2);
  b.discharge(box(imp(a, bb)));
  return b.finish(imp(box(imp(a, bb)), imp(Formula::dia(a), Formula::dia(bb))));
}

}  // namespace lemma

Proof derive_K_dia() { return lemma::k_dia(mv("phi"), mv("psi")); }

// ---------------------------------------------------------------------------
// Scripts

ScriptError::ScriptError(std::size_t l, const std::string& msg)
    : std::runtime_error("line " + std::to_string(l) + ": " + msg), line(l) {}

namespace {

struct Cursor {
  std::string_view s;
  std::size_t line;

  void skip_ws() {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ScriptError(line, msg); }
  bool eat(std::string_view tok) {
    skip_ws();
    if (s.substr(0, tok.size()) != tok) return false;
    s.remove_prefix(tok.size());
    return true;
  }
  void expect(std::string_view tok) {
    if (!eat(tok)) fail("expected '" + std::string(tok) + "'");
  }
  std::string word() {
    skip_ws();
    std::size_t n = 0;
    while (n < s.size() && (std::isalnum(static_cast<unsigned char>(s[n])) || s[n] == '_')) ++n;
    if (n == 0) fail("expected a name");
    std::string w(s.substr(0, n));
    s.remove_prefix(n);
    return w;
  }
  std::size_t number() {
    skip_ws();
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr == s.data()) fail("expected a step number");
    s.remove_prefix(static_cast<std::size_t>(ptr - s.data()));
    return v;
  }
  std::string quoted() {
    skip_ws();
    if (s.empty() || s.front() != '"') fail("expected a quoted formula");
    const auto close = s.find('"', 1);
    if (close == std::string_view::npos) fail("unterminated quoted formula");
    std::string q(s.substr(1, close - 1));
    s.remove_prefix(close + 1);
    return q;
  }
  void end() {
    skip_ws();
    if (!s.empty()) fail("unexpected trailing text '" + std::string(s) + "'");
  }
};

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  while (true) {
    const auto nl = text.find('\n');
    out.push_back(text.substr(0, nl));
    if (nl == std::string_view::npos) break;
    text.remove_prefix(nl + 1);
  }
  return out;
}

std::string_view strip_comment(std::string_view l) {
  // '#' never occurs inside formulas.
  return l.substr(0, l.find('#'));
}

Proof expand_lemma(const std::string& name, const Substitution& s, Cursor& cur) {
  auto arg = [&](const char* key) {
    auto it = s.find(key);
    if (it == s.end()) cur.fail("lemma " + name + " needs a binding for " + key);
    return it->second;
  };
  auto only = [&](std::initializer_list<const char*> keys) {
    for (const auto& [k, v] : s)
      if (std::none_of(keys.begin(), keys.end(), [&](const char* key) { return k == key; }))
        cur.fail("lemma " + name + " takes no parameter " + k);
  };
  const std::string up = upper(name);
  if (up == "ID" || up == "DNE" || up == "DNI") {
    only({"phi"});
    const Formula a = arg("phi");
    return up == "ID" ? lemma::identity(a) : up == "DNE" ? lemma::dne(a) : lemma::dni(a);
  }
  if (up == "CONTRA" || up == "AND_INTRO" || up == "KDIA") {
    only({"phi", "psi"});
    const Formula a = arg("phi"), b = arg("psi");
    return up == "CONTRA" ? lemma::contra(a, b)
           : up == "KDIA" ? lemma::k_dia(a, b)
                          : lemma::and_intro(a, b);
  }
  if (up == "SYLL") {
    only({"phi", "psi", "gamma"});
    return lemma::syll(arg("phi"), arg("psi"), arg("gamma"));
  }
  cur.fail("unknown lemma " + name);
}

}  // namespace

Proof parse_script(std::string_view text) {
  // One signature for the whole script, so `true`/`false` desugar uniformly.
  std::string quoted_all;
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (text[i] != '"') continue;
    const auto close = text.find('"', i + 1);
    if (close == std::string_view::npos) break;
    quoted_all.append(text.substr(i + 1, close - i - 1)).push_back(' ');
    i = close;
  }
  Signature sig = [&] {
    try {
      return infer_signature(quoted_all);
    } catch (const ParseError& e) {
      throw ScriptError(0, std::string("bad formula text: ") + e.what());
    }
  }();

  Proof proof{{}, Formula::atom("p")};
  std::vector<std::size_t> step_at;  // script step n -> proof index
  bool done = false;
  const auto lines = split_lines(text);
  for (std::size_t ln = 0; ln < lines.size(); ++ln) {
    Cursor cur{strip_comment(lines[ln]), ln + 1};
    cur.skip_ws();
    if (cur.s.empty()) continue;
    if (done) cur.fail("text after QED");

    auto formula = [&]() {
      const std::string q = cur.quoted();
      try {
        return parse_schema(q, sig).body();
      } catch (const ParseError& e) {
        cur.fail("in \"" + q + "\": " + e.what());
      }
    };
    auto subst = [&]() {
      Substitution s;
      cur.expect("[");
      if (cur.eat("]")) return s;
      do {
        const std::string key = cur.word();
        cur.expect(":=");
        if (!s.emplace(key, formula()).second) cur.fail("duplicate binding for " + key);
      } while (cur.eat(","));
      cur.expect("]");
      return s;
    };
    auto ref = [&]() {
      const std::size_t n = cur.number();
      if (n == 0 || n > step_at.size()) cur.fail("reference to step " + std::to_string(n) + " which does not precede it");
      return step_at[n - 1];
    };

    if (cur.eat("QED")) {
      proof.conclusion = formula();
      cur.end();
      done = true;
      continue;
    }
    const std::size_t n = cur.number();
    if (n != step_at.size() + 1)
      cur.fail("expected step number " + std::to_string(step_at.size() + 1));
    cur.expect(":");
    const std::string kw = upper(cur.word());
    if (kw == "AX") {
      const std::string id = cur.word();
      const auto schema = parse_axiom_id(id);
      if (!schema) cur.fail("unknown axiom schema " + id);
      proof.steps.emplace_back(AxStep{*schema, subst()});
    } else if (kw == "MP") {
      const std::size_t i = ref();
      const std::size_t j = ref();
      proof.steps.emplace_back(MpStep{i, j});
    } else if (kw == "NEC") {
      proof.steps.emplace_back(NecStep{ref()});
    } else if (kw == "LEMMA") {
      const std::string name = cur.word();
      const Proof lem = expand_lemma(name, subst(), cur);
      const std::size_t base = proof.steps.size();
      for (ProofStep st : lem.steps) {
        if (auto* m = std::get_if<MpStep>(&st)) {
          m->minor += base;
          m->major += base;
        } else if (auto* nc = std::get_if<NecStep>(&st)) {
          nc->premise += base;
        }
        proof.steps.push_back(std::move(st));
      }
    } else {
      cur.fail("unknown step kind " + kw);
    }
    cur.end();
    step_at.push_back(proof.steps.size() - 1);
  }
  if (!done) throw ScriptError(lines.size(), "missing QED line");
  return proof;
}

std::string print_script(const Proof& p) {
  std::string out;
  for (std::size_t i = 0; i < p.steps.size(); ++i) {
    out += std::to_string(i + 1) + ": ";
    if (const auto* ax = std::get_if<AxStep>(&p.steps[i])) {
      out += "AX " + std::string(to_string(ax->schema)) + " [";
      bool first = true;
      for (const auto& m : axiom_schema(ax->schema).metavariables()) {
        auto it = ax->subst.find(m);
        if (it == ax->subst.end()) continue;
        if (!first) out += ", ";
        first = false;
        out += m + " := \"" + print(it->second) + "\"";
      }
      out += "]";
    } else if (const auto* mp = std::get_if<MpStep>(&p.steps[i])) {
      out += "MP " + std::to_string(mp->minor + 1) + " " + std::to_string(mp->major + 1);
    } else {
      out += "NEC " + std::to_string(std::get<NecStep>(p.steps[i]).premise + 1);
    }
    out += "\n";
  }
  out += "QED \"" + print(p.conclusion) + "\"\n";
  return out;
}

}  // namespace pmlkit
