#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "mutations.hpp"
#include "pmlkit/translate.hpp"

namespace pmlkit {
namespace {

using testing::f;
using testing::reflexive3_model;

std::size_t boxes(const Formula& g) {
  switch (g.op()) {
    case Op::Atom:
      return 0;
    case Op::Not:
      return boxes(g.arg());
    case Op::Box:
      return 1 + boxes(g.arg());
    default:
      return boxes(g.lhs()) + boxes(g.rhs());
  }
}

/// Maximal translation with the designation guard dropped.
CoreForm unguarded_w(const Formula& g) { return translate_min(g); }

TEST(Translate, Examples) {
  const Signature sig{"p", "q"};
  EXPECT_EQ(print_core(translate_max(f("box p", sig))), "∀v0. W(v0) -> (R(w,v0) -> V(p,v0))");
  EXPECT_EQ(print_core(translate_min(f("box p", sig))), "∀v0. R(w,v0) -> V(p,v0)");
  EXPECT_EQ(translate_max(f("p", sig)), CoreForm::pred_v("p", kFreeWorld));
  EXPECT_EQ(translate_max(f("~p", sig)), CoreForm::neg(CoreForm::pred_v("p", kFreeWorld)));
  EXPECT_EQ(translate_min(f("q", sig)), CoreForm::pred_v("q", kFreeWorld));
  EXPECT_EQ(print_core(CoreForm::pred_v("p", kFreeWorld)), "V(p,w)");
}

TEST(Translate, LoebUnfoldingShape) {
  const CoreForm c = translate_min(f("box (box p -> p) -> box p"));
  const CoreForm v0 = CoreForm::pred_r(kFreeWorld, 1);
  const CoreForm inner = CoreForm::forall(2, CoreForm::imp(CoreForm::pred_r(1, 2), CoreForm::pred_v("p", 2)));
  const CoreForm expect = CoreForm::imp(
      CoreForm::forall(1, CoreForm::imp(v0, CoreForm::imp(inner, CoreForm::pred_v("p", 1)))),
      CoreForm::forall(1, CoreForm::imp(v0, CoreForm::pred_v("p", 1))));
  EXPECT_EQ(c, expect) << print_core(c);
  EXPECT_EQ(c.quantifiers(), 3u);
}

TEST(Translate, SugarIsDesugaredFirst) {
  for (const char* text : {"dia p", "p & q", "box (p | false)"}) {
    EXPECT_EQ(translate_max(f(text)), translate_max(desugar(f(text))));
    EXPECT_EQ(translate_min(f(text)), translate_min(desugar(f(text))));
  }
}

TEST(EvalCore, Reflexive3) {
  const KripkeModel m = reflexive3_model();
  const Signature sig{"p"};
  EXPECT_TRUE(eval_core(translate_min(f("box p", sig)), CoreEnv{m, {{"w", 2}}}));
  EXPECT_FALSE(eval_core(translate_max(f("box p -> box box p", sig)), CoreEnv{m, {{"w", 2}}}));
  EXPECT_FALSE(eval_core(CoreForm::pred_v("p", kFreeWorld), CoreEnv{m, {{"w", 1}}}));
  EXPECT_THROW(eval_core(translate_min(f("p", sig)), CoreEnv{m, {}}), std::invalid_argument);
}

TEST(Properties, MinIsMaxWithoutWorldGuards) {
  for (const auto& g : enumerate_formulas(Signature{"p", "q"}, 3))
    ASSERT_EQ(strip_world_guards(translate_max(g)), translate_min(g)) << print(g);
}

TEST(Properties, HygieneAndSize) {
  for (const auto& g : enumerate_formulas(Signature{"p", "q"}, 3)) {
    const CoreForm mx = translate_max(g), mn = translate_min(g);
    ASSERT_TRUE(well_scoped(mx)) << print(g);
    ASSERT_TRUE(well_scoped(mn)) << print(g);
    ASSERT_LE(mn.size(), 3 * g.size()) << print(g);
    ASSERT_EQ(mn.quantifiers(), boxes(g));
    ASSERT_EQ(mx.quantifiers(), boxes(g));
    ASSERT_EQ(print_core(mn).find("W("), std::string::npos);
  }
}

TEST(Properties, WellScopedRejectsShadowingAndFreeVariables) {
  const CoreForm body = CoreForm::pred_r(kFreeWorld, 1);
  EXPECT_TRUE(well_scoped(CoreForm::forall(1, body)));
  EXPECT_FALSE(well_scoped(body));
  EXPECT_FALSE(well_scoped(CoreForm::forall(1, CoreForm::forall(1, body))));
}

TEST(Faithfulness, SmallGridPasses) {
  FaithfulnessOptions opts;
  opts.max_depth = 2;
  opts.max_worlds = 2;
  const Report r = check_faithfulness(Signature{"p"}, opts);
  ASSERT_EQ(r.claims.size(), 4u);
  EXPECT_EQ(r.claims[0].name, "Faithful1a");
  EXPECT_EQ(r.claims[1].name, "Faithful1b");
  EXPECT_EQ(r.claims[2].name, "Faithful2");
  EXPECT_EQ(r.claims[3].name, "Faithful3");
  for (const auto& c : r.claims) {
    EXPECT_GT(c.instances, 0u) << c.name;
    EXPECT_EQ(c.violation_count, 0u) << c.name;
  }
  EXPECT_TRUE(r.ok());
}

TEST(Faithfulness, ParallelAgreesWithSequential) {
  FaithfulnessOptions opts;
  opts.max_depth = 2;
  opts.max_worlds = 2;
  const Report one = check_faithfulness(Signature{"p", "q"}, opts);
  opts.jobs = 3;
  const Report three = check_faithfulness(Signature{"p", "q"}, opts);
  EXPECT_EQ(one.to_text(), three.to_text());
}

TEST(Faithfulness, DroppingTheAccessibilityGuardIsCaught) {
  FaithfulnessOptions opts;
  opts.max_depth = 1;
  opts.max_worlds = 2;
  opts.min_translation = testing::translate_min_without_r_guard;
  const Report r = check_faithfulness(Signature{"p"}, opts);
  ASSERT_NE(r.find("Faithful2"), nullptr);
  EXPECT_GE(r.find("Faithful2")->violation_count, 1u);
  EXPECT_GE(r.find("Faithful3")->violation_count, 1u);
  EXPECT_EQ(r.find("Faithful1a")->violation_count, 0u);
  EXPECT_FALSE(r.find("Faithful2")->violations.empty());
}

TEST(Faithfulness, DroppingTheWorldGuardIsCaughtOnProperSubsets) {
  FaithfulnessOptions opts;
  opts.max_depth = 1;
  opts.max_worlds = 2;
  opts.max_translation = unguarded_w;
  const Report r = check_faithfulness(Signature{"p"}, opts);
  EXPECT_GE(r.find("Faithful1a")->violation_count, 1u);
  // With every world designated the guard is vacuous.
  EXPECT_EQ(r.find("Faithful3")->violation_count, 0u);
}

TEST(Report, MergeAddsClaimByClaim) {
  Report a, b;
  a.claim("x").instances = 3;
  b.claim("x").instances = 4;
  b.claim("x").add_violation("boom");
  b.claim("y").instances = 1;
  a.merge(b);
  EXPECT_EQ(a.find("x")->instances, 7u);
  EXPECT_EQ(a.find("x")->violation_count, 1u);
  EXPECT_EQ(a.find("y")->instances, 1u);
  EXPECT_FALSE(a.ok());
  EXPECT_EQ(a.to_text(),
            "theorem: x\ninstances: 7\nviolations: 1\n  - boom\n"
            "theorem: y\ninstances: 1\nviolations: 0\n");
}

}  // namespace
}  // namespace pmlkit
