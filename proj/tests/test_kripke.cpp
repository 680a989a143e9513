#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "pmlkit/kripke.hpp"

namespace pmlkit {
namespace {

using testing::f;
using testing::reflexive3_model;
using testing::for_each_model;

TEST(Reflexive3, FrameProperties) {
  const KripkeModel m = reflexive3_model();
  EXPECT_TRUE(has_property(m, FrameProperty::Reflexive));
  EXPECT_FALSE(has_property(m, FrameProperty::Transitive));
  EXPECT_FALSE(has_property(m, FrameProperty::Symmetric));
  EXPECT_TRUE(has_property(m, FrameProperty::Serial));
  EXPECT_FALSE(has_property(m, FrameProperty::ConverseWellFounded));
}

TEST(Reflexive3, Evaluation) {
  const KripkeModel m = reflexive3_model();
  const Signature sig{"p"};
  EXPECT_TRUE(eval_deep(m, 2, f("box p", sig)));
  EXPECT_FALSE(eval_deep(m, 2, f("box p -> box box p", sig)));
  EXPECT_FALSE(eval_deep(m, 1, f("p", sig)));
  EXPECT_FALSE(valid_in_model(m, f("box p -> box box p", sig)));
  EXPECT_TRUE(valid_in_model(m, f("box p -> p", sig)));
}

TEST(Reflexive3, MatchesBundledModelFile) {
  std::ifstream in(PMLKIT_DATA_DIR "/models/reflexive3.yaml");
  ASSERT_TRUE(in);
  std::stringstream ss;
  ss << in.rdbuf();
  EXPECT_EQ(read_model(ss.str()), reflexive3_model());
}

TEST(Eval, Trivia) {
  const Signature sig{"p"};
  const KripkeModel lonely(Frame(1, {}), sig, {{false}});
  EXPECT_TRUE(eval_deep(lonely, 0, f("box p", sig)));
  EXPECT_TRUE(valid_in_model(lonely, f("box p", sig)));
  for_each_model(2, sig, true, [&](const KripkeModel& m) {
    for (WorldId w : m.frame().worlds()) {
      ASSERT_FALSE(eval_deep(m, w, f("false", sig)));
      ASSERT_TRUE(eval_deep(m, w, f("p -> p", sig)));
    }
  });
}

TEST(Eval, Errors) {
  const Signature sig{"p"};
  const KripkeModel m(Frame(2, {true, false}, {{0, 1}}), sig, {{true, false}});
  EXPECT_THROW(eval_deep(m, 1, f("p", sig)), std::out_of_range);
  EXPECT_THROW(eval_deep(m, 5, f("p", sig)), std::out_of_range);
  EXPECT_THROW(eval_deep(m, 0, f("q")), std::invalid_argument);
}

TEST(Eval, BoxIgnoresUndesignatedSuccessors) {
  const Signature sig{"p"};
  const KripkeModel m(Frame(2, {true, false}, {{0, 1}}), sig, {{true, false}});
  EXPECT_TRUE(eval_deep(m, 0, f("box p", sig)));
  EXPECT_FALSE(eval_deep(m, 0, f("dia true", sig)));
}

TEST(FrameProperty, EmptyRelation) {
  const Frame empty(3, {});
  EXPECT_TRUE(has_property(empty, FrameProperty::ConverseWellFounded));
  EXPECT_TRUE(has_property(empty, FrameProperty::Irreflexive));
  EXPECT_TRUE(has_property(empty, FrameProperty::Transitive));
  EXPECT_FALSE(has_property(empty, FrameProperty::Serial));
}

TEST(FrameProperty, ConverseWellFoundedIsAcyclicity) {
  EXPECT_FALSE(has_property(Frame(1, {{0, 0}}), FrameProperty::ConverseWellFounded));
  EXPECT_FALSE(has_property(Frame(3, {{0, 1}, {1, 2}, {2, 0}}), FrameProperty::ConverseWellFounded));
  EXPECT_TRUE(has_property(Frame(3, {{0, 1}, {1, 2}, {0, 2}}), FrameProperty::ConverseWellFounded));
  // A cycle through an undesignated world does not count.
  EXPECT_TRUE(has_property(Frame(2, {true, false}, {{0, 1}, {1, 0}}), FrameProperty::ConverseWellFounded));
}

TEST(FrameProperty, Names) {
  for (auto p : {FrameProperty::Reflexive, FrameProperty::Symmetric, FrameProperty::Transitive,
                 FrameProperty::Serial, FrameProperty::Euclidean, FrameProperty::Irreflexive,
                 FrameProperty::ConverseWellFounded}) {
    EXPECT_EQ(parse_frame_property(to_string(p)), p);
  }
  EXPECT_EQ(parse_frame_property("r"), FrameProperty::Reflexive);
  EXPECT_EQ(parse_frame_property("t"), FrameProperty::Transitive);
  EXPECT_THROW(parse_frame_property("x"), std::invalid_argument);
}

TEST(FrameProperty, CloseUnderYieldsProperty) {
  const std::vector<FrameProperty> props = {FrameProperty::Reflexive, FrameProperty::Symmetric,
                                            FrameProperty::Transitive};
  for (std::uint64_t r = 0; r < 512; ++r) {
    const Frame fr = Frame::from_bits(3, 7, r);
    const Frame c = close_under(fr, props);
    for (auto p : props) ASSERT_TRUE(has_property(c, p));
    for (const auto& e : fr.edges()) ASSERT_TRUE(c.related(e.first, e.second));
  }
}

TEST(ModelFile, RoundTripIsBitExact) {
  const Signature sig{"p", "q"};
  const KripkeModel m(Frame(3, {true, false, true}, {{0, 1}, {1, 2}, {2, 2}}), sig,
                      {{true, false, false}, {false, true, true}});
  const std::string text = write_model(m);
  EXPECT_EQ(read_model(text), m);
  EXPECT_EQ(write_model(read_model(text)), text);
  EXPECT_EQ(write_model(reflexive3_model()),
            "worlds: 3\nin: [0, 1, 2]\nrel: [[0, 0], [0, 1], [0, 2], [1, 1], [2, 0], [2, 2]]\n"
            "val: {p: [0, 2]}\n");
}

TEST(ModelFile, Malformed) {
  EXPECT_ANY_THROW(read_model("worlds: 0\nrel: []\nval: {p: []}\n"));
  EXPECT_ANY_THROW(read_model("worlds: 2\nrel: [[0, 5]]\nval: {p: []}\n"));
  EXPECT_ANY_THROW(read_model("worlds: 2\nin: []\nrel: []\nval: {p: []}\n"));
  EXPECT_ANY_THROW(read_model("rel: [["));
}

TEST(Properties, MonotoneIrrelevanceOfOtherAtoms) {
  // Formulas mention only p; flipping q anywhere changes nothing.
  const Signature pq{"p", "q"};
  const auto formulas = enumerate_formulas(Signature{"p"}, 2);
  for_each_model(2, pq, true, [&](const KripkeModel& m) {
    std::vector<std::vector<bool>> flipped(2, std::vector<bool>(m.size()));
    for (WorldId w = 0; w < m.size(); ++w) {
      flipped[0][w] = m.holds(std::size_t{0}, w);
      flipped[1][w] = !m.holds(std::size_t{1}, w);
    }
    const KripkeModel other(m.frame(), pq, flipped);
    for (const auto& g : formulas)
      for (WorldId w : m.frame().worlds()) ASSERT_EQ(eval_deep(m, w, g), eval_deep(other, w, g));
  });
}

TEST(Properties, EdgesOutsideWorldsAreIrrelevant) {
  const Signature sig{"p"};
  const auto formulas = enumerate_formulas(sig, 2);
  for_each_model(3, sig, true, [&](const KripkeModel& m) {
    if (m.frame().all_designated()) return;
    std::vector<bool> in(m.size());
    std::vector<Edge> kept;
    for (WorldId w = 0; w < m.size(); ++w) in[w] = m.frame().designated(w);
    for (const auto& [u, v] : m.frame().edges())
      if (in[u] && in[v]) kept.emplace_back(u, v);
    std::vector<std::vector<bool>> truth(1, std::vector<bool>(m.size()));
    for (WorldId w = 0; w < m.size(); ++w) truth[0][w] = m.holds(std::size_t{0}, w);
    const KripkeModel pruned(Frame(m.size(), in, kept), sig, truth);
    for (const auto& g : formulas)
      for (WorldId w : m.frame().worlds()) ASSERT_EQ(eval_deep(m, w, g), eval_deep(pruned, w, g));
  });
}

TEST(Properties, DiamondDuality) {
  const Signature sig{"p"};
  std::vector<std::pair<Formula, Formula>> pairs;
  for (const auto& g : enumerate_formulas(sig, 2))
    pairs.emplace_back(Formula::dia(g), Formula::neg(Formula::box(Formula::neg(g))));
  for_each_model(3, sig, false, [&](const KripkeModel& m) {
    for (const auto& [d, b] : pairs)
      for (WorldId w = 0; w < m.size(); ++w) ASSERT_EQ(eval_deep(m, w, d), eval_deep(m, w, b));
  });
}

TEST(Properties, LanesAgreeWithBool) {
  // Lane j of the bit-sliced evaluator is the model with valuation j.
  struct In {
    const Frame& fr;
    std::vector<Lanes> p;
    const Frame& frame() const { return fr; }
    Lanes atom(const std::string&, WorldId w) const { return p[w]; }
    Lanes meta(const std::string&, WorldId w) const { return p[w]; }
  };
  const Signature sig{"p"};
  const auto formulas = enumerate_formulas(sig, 2);
  for (std::uint64_t r = 0; r < 512; ++r) {
    const Frame fr = Frame::from_bits(3, 5, r);
    const AssignmentLanes lanes(3);
    In in{fr, {lanes.variable(0, 0), lanes.variable(1, 0), lanes.variable(2, 0)}};
    for (const auto& g : formulas)
      for (WorldId w : fr.worlds()) {
        const Lanes got = evaluate<Lanes>(g, w, in);
        for (unsigned j = 0; j < 8; ++j)
          ASSERT_EQ(((got >> j) & 1) != 0, eval_deep(testing::model_from_bits(fr, sig, j), w, g));
      }
  }
}

}  // namespace
}  // namespace pmlkit
