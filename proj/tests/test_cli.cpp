#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out, err;
};

Outcome run(std::vector<std::string> args) {
  args.insert(args.begin(), "pmlkit");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = pmlkit::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("pmlkit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name)) << text;
    return path(name);
  }
  fs::path dir_;
};

const std::string kData = PMLKIT_DATA_DIR;

TEST_F(Cli, Parse) {
  const Outcome r = run({"parse", "dia box p -> box dia p"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out,
            "formula: dia box p -> box dia p\n"
            "sexpr: (imp (dia (box p)) (box (dia p)))\n"
            "core: ~box ~box p -> box ~box ~p\n");
  EXPECT_NE(run({"parse", "true", "--sig", "q,p"}).out.find("core: q -> q\n"), std::string::npos);
  const Outcome bad = run({"parse", "p -> (q -> p"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_NE(bad.err.find("error:"), std::string::npos);
  EXPECT_NE(bad.err.find("usage:"), std::string::npos);
  EXPECT_EQ(run({"parse", "p -> r", "--sig", "p"}).code, 2);
}

TEST_F(Cli, Eval) {
  const std::string model = kData + "/models/reflexive3.yaml";
  EXPECT_EQ(run({"eval", "--model", model, "--world", "2", "box p"}).out, "true\n");
  const Outcome neg = run({"eval", "--model", model, "--world", "2", "box p -> box box p"});
  EXPECT_EQ(neg.code, 1);
  EXPECT_EQ(neg.out, "false\n");
  EXPECT_EQ(run({"eval", "--model", model, "--world", "7", "p"}).code, 2);
  EXPECT_EQ(run({"eval", "--model", path("missing.yaml"), "--world", "0", "p"}).code, 2);
  EXPECT_EQ(run({"eval", "--model", write("bad.yaml", "worlds: [\n"), "--world", "0", "p"}).code, 2);
}

TEST_F(Cli, CheckProof) {
  const Outcome ok = run({"check-proof", kData + "/proofs/box_dia_and.prf", "--logic", "K"});
  EXPECT_EQ(ok.code, 0);
  EXPECT_EQ(ok.out.rfind("proof ok in K: box p -> dia q -> dia (p & q)", 0), 0u) << ok.out;
  EXPECT_EQ(run({"check-proof", kData + "/proofs/identity.prf"}).code, 0);
  const std::string t = write("t.prf", "1: AX T [phi := \"p\"]\nQED \"box p -> p\"\n");
  EXPECT_EQ(run({"check-proof", t, "--logic", "K"}).code, 1);
  EXPECT_EQ(run({"check-proof", t, "--logic", "kt"}).code, 0);
  EXPECT_EQ(run({"check-proof", t, "--logic", "KD"}).code, 2);
  EXPECT_EQ(run({"check-proof", write("junk.prf", "1: FOO\n")}).code, 2);
}

TEST_F(Cli, Prove) {
  const Outcome kb = run({"prove", "dia box p -> box dia p", "--logic", "KB"});
  EXPECT_EQ(kb.code, 0);
  EXPECT_EQ(kb.out.rfind("valid in KB\n", 0), 0u);
  const Outcome kt = run({"prove", "box p -> box box p", "--logic", "KT"});
  EXPECT_EQ(kt.code, 1);
  EXPECT_EQ(kt.out.rfind("invalid in KT\n", 0), 0u);
  const Outcome limit = run({"prove", "box p -> box box p", "--logic", "KT", "--max-labels", "1"});
  EXPECT_EQ(limit.code, 3);
  EXPECT_NE(limit.err.find("resource limit"), std::string::npos);
  EXPECT_EQ(run({"prove"}).code, 2);
}

TEST_F(Cli, Countermodel) {
  const std::string dot = path("out.gv"), model = path("cm.yaml");
  const Outcome r = run({"countermodel", "box p -> box box p", "--props", "r", "--max-worlds", "3", "--dot",
                     dot, "--model-out", model});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out,
            "countermodel found: 3 worlds, falsified at world 1\n"
            "exhaustive search: no countermodel with <= 2 worlds (18 models visited)\n"
            "worlds: 3\nin: [0, 1, 2]\nrel: [[0, 0], [0, 2], [1, 0], [1, 1], [2, 2]]\nval: {p: [0, 1]}\n");
  EXPECT_EQ(slurp(dot).rfind("digraph countermodel {", 0), 0u);
  EXPECT_NE(slurp(dot).find("w1 [label=\"w1\\np\", shape=doublecircle];"), std::string::npos);
  EXPECT_EQ(run({"eval", "--model", model, "--world", "1", "box p -> box box p"}).code, 1);

  const Outcome collapse = run({"countermodel", "p -> box p"});
  EXPECT_EQ(collapse.code, 1);
  EXPECT_EQ(collapse.out.rfind("countermodel found: 2 worlds, falsified at world 0\n", 0), 0u);

  const Outcome none = run({"countermodel", "p -> p", "--max-worlds", "2"});
  EXPECT_EQ(none.code, 0);
  EXPECT_EQ(none.out, "no countermodel with <= 2 worlds (68 models visited)\n");

  EXPECT_EQ(run({"countermodel", "p", "--max-worlds", "9"}).code, 2);
  EXPECT_EQ(run({"countermodel", "p", "--props", "z"}).code, 2);
}

TEST_F(Cli, Classify) {
  const Outcome r = run({"classify", "--corpus"});
  EXPECT_EQ(r.code, 0);
  std::vector<std::string> lines;
  std::stringstream ss(r.out);
  for (std::string l; std::getline(ss, l);) lines.push_back(l);
  ASSERT_EQ(lines.size(), 11u);
  EXPECT_EQ(lines[0], "formula  K    KT   KB   K4   KTB  S4   KB4  S5   minimal");
  const std::vector<std::string> minimal = {"{K4}", "{KB}", "{KB4}", "{KB, K4}", "{K4}",
                                            "{KB4}", "{KB4}", "{KT, KB}", "{KT}", "{KT}"};
  for (std::size_t i = 0; i < 10; ++i) {
    EXPECT_EQ(lines[i + 1].rfind("F" + std::to_string(i + 1) + " ", 0), 0u);
    EXPECT_EQ(lines[i + 1].substr(lines[i + 1].size() - minimal[i].size()), minimal[i]);
  }
  const Outcome one = run({"classify", "box p -> p"});
  EXPECT_EQ(one.code, 0);
  EXPECT_NE(one.out.find("{KT}"), std::string::npos);
  EXPECT_EQ(run({"classify"}).code, 2);
  EXPECT_EQ(run({"classify", "p", "--corpus"}).code, 2);
}

TEST_F(Cli, Correspond) {
  const Outcome t = run({"correspond", "T", "reflexive"});
  EXPECT_EQ(t.code, 0);
  EXPECT_EQ(t.out, "theorem: box ?phi -> ?phi <=> reflexive\ninstances: 66066\nviolations: 0\n");
  const Outcome four = run({"correspond", "4", "r", "--max-worlds", "3"});
  EXPECT_EQ(four.code, 1);
  EXPECT_NE(four.out.find("  - property holds but the schema is not valid: n=3 rel=[[0,0], [0,2], [1,0], [1,1], [2,2]]"),
            std::string::npos);
  EXPECT_NE(four.out.find("  - schema is valid but the property fails: n=1 rel=[]"), std::string::npos);
  EXPECT_EQ(run({"correspond", "dia ?phi -> box dia ?phi", "e", "--max-worlds", "3"}).code, 0);
  EXPECT_EQ(run({"correspond", "T", "nonsense"}).code, 2);
}

TEST_F(Cli, Loeb) {
  const Outcome r = run({"loeb", "--max-worlds", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("theorem: (d) Loeb => Transitive\ninstances: 23\nviolations: 0\n"), std::string::npos);
  EXPECT_EQ(run({"loeb", "--max-worlds", "0"}).code, 2);
}

TEST_F(Cli, Faithful) {
  const Outcome r = run({"faithful", "--depth", "1", "--max-worlds", "2", "--atoms", "2"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out.rfind("theorem: Faithful1a\n", 0), 0u);
  EXPECT_EQ(r.out.find("violations: 1"), std::string::npos);
  EXPECT_EQ(run({"faithful", "--atoms", "7"}).code, 2);
}

TEST_F(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--jobs", "0", "parse", "p"}).code, 2);
  EXPECT_EQ(run({"--help"}).code, 0);
}

TEST_F(Cli, OutputIsDeterministic) {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"classify", "--corpus"},
        std::vector<std::string>{"--jobs", "3", "countermodel", "dia box p -> box dia p", "--props", "r"},
        std::vector<std::string>{"--jobs", "2", "faithful", "--depth", "2"},
        std::vector<std::string>{"prove", "box p -> box box p", "--logic", "KB"}}) {
    const Outcome a = run(args), b = run(args);
    EXPECT_EQ(a.code, b.code);
    EXPECT_EQ(a.out, b.out);
  }
}

}  // namespace
