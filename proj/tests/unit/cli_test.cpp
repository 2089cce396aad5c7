#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "refnum/cli.hpp"
#include "support/paths.hpp"

using namespace refnum;
namespace fs = std::filesystem;
namespace rt = refnum::testing;

namespace {

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("refnum-cli-" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write(const std::string& name, const std::string& text) const {
    std::ofstream(path(name), std::ios::binary) << text;
    return path(name);
  }

  int run(const RunConfig& cfg) {
    out_.str("");
    err_.str("");
    return refnum::run(cfg, out_, err_);
  }

  static RunConfig annotate_fixture(const std::string& name) {
    RunConfig cfg;
    cfg.inputs = {rt::fixtures_dir() + "/" + name + ".tree"};
    return cfg;
  }

  static RunConfig corpus(Mode mode) {
    RunConfig cfg;
    cfg.mode = mode;
    cfg.manifest = rt::fixtures_dir() + "/corpus.manifest";
    return cfg;
  }

  fs::path dir_;
  std::ostringstream out_;
  std::ostringstream err_;
};

}  // namespace

TEST_F(Cli, AnnotatesBengoshiSentence) {
  ASSERT_EQ(run(annotate_fixture("bengoshi")), exit_code::ok) << err_.str();
  std::string text = out_.str();
  EXPECT_NE(text.find("`MUSUKO' `MUSUKO' definite plural]"), std::string::npos) << text;
  EXPECT_NE(text.find("`HITORI' `HITORI' indefinite singular]"), std::string::npos);
  EXPECT_EQ(text.find("@doc"), std::string::npos);
}

TEST_F(Cli, AnnotationIsIdempotentAndDeterministic) {
  RunConfig cfg = annotate_fixture("bengoshi");
  ASSERT_EQ(run(cfg), exit_code::ok);
  std::string once = out_.str();
  ASSERT_EQ(run(cfg), exit_code::ok);
  EXPECT_EQ(out_.str(), once);
  RunConfig again;
  again.inputs = {write("bengoshi.tree", once)};
  ASSERT_EQ(run(again), exit_code::ok);
  EXPECT_EQ(out_.str(), once);
}

TEST_F(Cli, ManifestOutputUsesDocumentDirectives) {
  RunConfig cfg = corpus(Mode::annotate);
  cfg.out = path("out.tree");
  cfg.emit_gold = path("self.tsv");
  cfg.trace = path("trace.jsonl");
  cfg.trace_text = path("trace.txt");
  ASSERT_EQ(run(cfg), exit_code::ok) << err_.str();
  std::string text = rt::read_text(*cfg.out);
  EXPECT_EQ(text.rfind("@doc D01\n", 0), 0u);
  EXPECT_NE(text.find("@doc D16\n"), std::string::npos);
  EXPECT_NE(rt::read_text(*cfg.trace_text).find("D12:s1:2 KUDAMONO definite"), std::string::npos);

  RunConfig ev = corpus(Mode::eval);
  ev.gold = cfg.emit_gold;
  ev.format = TableFormat::tsv;
  ASSERT_EQ(run(ev), exit_code::ok) << err_.str();
  EXPECT_NE(out_.str().find("% of correct\t"), std::string::npos);
  EXPECT_NE(out_.str().find("\t100.0\n"), std::string::npos) << out_.str();
}

TEST_F(Cli, EvalAgainstCorpusGold) {
  RunConfig ev = corpus(Mode::eval);
  ev.gold = rt::fixtures_dir() + "/gold.tsv";
  ASSERT_EQ(run(ev), exit_code::ok) << err_.str();
  EXPECT_NE(out_.str().find("% of correct"), std::string::npos);
  EXPECT_NE(out_.str().find("undecidable"), std::string::npos);
}

TEST_F(Cli, ExplainReadsTheTrace) {
  RunConfig cfg = annotate_fixture("D12");
  cfg.trace = path("t.jsonl");
  cfg.out = path("D12.out");
  ASSERT_EQ(run(cfg), exit_code::ok);
  RunConfig ex;
  ex.mode = Mode::explain;
  ex.trace = cfg.trace;
  ex.noun_ids = {"D12:s1:2"};
  ASSERT_EQ(run(ex), exit_code::ok) << err_.str();
  std::string text = out_.str();
  std::size_t rule_lines = 0;
  for (const char* id : {"ref-03", "ref-k2", "ref-k3", "ref-k4", "ref-k5", "ref-k6", "ref-k7"})
    rule_lines += text.find(std::string("  ") + id + " ") != std::string::npos ? 1 : 0;
  EXPECT_EQ(rule_lines, 7u) << text;
  EXPECT_NE(text.find("→ definite"), std::string::npos);

  ex.noun_ids = {"D12:s1:9"};
  EXPECT_EQ(run(ex), exit_code::usage);
  ex.noun_ids.clear();
  ASSERT_EQ(run(ex), exit_code::ok);
  EXPECT_NE(out_.str().find("WAREWARE [D12:s1:1]"), std::string::npos);
}

TEST_F(Cli, LintReportsCounts) {
  ASSERT_EQ(run(corpus(Mode::lint)), exit_code::ok) << err_.str();
  EXPECT_NE(out_.str().find("ref-k7"), std::string::npos);
  EXPECT_NE(out_.str().find("ok"), std::string::npos);
}

TEST_F(Cli, ExitCodes) {
  RunConfig missing;
  missing.inputs = {path("nope.tree")};
  EXPECT_EQ(run(missing), exit_code::usage);

  RunConfig bad_tree;
  bad_tree.inputs = {write("bad.tree", "( <[noun _ _ _ 'A' 'A']>\n")};
  EXPECT_EQ(run(bad_tree), exit_code::input);
  EXPECT_NE(err_.str().find("bad.tree"), std::string::npos);
  EXPECT_NE(err_.str().find(" at 2:"), std::string::npos) << err_.str();

  RunConfig bad_rules = annotate_fixture("D01");
  bad_rules.rules_refprop = write("bad.rules", "pack refprop v1 {\nrule x \"\"\n  source: printed\n  when:\n    -\n"
                                               "  scores: indefinite(1, 11) definite(1, 0) generic(1, 0)\n}\n");
  EXPECT_EQ(run(bad_rules), exit_code::rules);
  EXPECT_NE(err_.str().find("rule x"), std::string::npos);

  RunConfig wrong_pack = annotate_fixture("D01");
  wrong_pack.rules_refprop = rt::rules_dir() + "/number.rules";
  EXPECT_EQ(run(wrong_pack), exit_code::rules);

  RunConfig bad_gold = corpus(Mode::eval);
  bad_gold.gold = write("bad.tsv", "D01\ts1\n");
  EXPECT_EQ(run(bad_gold), exit_code::gold);

  RunConfig short_gold = corpus(Mode::eval);
  short_gold.gold = write("short.tsv", "D01\ts1\t1\tKARE\tdefinite\tsingular\n");
  EXPECT_EQ(run(short_gold), exit_code::gold);

  RunConfig no_gold = corpus(Mode::eval);
  EXPECT_EQ(run(no_gold), exit_code::usage);

  RunConfig no_trace;
  no_trace.mode = Mode::explain;
  EXPECT_EQ(run(no_trace), exit_code::usage);

  RunConfig bad_trace;
  bad_trace.mode = Mode::explain;
  bad_trace.trace = write("t.jsonl", "{\"kind\":\n");
  EXPECT_EQ(run(bad_trace), exit_code::input);
}

TEST_F(Cli, ManifestPathsAreRelativeToTheManifest) {
  fs::create_directories(dir_ / "sub");
  fs::copy_file(rt::fixtures_dir() + "/D04.tree", dir_ / "sub" / "hon.tree");
  RunConfig cfg;
  cfg.manifest = write("m.manifest", "# listing\nkono\tsub/hon.tree\n");
  ASSERT_EQ(run(cfg), exit_code::ok) << err_.str();
  EXPECT_EQ(out_.str().rfind("@doc kono\n", 0), 0u);
}
