#include "commands.hpp"

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "test_support.hpp"

namespace kca::cli {
namespace {

namespace fs = std::filesystem;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kca_cli_test_" + std::string(::testing::UnitTest::GetInstance()
                                              ->current_test_info()
                                              ->name()));
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& text) const {
    const fs::path p = dir_ / name;
    std::ofstream(p) << text;
    return p.string();
  }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string fisher_tsv() const {
    const std::string p = path("fisher.tsv");
    write_table_tsv(fisher_table(), p);
    return p;
  }

  fs::path dir_;
};

TEST(MethodConfig, ParsesKeysAndComments) {
  std::istringstream in(
      "# a comment\n"
      "method = sgns\n"
      "shift_k=5   # trailing\n"
      "dim=10\n"
      "sw_alpha_row=-0.5\n");
  const MethodConfig cfg = parse_method_config(in);
  EXPECT_EQ(cfg.method, "sgns");
  EXPECT_EQ(cfg.shift_k, 5.0);
  EXPECT_EQ(cfg.dim, Index{10});
  EXPECT_EQ(cfg.sw_alpha_row, -0.5);
  EXPECT_FALSE(cfg.sw_alpha_col);
  std::ostringstream echo;
  echo_method_config(cfg, echo);
  EXPECT_NE(echo.str().find("method=sgns shift_k=5"), std::string::npos) << echo.str();
}

TEST(MethodConfig, Errors) {
  std::istringstream unknown("colour=blue\n");
  EXPECT_THROW(parse_method_config(unknown), std::invalid_argument);
  std::istringstream bad("shift_k=five\n");
  EXPECT_THROW(parse_method_config(bad), std::invalid_argument);
  std::istringstream noeq("method\n");
  EXPECT_THROW(parse_method_config(noeq), std::invalid_argument);
  std::istringstream dim("dim=2.5\n");
  EXPECT_THROW(parse_method_config(dim), std::invalid_argument);
  EXPECT_THROW(load_method_config("/nonexistent/cfg"), std::runtime_error);
}

TEST(BuildMethod, Variants) {
  const ContingencyTable t = fisher_table();
  MethodConfig cfg;
  EXPECT_EQ(build_method(cfg, t, {}, nullptr).tag(), KcaMethod::linear_ca().tag());
  cfg.method = "bogus";
  EXPECT_THROW(build_method(cfg, t, {}, nullptr), std::invalid_argument);
  cfg.method = "ws";
  EXPECT_THROW(build_method(cfg, t, {}, nullptr), std::invalid_argument);
  cfg.method = "gtest";
  cfg.sw_alpha_row = 0.5;
  EXPECT_THROW(build_method(cfg, t, {}, nullptr), std::invalid_argument);
  const KcaMethod m = build_method(cfg, t, {"blue"}, nullptr);
  EXPECT_EQ(m.row_kernel.kind, KernelKind::StopWord);
  EXPECT_EQ(m.col_kernel.kind, KernelKind::Identity);
  cfg.method = "ws";
  WordSimDataset d;
  d.pairs.push_back({"blue", "dark", 5.0});
  EXPECT_THROW(build_method(cfg, t, {"blue"}, &d), std::invalid_argument);
  cfg.sw_alpha_row.reset();
  EXPECT_EQ(build_method(cfg, t, {}, &d).row_kernel.kind, KernelKind::Similarity);
}

TEST_F(CliTest, CountTinyCorpus) {
  CountOptions opts;
  opts.corpus_path = write("c.txt", "a b a");
  opts.cooccurrence.window = 1;
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_count(opts, out, err), 0) << err.str();
  EXPECT_EQ(out.str(), "\ta\tb\na\t0\t2\nb\t2\t0\n");
  EXPECT_NE(err.str().find("tokens=3/3 window=1"), std::string::npos) << err.str();
}

TEST_F(CliTest, CountSlicesAndWritesFile) {
  CountOptions opts;
  opts.corpus_path = write("c.txt", "w0 w1 w2 w3 w4 w5 w6 w7 w8 w9");
  opts.slice_percent = 20.0;
  opts.out_path = path("t.tsv");
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_count(opts, out, err), 0) << err.str();
  EXPECT_NE(err.str().find("tokens=2/10"), std::string::npos) << err.str();
  const ContingencyTable t = read_table_tsv(path("t.tsv"));
  EXPECT_EQ(t.rows(), 2);
  EXPECT_EQ(t.total(), 2.0);
  EXPECT_TRUE(out.str().empty());
}

TEST_F(CliTest, CountMissingCorpus) {
  CountOptions opts;
  opts.corpus_path = path("missing.txt");
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_count(opts, out, err), 1);
  EXPECT_EQ(err.str().rfind("count: ", 0), 0u) << err.str();
}

TEST_F(CliTest, FitFisherLinear) {
  FitOptions opts;
  opts.table_path = fisher_tsv();
  opts.method.dim = 2;
  opts.out_path = path("e.tsv");
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_fit(opts, out, err), 0) << err.str();
  const EmbeddingSet back = read_embeddings(path("e.tsv"));
  const EmbeddingSet direct = fit_linear_ca(fisher_table(), 2);
  EXPECT_EQ(back.F, direct.F);
  EXPECT_EQ(back.G, direct.G);
  EXPECT_EQ(back.singular_values, direct.singular_values);
  EXPECT_EQ(back.row_labels, direct.row_labels);
  EXPECT_EQ(back.method_tag, direct.method_tag);
}

TEST_F(CliTest, FitDefaultDimensionAndSgns) {
  FitOptions opts;
  opts.table_path = fisher_tsv();
  opts.method.method = "sgns";
  opts.method.shift_k = 5.0;
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_fit(opts, out, err), 0) << err.str();
  EXPECT_NE(err.str().find("dim=3"), std::string::npos) << err.str();
  std::istringstream in(out.str());
  const EmbeddingSet e = read_embeddings(in);
  EXPECT_EQ(e.dim(), 3);
  EXPECT_NE(e.method_tag.find("k=5"), std::string::npos) << e.method_tag;
}

TEST_F(CliTest, FitRejectsInvalidMethod) {
  FitOptions opts;
  opts.table_path = fisher_tsv();
  opts.method.method = "glove";
  std::ostringstream out;
  std::ostringstream err;
  EXPECT_EQ(cmd_fit(opts, out, err), 1);
  EXPECT_NE(err.str().find("unknown method 'glove'"), std::string::npos) << err.str();
}

TEST_F(CliTest, EvalSortsRowsAndFlagsFailures) {
  // Four words with an obvious two-group structure.
  Matrix n(4, 4);
  n << 0, 20, 1, 1, 20, 0, 1, 2, 1, 1, 0, 20, 1, 2, 20, 0;
  const auto labels = std::vector<std::string>{"cat", "dog", "car", "bus"};
  write_table_tsv(ContingencyTable(n, labels, labels), path("t.tsv"));
  FitOptions fit;
  fit.table_path = path("t.tsv");
  fit.method.dim = 2;
  fit.out_path = path("e.tsv");
  std::ostringstream sink;
  ASSERT_EQ(cmd_fit(fit, sink, sink), 0) << sink.str();

  EvalOptions opts;
  opts.embeddings_path = path("e.tsv");
  opts.wordsim_paths = {write("zeta.txt", "cat dog 9\ncat car 1\nbus car 8\n"),
                        write("alpha.txt", "cat dog 9\ndog bus 2\nunicorn cat 4\n")};
  std::ostringstream out1;
  std::ostringstream err1;
  ASSERT_EQ(cmd_eval(opts, out1, err1), 0) << err1.str();
  EXPECT_EQ(out1.str().rfind("linear_ca:F\talpha\t", 0), 0u) << out1.str();
  EXPECT_NE(out1.str().find("\t2\t1\n"), std::string::npos) << out1.str();
  std::ostringstream out2;
  std::ostringstream err2;
  cmd_eval(opts, out2, err2);
  EXPECT_EQ(out1.str(), out2.str());

  opts.wordsim_paths.push_back(write("oov.txt", "xx yy 3\n"));
  opts.which = PointSet::G;
  std::ostringstream out3;
  std::ostringstream err3;
  EXPECT_EQ(cmd_eval(opts, out3, err3), 1);
  EXPECT_NE(out3.str().find("linear_ca:G\toov\terror\t0\t1\n"), std::string::npos)
      << out3.str();
  EXPECT_NE(err3.str().find("zero usable pairs"), std::string::npos) << err3.str();
}

TEST_F(CliTest, DemoFisher) {
  DemoOptions opts;
  opts.out_path = path("fisher.csv");
  std::ostringstream out;
  std::ostringstream err;
  ASSERT_EQ(cmd_demo_fisher(opts, out, err), 0) << err.str();
  EXPECT_NE(out.str().find("n\t5387\n"), std::string::npos) << out.str();
  EXPECT_NE(out.str().find("r\t718,1580,1774,1315\n"), std::string::npos);
  EXPECT_NE(out.str().find("gini_eye\t0.3640"), std::string::npos);
  std::ifstream csv(opts.out_path);
  std::string line;
  int lines = 0;
  while (std::getline(csv, line)) ++lines;
  EXPECT_EQ(lines, 10);
}

TEST(Embeddings, MalformedFiles) {
  std::istringstream empty("");
  EXPECT_THROW(read_embeddings(empty), std::invalid_argument);
  std::istringstream header("coords\tx\t1\t0.5\n");
  EXPECT_THROW(read_embeddings(header), std::invalid_argument);
  std::istringstream count("embeddings\tx\t2\t0.5\n");
  EXPECT_THROW(read_embeddings(count), std::invalid_argument);
  std::istringstream ragged("embeddings\tx\t1\t0.5\nrow\ta\n");
  EXPECT_THROW(read_embeddings(ragged), std::invalid_argument);
  std::istringstream set("embeddings\tx\t1\t0.5\nmid\ta\t1\n");
  EXPECT_THROW(read_embeddings(set), std::invalid_argument);
}

}  // namespace
}  // namespace kca::cli
