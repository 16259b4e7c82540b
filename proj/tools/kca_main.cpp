// kca: correspondence analysis and kernel CA for contingency tables and
// word co-occurrence data.
//
//   kca count CORPUS [--window N] [--min-count N] [--slice PCT] [--out TABLE]
//   kca fit TABLE [--method M] [--dim K] ... [--out EMBEDDINGS]
//   kca eval EMBEDDINGS --wordsim FILE [--wordsim FILE ...] [--which F|G]
//   kca demo-fisher [--out CSV]

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

using kca::cli::MethodConfig;

// Method flags override config-file entries, so they are collected as
// strings and applied on top of the parsed file.
struct MethodFlags {
  std::optional<std::string> config_path;
  std::map<std::string, std::string> values;

  void add(CLI::App* app, const std::string& flag, const std::string& key,
           const std::string& help) {
    app->add_option_function<std::string>(
        flag, [this, key](const std::string& v) { values[key] = v; }, help);
  }

  MethodConfig resolve() const {
    MethodConfig cfg = config_path ? kca::cli::load_method_config(*config_path)
                                   : MethodConfig{};
    for (const auto& [key, value] : values) {
      kca::cli::set_method_option(cfg, key, value);
    }
    return cfg;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Correspondence analysis and kernel CA"};
  app.require_subcommand(1);

  // count
  kca::cli::CountOptions count;
  std::optional<std::size_t> max_vocab;
  bool keep_case = false;
  auto* count_cmd = app.add_subcommand("count", "Count word-context co-occurrences");
  count_cmd->add_option("corpus", count.corpus_path, "Plain-text corpus")->required();
  count_cmd->add_option("--window", count.cooccurrence.window, "Symmetric window size")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  count_cmd->add_option("--min-count", count.cooccurrence.min_count,
                        "Drop words seen fewer times")
      ->capture_default_str();
  count_cmd->add_option("--max-vocab", max_vocab, "Keep only the most frequent words");
  count_cmd->add_option("--slice", count.slice_percent,
                        "Use only the first PCT percent of tokens")
      ->check(CLI::Range(0.0, 100.0));
  count_cmd->add_flag("--keep-case", keep_case, "Do not lowercase tokens");
  count_cmd->add_option("--out", count.out_path, "Output table TSV (default stdout)");

  // fit
  kca::cli::FitOptions fit;
  MethodFlags fit_flags;
  auto* fit_cmd = app.add_subcommand("fit", "Fit embeddings from a table");
  fit_cmd->add_option("table", fit.table_path, "Contingency table TSV")->required();
  fit_cmd->add_option("--config", fit_flags.config_path, "key=value method config file");
  fit_flags.add(fit_cmd, "--method", "method", "linear|gini|gtest|sgns|kpca_cd|ws");
  fit_flags.add(fit_cmd, "--dim", "dim", "Embedding dimension k");
  fit_flags.add(fit_cmd, "--shift-k", "shift_k", "SGNS shift k");
  fit_flags.add(fit_cmd, "--sw-alpha-row", "sw_alpha_row", "Stop-word weight on rows");
  fit_flags.add(fit_cmd, "--sw-alpha-col", "sw_alpha_col", "Stop-word weight on columns");
  fit_flags.add(fit_cmd, "--ws-alpha", "ws_alpha", "Similarity kernel alpha");
  fit_flags.add(fit_cmd, "--ws-beta", "ws_beta", "Similarity kernel beta");
  fit_flags.add(fit_cmd, "--exponent", "exponent", "Singular value exponent p");
  fit_flags.add(fit_cmd, "--kpca-alpha", "kpca_alpha", "Kernel PCA alpha (< 0)");
  fit_cmd->add_option("--stopwords", fit.stopwords_path, "Stop-word list");
  fit_cmd->add_option("--wordsim", fit.wordsim_paths,
                      "Similarity scores for the ws method (repeatable)");
  fit_cmd->add_option("--out", fit.out_path, "Output embeddings (default stdout)");

  // eval
  kca::cli::EvalOptions eval;
  std::string which = "F";
  auto* eval_cmd = app.add_subcommand("eval", "Word-similarity evaluation");
  eval_cmd->add_option("embeddings", eval.embeddings_path, "Embeddings file")->required();
  eval_cmd->add_option("--wordsim", eval.wordsim_paths, "Dataset (repeatable)")->required();
  eval_cmd->add_option("--which", which, "Point set: F (rows) or G (columns)")
      ->capture_default_str()
      ->check(CLI::IsMember({"F", "G"}));
  eval_cmd->add_option("--out", eval.out_path, "Report TSV (default stdout)");

  // demo-fisher
  kca::cli::DemoOptions demo;
  auto* demo_cmd = app.add_subcommand("demo-fisher", "CA of Fisher's eye/hair colour data");
  demo_cmd->add_option("--out", demo.out_path, "Coordinate CSV")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (count_cmd->parsed()) {
    count.cooccurrence.max_vocab = max_vocab;
    count.cooccurrence.lowercase = !keep_case;
    return kca::cli::cmd_count(count, std::cout, std::cerr);
  }
  if (fit_cmd->parsed()) {
    try {
      fit.method = fit_flags.resolve();
    } catch (const std::exception& e) {
      std::cerr << "fit: " << e.what() << "\n";
      return 2;
    }
    return kca::cli::cmd_fit(fit, std::cout, std::cerr);
  }
  if (eval_cmd->parsed()) {
    eval.which = which == "G" ? kca::PointSet::G : kca::PointSet::F;
    return kca::cli::cmd_eval(eval, std::cout, std::cerr);
  }
  return kca::cli::cmd_demo_fisher(demo, std::cout, std::cerr);
}
