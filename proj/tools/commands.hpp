#pragma once

// Subcommand implementations behind the `kca` executable.  Each returns a
// process exit code; machine-readable output goes to `out`, diagnostics to
// `err`.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "kca/kca.hpp"

namespace kca::cli {

/// Method settings shared by the config file and the command line.  Unset
/// optionals fall back to defaults when the method is built.
struct MethodConfig {
  std::string method = "linear";
  double shift_k = 1.0;
  std::optional<double> sw_alpha_row;
  std::optional<double> sw_alpha_col;
  std::optional<double> ws_alpha;
  double ws_beta = 1.0;
  std::optional<Index> dim;
  double exponent = 1.0;
  double kpca_alpha = -1.0;
};

/// key=value lines; '#' starts a comment.  Keys: method, shift_k,
/// sw_alpha_row, sw_alpha_col, ws_alpha, ws_beta, dim, exponent, kpca_alpha.
/// Unknown keys and malformed values throw std::invalid_argument.
MethodConfig parse_method_config(std::istream& in);
MethodConfig load_method_config(const std::string& path);
/// Applies one key=value setting.
void set_method_option(MethodConfig& cfg, const std::string& key,
                       const std::string& value);
void echo_method_config(const MethodConfig& cfg, std::ostream& err);

struct CountOptions {
  std::string corpus_path;
  CooccurrenceConfig cooccurrence;
  std::optional<double> slice_percent;
  std::optional<std::string> out_path;
};

struct FitOptions {
  std::string table_path;
  MethodConfig method;
  std::optional<std::string> stopwords_path;
  std::vector<std::string> wordsim_paths;
  std::optional<std::string> out_path;
};

struct EvalOptions {
  std::string embeddings_path;
  std::vector<std::string> wordsim_paths;
  PointSet which = PointSet::F;
  std::optional<std::string> out_path;
};

struct DemoOptions {
  std::string out_path = "fisher_ca.csv";
};

int cmd_count(const CountOptions& opts, std::ostream& out, std::ostream& err);
int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err);
int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err);
int cmd_demo_fisher(const DemoOptions& opts, std::ostream& out, std::ostream& err);

/// Builds the method described by `cfg` for table `t`.  Stop-word kernels
/// replace both kernels when a stop-word alpha is set; method "ws" builds
/// similarity kernels from `scores`.
KcaMethod build_method(const MethodConfig& cfg, const ContingencyTable& t,
                       const std::set<std::string>& stopwords,
                       const WordSimDataset* scores);

/// Embeddings file: a header "embeddings<TAB>method_tag<TAB>k<TAB>s_1...s_k",
/// then "row<TAB>label<TAB>v_1...v_k" for each F row and
/// "col<TAB>label<TAB>..." for each G row.
void write_embeddings(const EmbeddingSet& e, std::ostream& out);
void write_embeddings(const EmbeddingSet& e, const std::string& path);
EmbeddingSet read_embeddings(std::istream& in);
EmbeddingSet read_embeddings(const std::string& path);

}  // namespace kca::cli
