#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace kca::cli {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_option_real(const std::string& key, const std::string& value) {
  try {
    return parse_real(value);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("config: " + key + " expects a number, got '" +
                                value + "'");
  }
}

std::string join_reals(const Vector& v, char sep) {
  std::string out;
  for (Index i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += format_real(v(i));
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const auto tab = line.find('\t', start);
    cells.push_back(line.substr(start, tab - start));
    if (tab == std::string::npos) break;
    start = tab + 1;
  }
  return cells;
}

WordSimDataset merge_datasets(const std::vector<std::string>& paths) {
  WordSimDataset merged;
  for (const auto& path : paths) {
    WordSimDataset d = load_wordsim(path);
    merged.pairs.insert(merged.pairs.end(), d.pairs.begin(), d.pairs.end());
  }
  merged.name = "training-scores";
  return merged;
}

}  // namespace

void set_method_option(MethodConfig& cfg, const std::string& key,
                       const std::string& value) {
  if (key == "method") {
    cfg.method = value;
  } else if (key == "shift_k") {
    cfg.shift_k = parse_option_real(key, value);
  } else if (key == "sw_alpha_row") {
    cfg.sw_alpha_row = parse_option_real(key, value);
  } else if (key == "sw_alpha_col") {
    cfg.sw_alpha_col = parse_option_real(key, value);
  } else if (key == "ws_alpha") {
    cfg.ws_alpha = parse_option_real(key, value);
  } else if (key == "ws_beta") {
    cfg.ws_beta = parse_option_real(key, value);
  } else if (key == "dim") {
    const double d = parse_option_real(key, value);
    if (d < 1 || d != static_cast<double>(static_cast<Index>(d))) {
      throw std::invalid_argument("config: dim must be a positive integer");
    }
    cfg.dim = static_cast<Index>(d);
  } else if (key == "exponent") {
    cfg.exponent = parse_option_real(key, value);
  } else if (key == "kpca_alpha") {
    cfg.kpca_alpha = parse_option_real(key, value);
  } else {
    throw std::invalid_argument("config: unknown key '" + key + "'");
  }
}

MethodConfig parse_method_config(std::istream& in) {
  MethodConfig cfg;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    }
    set_method_option(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

MethodConfig load_method_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config: " + path);
  return parse_method_config(in);
}

void echo_method_config(const MethodConfig& cfg, std::ostream& err) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_real(*v) : std::string("unset");
  };
  err << "method=" << cfg.method << " shift_k=" << format_real(cfg.shift_k)
      << " sw_alpha_row=" << opt(cfg.sw_alpha_row)
      << " sw_alpha_col=" << opt(cfg.sw_alpha_col)
      << " ws_alpha=" << opt(cfg.ws_alpha)
      << " ws_beta=" << format_real(cfg.ws_beta)
      << " dim=" << (cfg.dim ? std::to_string(*cfg.dim) : std::string("auto"))
      << " exponent=" << format_real(cfg.exponent)
      << " kpca_alpha=" << format_real(cfg.kpca_alpha) << "\n";
}

KcaMethod build_method(const MethodConfig& cfg, const ContingencyTable& t,
                       const std::set<std::string>& stopwords,
                       const WordSimDataset* scores) {
  KcaMethod m;
  if (cfg.method == "linear") {
    m = KcaMethod::linear_ca();
  } else if (cfg.method == "gini") {
    m = KcaMethod::gini();
  } else if (cfg.method == "gtest") {
    m = KcaMethod::gtest();
  } else if (cfg.method == "sgns") {
    m = KcaMethod::sgns(cfg.shift_k);
  } else if (cfg.method == "kpca_cd") {
    m = KcaMethod::kpca_cd(cfg.kpca_alpha);
  } else if (cfg.method == "ws") {
    if (scores == nullptr || scores->pairs.empty()) {
      throw std::invalid_argument("method ws needs similarity scores (--wordsim)");
    }
    const double alpha = cfg.ws_alpha.value_or(default_ws_alpha(*scores));
    m = KcaMethod::linear_ca();
    m.row_kernel = KernelSpec::similarity(
        similarity_gamma(t.row_labels(), *scores, alpha, cfg.ws_beta));
    m.col_kernel = KernelSpec::similarity(
        similarity_gamma(t.col_labels(), *scores, alpha, cfg.ws_beta));
  } else {
    throw std::invalid_argument("unknown method '" + cfg.method +
                                "' (expected linear, gini, gtest, sgns, kpca_cd or ws)");
  }

  if (cfg.sw_alpha_row || cfg.sw_alpha_col) {
    if (cfg.method == "ws") {
      throw std::invalid_argument("stop-word and similarity kernels cannot be combined");
    }
    if (stopwords.empty()) {
      throw std::invalid_argument("a stop-word alpha needs a stop-word list (--stopwords)");
    }
    if (cfg.sw_alpha_row) m.row_kernel = KernelSpec::stopword(*cfg.sw_alpha_row, stopwords);
    if (cfg.sw_alpha_col) m.col_kernel = KernelSpec::stopword(*cfg.sw_alpha_col, stopwords);
  }
  m.embedding_exponent = cfg.exponent;
  return m;
}

void write_embeddings(const EmbeddingSet& e, std::ostream& out) {
  out << "embeddings\t" << e.method_tag << '\t' << e.dim();
  for (Index j = 0; j < e.singular_values.size(); ++j) {
    out << '\t' << format_real(e.singular_values(j));
  }
  out << '\n';
  auto block = [&out](const char* set, const Matrix& m,
                      const std::vector<std::string>& labels) {
    for (Index i = 0; i < m.rows(); ++i) {
      out << set << '\t' << labels[i];
      for (Index j = 0; j < m.cols(); ++j) out << '\t' << format_real(m(i, j));
      out << '\n';
    }
  };
  block("row", e.F, e.row_labels);
  block("col", e.G, e.col_labels);
}

void write_embeddings(const EmbeddingSet& e, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_embeddings(e, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

EmbeddingSet read_embeddings(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw std::invalid_argument("embeddings file is empty");
  std::vector<std::string> header = split_tabs(line);
  if (header.size() < 3 || header[0] != "embeddings") {
    throw std::invalid_argument("not an embeddings file (bad header)");
  }
  EmbeddingSet e;
  e.method_tag = header[1];
  const auto k = static_cast<Index>(parse_real(header[2]));
  if (k < 0 || static_cast<Index>(header.size()) != 3 + k) {
    throw std::invalid_argument("embeddings header: singular value count does not match k");
  }
  e.singular_values.resize(k);
  for (Index j = 0; j < k; ++j) e.singular_values(j) = parse_real(header[3 + j]);

  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> cols;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_tabs(line);
    if (static_cast<Index>(cells.size()) != 2 + k) {
      throw std::invalid_argument("embeddings line " + std::to_string(line_no) +
                                  ": wrong number of fields");
    }
    std::vector<double> values;
    for (Index j = 0; j < k; ++j) values.push_back(parse_real(cells[2 + j]));
    if (cells[0] == "row") {
      e.row_labels.push_back(cells[1]);
      rows.push_back(std::move(values));
    } else if (cells[0] == "col") {
      e.col_labels.push_back(cells[1]);
      cols.push_back(std::move(values));
    } else {
      throw std::invalid_argument("embeddings line " + std::to_string(line_no) +
                                  ": unknown point set '" + cells[0] + "'");
    }
  }
  auto fill = [k](const std::vector<std::vector<double>>& data) {
    Matrix m(static_cast<Index>(data.size()), k);
    for (std::size_t i = 0; i < data.size(); ++i) {
      for (Index j = 0; j < k; ++j) m(static_cast<Index>(i), j) = data[i][j];
    }
    return m;
  };
  e.F = fill(rows);
  e.G = fill(cols);
  return e;
}

EmbeddingSet read_embeddings(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open embeddings: " + path);
  return read_embeddings(in);
}

int cmd_count(const CountOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    std::vector<std::string> tokens =
        read_corpus(opts.corpus_path, opts.cooccurrence.lowercase);
    const std::size_t total = tokens.size();
    if (opts.slice_percent) tokens = slice_tokens(std::move(tokens), *opts.slice_percent);
    err << "tokens=" << tokens.size() << "/" << total
        << " window=" << opts.cooccurrence.window
        << " min_count=" << opts.cooccurrence.min_count << " max_vocab="
        << (opts.cooccurrence.max_vocab ? std::to_string(*opts.cooccurrence.max_vocab)
                                        : std::string("none"))
        << "\n";
    const ContingencyTable t = count_cooccurrences(tokens, opts.cooccurrence);
    err << "vocabulary=" << t.rows() << " pairs=" << format_real(t.total()) << "\n";
    if (opts.out_path) {
      write_table_tsv(t, *opts.out_path);
    } else {
      write_table_tsv(t, out);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "count: " << e.what() << "\n";
    return 1;
  }
}

int cmd_fit(const FitOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    echo_method_config(opts.method, err);
    const ContingencyTable t = read_table_tsv(opts.table_path);
    std::set<std::string> stopwords;
    if (opts.stopwords_path) stopwords = load_stopwords(*opts.stopwords_path);
    std::optional<WordSimDataset> scores;
    if (!opts.wordsim_paths.empty()) scores = merge_datasets(opts.wordsim_paths);

    const Index k = opts.method.dim.value_or(
        std::min<Index>(100, default_ca_dimension(t)));
    err << "table=" << t.rows() << "x" << t.cols() << " dim=" << k << "\n";

    const KcaMethod method =
        build_method(opts.method, t, stopwords, scores ? &*scores : nullptr);
    const auto start = std::chrono::steady_clock::now();
    const bool plain_linear = opts.method.method == "linear" &&
                              !opts.method.sw_alpha_row && !opts.method.sw_alpha_col &&
                              opts.method.exponent == 1.0;
    const EmbeddingSet e = plain_linear ? fit_linear_ca(t, k) : fit_kca(t, method, k);
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    err << "fit " << e.method_tag << " in " << took.count() << " s\n";

    if (opts.out_path) {
      write_embeddings(e, *opts.out_path);
    } else {
      write_embeddings(e, out);
    }
    return 0;
  } catch (const std::exception& e) {
    err << "fit: " << e.what() << "\n";
    return 1;
  }
}

int cmd_eval(const EvalOptions& opts, std::ostream& out, std::ostream& err) {
  EmbeddingSet e;
  try {
    e = read_embeddings(opts.embeddings_path);
  } catch (const std::exception& ex) {
    err << "eval: " << ex.what() << "\n";
    return 1;
  }
  if (opts.wordsim_paths.empty()) {
    err << "eval: no word-similarity datasets given\n";
    return 1;
  }
  const std::string method =
      e.method_tag + (opts.which == PointSet::F ? ":F" : ":G");

  struct Row {
    std::string dataset;
    std::string text;
    bool ok;
  };
  std::vector<Row> rows;
  for (const auto& path : opts.wordsim_paths) {
    const std::string name = std::filesystem::path(path).stem().string();
    std::ostringstream text;
    try {
      const WordSimDataset d = load_wordsim(path);
      try {
        write_report_row(text, method, evaluate(e, opts.which, d));
        rows.push_back({name, text.str(), true});
      } catch (const std::exception& ex) {
        err << "eval: " << name << ": " << ex.what() << "\n";
        text << method << '\t' << name << "\terror\t0\t" << d.size() << '\n';
        rows.push_back({name, text.str(), false});
      }
    } catch (const std::exception& ex) {
      err << "eval: " << name << ": " << ex.what() << "\n";
      text << method << '\t' << name << "\terror\t0\t0\n";
      rows.push_back({name, text.str(), false});
    }
  }
  std::stable_sort(rows.begin(), rows.end(),
                   [](const Row& a, const Row& b) { return a.dataset < b.dataset; });

  std::ofstream file;
  std::ostream* sink = &out;
  if (opts.out_path) {
    file.open(*opts.out_path);
    if (!file) {
      err << "eval: cannot open for writing: " << *opts.out_path << "\n";
      return 1;
    }
    sink = &file;
  }
  bool all_ok = true;
  for (const auto& row : rows) {
    *sink << row.text;
    all_ok = all_ok && row.ok;
  }
  return all_ok ? 0 : 1;
}

int cmd_demo_fisher(const DemoOptions& opts, std::ostream& out, std::ostream& err) {
  try {
    const ContingencyTable t = fisher_table();
    const RotatedCovariance rc = rotated_covariance(t);
    const Index k = default_ca_dimension(t) >= 2 ? 2 : 1;
    const EmbeddingSet e = fit_linear_ca(t, k);

    out << "n\t" << format_real(t.total()) << '\n';
    out << "r\t" << join_reals(t.row_marginals(), ',') << '\n';
    out << "c\t" << join_reals(t.col_marginals(), ',') << '\n';
    out << "gini_eye\t" << format_real(gini_variance(t, Axis::Row)) << '\n';
    out << "gini_hair\t" << format_real(gini_variance(t, Axis::Col)) << '\n';
    out << "rotated_covariance\t" << format_real(rc.value) << '\n';
    out << "ca_singular_values\t" << join_reals(e.singular_values, ',') << '\n';
    out << "coordinates\t" << opts.out_path << '\n';
    export_coordinates(e, opts.out_path);
    return 0;
  } catch (const std::exception& ex) {
    err << "demo-fisher: " << ex.what() << "\n";
    return 1;
  }
}

}  // namespace kca::cli
