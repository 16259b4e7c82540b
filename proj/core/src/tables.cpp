#include "kca/tables.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kca {

namespace {

constexpr double kMaxExactInteger = 9007199254740992.0;  // 2^53

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& item : items) {
    if (!out.empty()) out += ", ";
    out += item;
  }
  return out;
}

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  while (true) {
    const std::size_t tab = line.find('\t', start);
    if (tab == std::string::npos) {
      cells.push_back(line.substr(start));
      break;
    }
    cells.push_back(line.substr(start, tab - start));
    start = tab + 1;
  }
  return cells;
}

Index index_of(const std::unordered_map<std::string, Index>& lookup,
               const std::string& key, const char* side) {
  const auto it = lookup.find(key);
  if (it == lookup.end()) {
    throw std::invalid_argument(std::string("observed ") + side +
                                " category '" + key +
                                "' missing from the label order");
  }
  return it->second;
}

}  // namespace

Vector one_hot(Index i, Index m) {
  if (m <= 0 || i < 0 || i >= m) {
    std::ostringstream msg;
    msg << "one_hot: index " << i << " out of range for dimension " << m;
    throw std::out_of_range(msg.str());
  }
  Vector e = Vector::Zero(m);
  e(i) = 1.0;
  return e;
}

ObservationList::ObservationList(std::vector<Observation> pairs)
    : pairs_(std::move(pairs)) {
  if (pairs_.empty()) {
    throw std::invalid_argument("observation list must be nonempty");
  }
  std::unordered_map<std::string, Index> rows;
  std::unordered_map<std::string, Index> cols;
  row_idx_.reserve(pairs_.size());
  col_idx_.reserve(pairs_.size());
  for (const auto& [row, col] : pairs_) {
    auto [rit, rnew] = rows.try_emplace(row, static_cast<Index>(rows.size()));
    if (rnew) row_cats_.push_back(row);
    auto [cit, cnew] = cols.try_emplace(col, static_cast<Index>(cols.size()));
    if (cnew) col_cats_.push_back(col);
    row_idx_.push_back(rit->second);
    col_idx_.push_back(cit->second);
  }
}

Matrix ObservationList::row_indicator() const {
  Matrix h = Matrix::Zero(static_cast<Index>(size()),
                          static_cast<Index>(row_cats_.size()));
  for (std::size_t b = 0; b < size(); ++b) {
    h(static_cast<Index>(b), row_idx_[b]) = 1.0;
  }
  return h;
}

Matrix ObservationList::col_indicator() const {
  Matrix h = Matrix::Zero(static_cast<Index>(size()),
                          static_cast<Index>(col_cats_.size()));
  for (std::size_t b = 0; b < size(); ++b) {
    h(static_cast<Index>(b), col_idx_[b]) = 1.0;
  }
  return h;
}

ContingencyTable::ContingencyTable(Matrix counts,
                                   std::vector<std::string> row_labels,
                                   std::vector<std::string> col_labels) {
  if (static_cast<Index>(row_labels.size()) != counts.rows() ||
      static_cast<Index>(col_labels.size()) != counts.cols()) {
    std::ostringstream msg;
    msg << "contingency table: " << counts.rows() << "x" << counts.cols()
        << " counts with " << row_labels.size() << " row and "
        << col_labels.size() << " column labels";
    throw std::invalid_argument(msg.str());
  }
  require_finite(counts, "contingency table");
  for (Index j = 0; j < counts.cols(); ++j) {
    for (Index i = 0; i < counts.rows(); ++i) {
      const double v = counts(i, j);
      if (v < 0.0) {
        throw std::invalid_argument("contingency table has a negative cell at (" +
                                    row_labels[i] + ", " + col_labels[j] + ")");
      }
      if (v != std::floor(v) || v >= kMaxExactInteger) integral_ = false;
    }
  }

  const Vector r_all = counts.rowwise().sum();
  const Vector c_all = counts.colwise().sum().transpose();
  std::vector<Index> keep_rows;
  std::vector<Index> keep_cols;
  for (Index i = 0; i < counts.rows(); ++i) {
    if (r_all(i) > 0.0) {
      keep_rows.push_back(i);
    } else {
      dropped_rows_.push_back(row_labels[i]);
    }
  }
  for (Index j = 0; j < counts.cols(); ++j) {
    if (c_all(j) > 0.0) {
      keep_cols.push_back(j);
    } else {
      dropped_cols_.push_back(col_labels[j]);
    }
  }
  if (keep_rows.empty() || keep_cols.empty()) {
    throw std::invalid_argument("contingency table has no positive counts");
  }
  if (!dropped_rows_.empty()) {
    std::clog << "warning: dropping zero-marginal rows: "
              << join(dropped_rows_) << "\n";
  }
  if (!dropped_cols_.empty()) {
    std::clog << "warning: dropping zero-marginal columns: "
              << join(dropped_cols_) << "\n";
  }

  if (dropped_rows_.empty() && dropped_cols_.empty()) {
    counts_ = std::move(counts);
    row_labels_ = std::move(row_labels);
    col_labels_ = std::move(col_labels);
  } else {
    const auto nr = static_cast<Index>(keep_rows.size());
    const auto nc = static_cast<Index>(keep_cols.size());
    counts_.resize(nr, nc);
    for (Index i = 0; i < nr; ++i) {
      row_labels_.push_back(row_labels[keep_rows[i]]);
      for (Index j = 0; j < nc; ++j) {
        counts_(i, j) = counts(keep_rows[i], keep_cols[j]);
      }
    }
    for (Index j = 0; j < nc; ++j) col_labels_.push_back(col_labels[keep_cols[j]]);
  }

  r_ = counts_.rowwise().sum();
  c_ = counts_.colwise().sum().transpose();
  n_ = r_.sum();
}

ContingencyTable ContingencyTable::transposed() const {
  return ContingencyTable(counts_.transpose(), col_labels_, row_labels_);
}

ContingencyTable ContingencyTable::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("table scale factor must be positive");
  }
  return ContingencyTable(counts_ * factor, row_labels_, col_labels_);
}

ContingencyTable contingency_from_observations(const ObservationList& obs) {
  return contingency_from_observations(obs, obs.row_categories(),
                                       obs.col_categories());
}

ContingencyTable contingency_from_observations(
    const ObservationList& obs, const std::vector<std::string>& row_order,
    const std::vector<std::string>& col_order) {
  std::unordered_map<std::string, Index> rows;
  std::unordered_map<std::string, Index> cols;
  for (std::size_t i = 0; i < row_order.size(); ++i) {
    rows.emplace(row_order[i], static_cast<Index>(i));
  }
  for (std::size_t j = 0; j < col_order.size(); ++j) {
    cols.emplace(col_order[j], static_cast<Index>(j));
  }
  Matrix counts = Matrix::Zero(static_cast<Index>(row_order.size()),
                               static_cast<Index>(col_order.size()));
  for (const auto& [row, col] : obs.pairs()) {
    counts(index_of(rows, row, "row"), index_of(cols, col, "column")) += 1.0;
  }
  return ContingencyTable(std::move(counts), row_order, col_order);
}

Matrix residual_matrix(const ContingencyTable& t) {
  const double n = t.total();
  return t.counts() / n -
         (t.row_marginals() * t.col_marginals().transpose()) / (n * n);
}

std::string format_real(double value) {
  char buf[64];
  const auto result = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, result.ptr);
}

double parse_real(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  const auto result = std::from_chars(begin, end, value);
  if (result.ec != std::errc() || result.ptr != end || begin == end) {
    throw std::invalid_argument("not a number: '" + text + "'");
  }
  return value;
}

void write_table_tsv(const ContingencyTable& t, std::ostream& out) {
  for (const auto& label : t.col_labels()) out << '\t' << label;
  out << '\n';
  const Matrix& n = t.counts();
  for (Index i = 0; i < t.rows(); ++i) {
    out << t.row_labels()[i];
    for (Index j = 0; j < t.cols(); ++j) out << '\t' << format_real(n(i, j));
    out << '\n';
  }
}

void write_table_tsv(const ContingencyTable& t, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  write_table_tsv(t, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

ContingencyTable read_table_tsv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("table TSV is empty");
  }
  if (!line.empty() && line.back() == '\r') line.pop_back();
  std::vector<std::string> header = split_tabs(line);
  std::vector<std::string> col_labels(header.begin() + 1, header.end());
  if (col_labels.empty()) {
    throw std::invalid_argument("table TSV header has no column labels");
  }

  std::vector<std::string> row_labels;
  std::vector<double> values;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::vector<std::string> cells = split_tabs(line);
    if (cells.size() != col_labels.size() + 1) {
      std::ostringstream msg;
      msg << "table TSV line " << line_no << ": expected "
          << col_labels.size() + 1 << " cells, got " << cells.size();
      throw std::invalid_argument(msg.str());
    }
    row_labels.push_back(cells[0]);
    for (std::size_t j = 1; j < cells.size(); ++j) {
      try {
        values.push_back(parse_real(cells[j]));
      } catch (const std::invalid_argument& e) {
        std::ostringstream msg;
        msg << "table TSV line " << line_no << ": " << e.what();
        throw std::invalid_argument(msg.str());
      }
    }
  }
  if (row_labels.empty()) {
    throw std::invalid_argument("table TSV has no data rows");
  }
  const auto nr = static_cast<Index>(row_labels.size());
  const auto nc = static_cast<Index>(col_labels.size());
  Matrix counts(nr, nc);
  for (Index i = 0; i < nr; ++i) {
    for (Index j = 0; j < nc; ++j) counts(i, j) = values[i * nc + j];
  }
  return ContingencyTable(std::move(counts), std::move(row_labels),
                          std::move(col_labels));
}

ContingencyTable read_table_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open table: " + path);
  return read_table_tsv(in);
}

ContingencyTable fisher_table() {
  Matrix n(4, 5);
  n << 326, 38, 241, 110, 3,
       688, 116, 584, 188, 4,
       343, 84, 909, 412, 26,
       98, 48, 403, 681, 85;
  return ContingencyTable(std::move(n), {"blue", "light", "medium", "dark"},
                          {"fair", "red", "medium", "dark", "black"});
}

}  // namespace kca
