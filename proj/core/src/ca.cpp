#include "kca/ca.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace kca {

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::vector<std::string> parse_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  fields.push_back(std::move(cur));
  return fields;
}

void write_points(std::ostream& out, const char* set, const Matrix& coords,
                  const std::vector<std::string>& labels) {
  for (Index i = 0; i < coords.rows(); ++i) {
    out << set << ',' << csv_field(labels[i]);
    for (Index j = 0; j < coords.cols(); ++j) {
      out << ',' << format_real(coords(i, j));
    }
    out << '\n';
  }
}

}  // namespace

Decomposition linear_ca_decomposition(const ContingencyTable& t) {
  return metric_gsvd(residual_matrix(t), Metric::diagonal(t.row_marginals()),
                     Metric::diagonal(t.col_marginals()));
}

Index default_ca_dimension(const ContingencyTable& t) {
  return std::max<Index>(1, std::min(t.rows(), t.cols()) - 1);
}

EmbeddingSet fit_linear_ca(const ContingencyTable& t, Index k) {
  const Index max_k = std::min(t.rows(), t.cols());
  if (k < 1 || k > max_k) {
    std::ostringstream msg;
    msg << "dimension k = " << k << " outside [1, " << max_k << "]";
    throw std::invalid_argument(msg.str());
  }
  const Decomposition d = linear_ca_decomposition(t);

  EmbeddingSet e;
  e.row_axes = d.U.leftCols(k);
  e.col_axes = d.V.leftCols(k);
  e.singular_values = d.S.head(k);
  const auto s = e.singular_values.asDiagonal();
  e.F = d.metric_row.apply_left(-1.0, e.row_axes) * s;
  e.G = d.metric_col.apply_left(-1.0, e.col_axes) * s;
  e.row_labels = t.row_labels();
  e.col_labels = t.col_labels();
  e.method_tag = "linear_ca";
  return e;
}

void export_coordinates(const EmbeddingSet& e, std::ostream& out) {
  if (e.F.cols() != e.G.cols()) {
    throw std::invalid_argument("F and G have different dimensions");
  }
  out << "point_set,label";
  for (Index j = 0; j < e.dim(); ++j) out << ",dim_" << (j + 1);
  out << '\n';
  write_points(out, "row", e.F, e.row_labels);
  write_points(out, "col", e.G, e.col_labels);
}

void export_coordinates(const EmbeddingSet& e, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  export_coordinates(e, out);
  if (!out) throw std::runtime_error("write failed: " + path);
}

EmbeddingSet import_coordinates(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("coordinate CSV is empty");
  }
  const std::vector<std::string> header = parse_csv_line(line);
  if (header.size() < 2 || header[0] != "point_set" || header[1] != "label") {
    throw std::invalid_argument("coordinate CSV header must start with point_set,label");
  }
  const auto k = static_cast<Index>(header.size() - 2);

  std::vector<std::vector<double>> rows;
  std::vector<std::vector<double>> cols;
  EmbeddingSet e;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const std::vector<std::string> fields = parse_csv_line(line);
    if (static_cast<Index>(fields.size()) != k + 2) {
      std::ostringstream msg;
      msg << "coordinate CSV line " << line_no << ": expected " << k + 2
          << " fields, got " << fields.size();
      throw std::invalid_argument(msg.str());
    }
    std::vector<double> values;
    for (std::size_t j = 2; j < fields.size(); ++j) {
      values.push_back(parse_real(fields[j]));
    }
    if (fields[0] == "row") {
      e.row_labels.push_back(fields[1]);
      rows.push_back(std::move(values));
    } else if (fields[0] == "col") {
      e.col_labels.push_back(fields[1]);
      cols.push_back(std::move(values));
    } else {
      std::ostringstream msg;
      msg << "coordinate CSV line " << line_no << ": unknown point set '"
          << fields[0] << "'";
      throw std::invalid_argument(msg.str());
    }
  }
  auto to_matrix = [k](const std::vector<std::vector<double>>& data) {
    Matrix m(static_cast<Index>(data.size()), k);
    for (std::size_t i = 0; i < data.size(); ++i) {
      for (Index j = 0; j < k; ++j) m(static_cast<Index>(i), j) = data[i][j];
    }
    return m;
  };
  e.F = to_matrix(rows);
  e.G = to_matrix(cols);
  return e;
}

EmbeddingSet import_coordinates(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open coordinates: " + path);
  return import_coordinates(in);
}

}  // namespace kca
