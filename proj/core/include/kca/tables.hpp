#pragma once

// Two-way contingency tables: one-hot encodings, construction from paired
// categorical observations, marginals, the centered frequency matrix, and the
// TSV exchange format.

#include "kca/linalg.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace kca {

enum class Axis { Row, Col };

/// Unit basis vector e_i of length m.  Throws std::out_of_range.
Vector one_hot(Index i, Index m);

struct Observation {
  std::string row;
  std::string col;
};

/// A nonempty list of (row category, column category) observations.
/// Category order on each side is order of first appearance.
class ObservationList {
 public:
  explicit ObservationList(std::vector<Observation> pairs);

  std::size_t size() const { return pairs_.size(); }
  const std::vector<Observation>& pairs() const { return pairs_; }
  const std::vector<std::string>& row_categories() const { return row_cats_; }
  const std::vector<std::string>& col_categories() const { return col_cats_; }
  /// Category index of observation b on each side.
  const std::vector<Index>& row_index() const { return row_idx_; }
  const std::vector<Index>& col_index() const { return col_idx_; }

  /// n x n^r indicator matrix whose rows are one-hot encodings.
  Matrix row_indicator() const;
  Matrix col_indicator() const;

 private:
  std::vector<Observation> pairs_;
  std::vector<std::string> row_cats_;
  std::vector<std::string> col_cats_;
  std::vector<Index> row_idx_;
  std::vector<Index> col_idx_;
};

/// Nonnegative count (or weight) matrix with labels and marginals.  Rows and
/// columns whose marginal is zero are dropped on construction, with a warning
/// on std::clog; every stored marginal is strictly positive.
class ContingencyTable {
 public:
  ContingencyTable(Matrix counts, std::vector<std::string> row_labels,
                   std::vector<std::string> col_labels);

  const Matrix& counts() const { return counts_; }
  const std::vector<std::string>& row_labels() const { return row_labels_; }
  const std::vector<std::string>& col_labels() const { return col_labels_; }
  const std::vector<std::string>& labels(Axis axis) const {
    return axis == Axis::Row ? row_labels_ : col_labels_;
  }
  /// r = N 1
  const Vector& row_marginals() const { return r_; }
  /// c = N^T 1
  const Vector& col_marginals() const { return c_; }
  const Vector& marginals(Axis axis) const {
    return axis == Axis::Row ? r_ : c_;
  }
  double total() const { return n_; }
  Index rows() const { return counts_.rows(); }
  Index cols() const { return counts_.cols(); }
  /// True when every count is a nonnegative integer below 2^53.
  bool is_integral() const { return integral_; }

  const std::vector<std::string>& dropped_rows() const { return dropped_rows_; }
  const std::vector<std::string>& dropped_cols() const { return dropped_cols_; }

  ContingencyTable transposed() const;
  ContingencyTable scaled(double factor) const;

 private:
  Matrix counts_;
  std::vector<std::string> row_labels_;
  std::vector<std::string> col_labels_;
  Vector r_;
  Vector c_;
  double n_ = 0.0;
  bool integral_ = true;
  std::vector<std::string> dropped_rows_;
  std::vector<std::string> dropped_cols_;
};

/// N = H^r^T H^c: counts[i][j] is the number of observations with row
/// category i and column category j.  Categories are ordered by first
/// appearance unless explicit label orders are given, in which case every
/// observed category must be listed.
ContingencyTable contingency_from_observations(const ObservationList& obs);
ContingencyTable contingency_from_observations(
    const ObservationList& obs, const std::vector<std::string>& row_order,
    const std::vector<std::string>& col_order);

/// Xi = N/n - r c^T / n^2.  Row and column sums vanish.
Matrix residual_matrix(const ContingencyTable& t);

/// TSV: first row holds the column labels (after an empty corner cell),
/// first column the row labels.  Integer counts are written without a
/// fractional part; other values with 17 significant digits so that reading
/// back reproduces every double bit-exactly.
void write_table_tsv(const ContingencyTable& t, std::ostream& out);
void write_table_tsv(const ContingencyTable& t, const std::string& path);
ContingencyTable read_table_tsv(std::istream& in);
ContingencyTable read_table_tsv(const std::string& path);

/// Eye colour (rows) by hair colour (columns) for 5387 people in Caithness.
ContingencyTable fisher_table();

/// Shortest decimal text that parses back to exactly `value`.
std::string format_real(double value);
/// Strict full-string parse; throws std::invalid_argument.
double parse_real(const std::string& text);

}  // namespace kca
