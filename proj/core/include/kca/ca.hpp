#pragma once

// Linear correspondence analysis and the coordinate container shared by
// every fitting method.

#include "kca/linalg.hpp"
#include "kca/tables.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace kca {

/// Row coordinates F (n^r x k) and column coordinates G (n^c x k) of one fit.
struct EmbeddingSet {
  Matrix F;
  Matrix G;
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  Vector singular_values;
  std::string method_tag;
  /// Metric-orthonormal factors the coordinates were derived from, truncated
  /// to k columns (U-breve and V-breve for linear CA).  Empty when the set was
  /// read back from disk.
  Matrix row_axes;
  Matrix col_axes;

  Index dim() const { return F.cols(); }
};

/// GSVD of Xi under metrics (D(r), D(c)), truncated to the leading k
/// triplets:
///   F = D(r)^{-1} U S,  G = D(c)^{-1} V S.
/// Requires 1 <= k <= min(n^r, n^c).
EmbeddingSet fit_linear_ca(const ContingencyTable& t, Index k);

/// Full-rank decomposition behind fit_linear_ca.
Decomposition linear_ca_decomposition(const ContingencyTable& t);

/// min(n^r, n^c) - 1, floored at 1.
Index default_ca_dimension(const ContingencyTable& t);

/// CSV with header "point_set,label,dim_1,...,dim_k" followed by one line
/// per row point ("row") and per column point ("col").  Values use the
/// shortest round-trip decimal form.
void export_coordinates(const EmbeddingSet& e, std::ostream& out);
void export_coordinates(const EmbeddingSet& e, const std::string& path);

/// Reads a file written by export_coordinates.  Singular values and method
/// tag are not part of the CSV and come back empty.
EmbeddingSet import_coordinates(std::istream& in);
EmbeddingSet import_coordinates(const std::string& path);

}  // namespace kca
