#pragma once

// Generators shared by the unit and acceptance suites.  Everything here is
// independent of the library's fitting code paths.

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "kca/kca.hpp"

namespace kca::testing {

inline std::vector<std::string> make_labels(const std::string& prefix, Index n) {
  std::vector<std::string> out;
  for (Index i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

/// Uniform random observations over an nr x nc grid; every category is
/// forced to appear at least once so the table keeps its shape.
inline ObservationList random_observations(std::mt19937_64& rng, Index nr,
                                           Index nc, std::size_t n) {
  std::uniform_int_distribution<Index> row(0, nr - 1);
  std::uniform_int_distribution<Index> col(0, nc - 1);
  std::vector<Observation> pairs;
  const Index cover = std::max(nr, nc);
  for (Index i = 0; i < cover && pairs.size() < n; ++i) {
    pairs.push_back({"r" + std::to_string(i % nr), "c" + std::to_string(i % nc)});
  }
  while (pairs.size() < n) {
    pairs.push_back({"r" + std::to_string(row(rng)), "c" + std::to_string(col(rng))});
  }
  std::shuffle(pairs.begin(), pairs.end(), rng);
  return ObservationList(std::move(pairs));
}

/// Random integer table with some zero cells but positive marginals.
inline ContingencyTable random_table(std::mt19937_64& rng, Index nr, Index nc,
                                     int max_count = 9, double zero_rate = 0.2) {
  std::uniform_int_distribution<int> count(1, max_count);
  std::bernoulli_distribution zero(zero_rate);
  Matrix n(nr, nc);
  for (Index i = 0; i < nr; ++i) {
    for (Index j = 0; j < nc; ++j) n(i, j) = zero(rng) ? 0.0 : count(rng);
  }
  for (Index i = 0; i < nr; ++i) {
    if (n.row(i).sum() == 0.0) n(i, i % nc) = 1.0;
  }
  for (Index j = 0; j < nc; ++j) {
    if (n.col(j).sum() == 0.0) n(j % nr, j) = 1.0;
  }
  return ContingencyTable(n, make_labels("r", nr), make_labels("c", nc));
}

inline Matrix gaussian_matrix(std::mt19937_64& rng, Index rows, Index cols) {
  std::normal_distribution<double> g(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = g(rng);
  }
  return m;
}

/// rows x cols with orthonormal columns (rows >= cols) or orthonormal rows
/// (rows < cols), from a Householder QR of a Gaussian matrix.
inline Matrix random_orthogonal(std::mt19937_64& rng, Index rows, Index cols) {
  const bool tall = rows >= cols;
  const Index big = tall ? rows : cols;
  const Index small = tall ? cols : rows;
  Eigen::HouseholderQR<Matrix> qr(gaussian_matrix(rng, big, small));
  Matrix q = qr.householderQ() * Matrix::Identity(big, small);
  return tall ? q : Matrix(q.transpose());
}

inline Matrix random_spd(std::mt19937_64& rng, Index n) {
  const Matrix a = gaussian_matrix(rng, n, n);
  return a * a.transpose() + static_cast<double>(n) * Matrix::Identity(n, n);
}

/// Expands a table of integer counts into one observation per unit count.
inline std::vector<Observation> expand_table(const ContingencyTable& t) {
  std::vector<Observation> pairs;
  for (Index i = 0; i < t.rows(); ++i) {
    for (Index j = 0; j < t.cols(); ++j) {
      const auto c = static_cast<std::size_t>(t.counts()(i, j));
      for (std::size_t k = 0; k < c; ++k) {
        pairs.push_back({t.row_labels()[i], t.col_labels()[j]});
      }
    }
  }
  return pairs;
}

/// Classical likelihood-ratio statistic 2 sum O log(O / E), E = r c / n.
inline double g_statistic(const ContingencyTable& t) {
  double g = 0.0;
  for (Index i = 0; i < t.rows(); ++i) {
    for (Index j = 0; j < t.cols(); ++j) {
      const double o = t.counts()(i, j);
      if (o == 0.0) continue;
      const double e = t.row_marginals()(i) * t.col_marginals()(j) / t.total();
      g += o * std::log(o / e);
    }
  }
  return 2.0 * g;
}

/// Pairwise cosine matrix of the rows of `x`.
inline Matrix cosine_matrix(const Matrix& x) {
  Matrix out(x.rows(), x.rows());
  for (Index i = 0; i < x.rows(); ++i) {
    for (Index j = 0; j < x.rows(); ++j) {
      out(i, j) = x.row(i).dot(x.row(j)) / (x.row(i).norm() * x.row(j).norm());
    }
  }
  return out;
}

inline double max_abs_diff(const Matrix& a, const Matrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace kca::testing
