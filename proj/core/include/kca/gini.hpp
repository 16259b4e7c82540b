#pragma once

// Gini-index variance of a categorical variable and its two-variable
// extension, the rotated covariance max_R 1/2 tr(R^T Xi) over orthogonal R.

#include "kca/linalg.hpp"
#include "kca/tables.hpp"

#include <cstdint>

namespace kca {

/// sigma^2(x) = (1 - sum_i p_i^2) / 2 with p_i = marginal_i / n.  This is the
/// closed form of (1 / 2n^2) * #{(a, b) : x(a) != x(b)}.
double gini_variance(const ContingencyTable& t, Axis axis);

/// Number of ordered observation pairs (a, b) whose category on `axis`
/// differs: n^2 - sum_i m_i^2, in exact integer arithmetic.  Requires an
/// integral table.
std::uint64_t gini_disagreeing_pairs(const ContingencyTable& t, Axis axis);

struct RotatedCovariance {
  /// sigma^2(x^r, x^c) = 1/2 tr(R^T Xi) = 1/2 * nuclear_norm(Xi).
  double value = 0.0;
  /// n^r x n^c with orthonormal columns (R^T R = I) when n^r >= n^c, and
  /// orthonormal rows (R R^T = I) otherwise.
  Matrix rotation;
};

/// R = U V^T from the SVD of Xi.
RotatedCovariance rotated_covariance(const ContingencyTable& t);

/// 1/2 tr(R^T Xi)
double rotated_objective(const Matrix& xi, const Matrix& rotation);

/// Literal double loop over observation pairs:
///   (1 / 4n^2) sum_a sum_b (e^r(a) - e^r(b))^T R (e^c(a) - e^c(b)).
/// R is indexed by the observation list's own category order.  O(n^2).
double brute_force_covariance(const ObservationList& obs, const Matrix& rotation);

}  // namespace kca
