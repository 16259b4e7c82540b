#pragma once

// Dense linear algebra shared by every fitting routine: a deterministic thin
// SVD, square roots of symmetric positive-definite matrices, and the
// metric-orthonormal generalized SVD.

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace kca {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Index = Eigen::Index;

/// Raised when a numerical routine cannot produce a trustworthy result
/// (non-convergence, non-finite input, a matrix that is not SPD, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Throws NumericalError naming `what` if any entry of `m` is NaN or Inf.
void require_finite(const Matrix& m, const std::string& what);

/// A symmetric positive-definite weight matrix W, stored either as its
/// diagonal or as an eigendecomposition W = Q diag(lambda) Q^T.  Any real
/// power W^p is then cheap to form or to apply.
class Metric {
 public:
  Metric() = default;

  static Metric identity(Index n);
  /// All entries must be strictly positive and finite.
  static Metric diagonal(const Vector& d);
  /// Validates symmetry and positive-definiteness.  A matrix that is exactly
  /// diagonal takes the diagonal path.
  static Metric dense(const Matrix& w);

  Index size() const { return is_diagonal_ ? diag_.size() : eigvals_.size(); }
  bool is_diagonal() const { return is_diagonal_; }
  /// Empty for a dense metric.
  const Vector& diagonal_entries() const { return diag_; }

  Metric inverse() const;
  Metric scaled(double factor) const;
  Matrix power(double p) const;
  Matrix to_dense() const { return power(1.0); }

  /// W^p * x
  Matrix apply_left(double p, const Matrix& x) const;
  /// x * W^p
  Matrix apply_right(double p, const Matrix& x) const;

 private:
  bool is_diagonal_ = true;
  Vector diag_;
  Matrix eigvecs_;
  Vector eigvals_;
};

/// Thin singular triplet M = U diag(S) V^T, with U and V orthonormal under
/// the inverses of metric_row and metric_col:
///   U^T metric_row^{-1} U = I,  V^T metric_col^{-1} V = I.
/// Identity metrics give an ordinary SVD.
struct Decomposition {
  Matrix U;
  Vector S;
  Matrix V;
  Metric metric_row;
  Metric metric_col;
  /// Number of singular values at or above kRankTolerance * S_max.  Values
  /// past this index are kept but should be read as numerical zeros.
  Index numerical_rank = 0;

  Index size() const { return S.size(); }
  bool rank_deficient() const { return numerical_rank < S.size(); }
  Matrix reconstruct() const;
};

inline constexpr double kRankTolerance = 1e-12;

/// Thin SVD with identity metrics.  Sign convention: in every left singular
/// vector the entry of largest magnitude is nonnegative (first index wins a
/// tie); the matching right vector is flipped with it.
Decomposition svd(const Matrix& m);

/// K^{1/2} for symmetric positive-definite K.  Diagonal input takes a fast
/// path.  Throws NumericalError quoting the offending eigenvalue otherwise.
Matrix spd_sqrt(const Matrix& k);

/// Generalized SVD of M under metrics (Wr, Wc): the SVD of
/// Wr^{-1/2} M Wc^{-1/2} = Uh S Vh^T mapped back through U = Wr^{1/2} Uh and
/// V = Wc^{1/2} Vh.  The sign convention is applied to U.
Decomposition metric_gsvd(const Matrix& m, const Metric& wr, const Metric& wc);
Decomposition metric_gsvd(const Matrix& m, const Matrix& wr, const Matrix& wc);

/// Sum of singular values.
double nuclear_norm(const Matrix& m);

/// Flips columns of `u` (and the matching columns of `v`) so that the entry
/// of largest magnitude in each column of `u` is nonnegative.
void apply_sign_convention(Matrix& u, Matrix& v);

}  // namespace kca
