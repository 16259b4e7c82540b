#include "kca/linalg.hpp"

#include <cmath>
#include <sstream>

namespace kca {

namespace {

// Relative width inside which two magnitudes count as tied for the sign
// convention.  Keeps the choice stable across algebraically equal routes.
constexpr double kSignTieTolerance = 1e-9;

constexpr double kSymmetryTolerance = 1e-10;
constexpr double kSpdTolerance = 1e-12;

bool is_exactly_diagonal(const Matrix& m) {
  for (Index j = 0; j < m.cols(); ++j) {
    for (Index i = 0; i < m.rows(); ++i) {
      if (i != j && m(i, j) != 0.0) return false;
    }
  }
  return true;
}

void require_square(const Matrix& m, const char* what) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << what << " must be square, got " << m.rows() << "x" << m.cols();
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

void require_finite(const Matrix& m, const std::string& what) {
  if (!m.allFinite()) {
    throw NumericalError(what + " contains NaN or Inf entries");
  }
}

Metric Metric::identity(Index n) { return diagonal(Vector::Ones(n)); }

Metric Metric::diagonal(const Vector& d) {
  for (Index i = 0; i < d.size(); ++i) {
    if (!std::isfinite(d(i)) || d(i) <= 0.0) {
      std::ostringstream msg;
      msg << "metric is not positive-definite: diagonal entry " << i << " = "
          << d(i);
      throw NumericalError(msg.str());
    }
  }
  Metric out;
  out.is_diagonal_ = true;
  out.diag_ = d;
  return out;
}

Metric Metric::dense(const Matrix& w) {
  require_square(w, "metric");
  require_finite(w, "metric");
  if (is_exactly_diagonal(w)) return diagonal(w.diagonal());

  const double scale = std::max(1.0, w.cwiseAbs().maxCoeff());
  if ((w - w.transpose()).cwiseAbs().maxCoeff() > kSymmetryTolerance * scale) {
    throw NumericalError("metric is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Matrix> eig(0.5 * (w + w.transpose()));
  if (eig.info() != Eigen::Success) {
    throw NumericalError("eigendecomposition of metric did not converge");
  }
  const Vector& lambda = eig.eigenvalues();
  const double top = std::max(1.0, lambda.cwiseAbs().maxCoeff());
  for (Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) <= kSpdTolerance * top) {
      std::ostringstream msg;
      msg.precision(6);
      msg << "matrix is not positive-definite: eigenvalue " << lambda(i);
      throw NumericalError(msg.str());
    }
  }
  Metric out;
  out.is_diagonal_ = false;
  out.eigvecs_ = eig.eigenvectors();
  out.eigvals_ = lambda;
  return out;
}

Metric Metric::inverse() const {
  Metric out = *this;
  if (is_diagonal_) {
    out.diag_ = diag_.cwiseInverse();
  } else {
    out.eigvals_ = eigvals_.cwiseInverse();
  }
  return out;
}

Metric Metric::scaled(double factor) const {
  if (!(factor > 0.0) || !std::isfinite(factor)) {
    throw std::invalid_argument("metric scale factor must be positive");
  }
  Metric out = *this;
  if (is_diagonal_) {
    out.diag_ *= factor;
  } else {
    out.eigvals_ *= factor;
  }
  return out;
}

Matrix Metric::power(double p) const {
  if (is_diagonal_) {
    return diag_.array().pow(p).matrix().asDiagonal();
  }
  return eigvecs_ * eigvals_.array().pow(p).matrix().asDiagonal() *
         eigvecs_.transpose();
}

Matrix Metric::apply_left(double p, const Matrix& x) const {
  if (x.rows() != size()) {
    throw std::invalid_argument("metric/matrix dimension mismatch");
  }
  if (is_diagonal_) {
    return diag_.array().pow(p).matrix().asDiagonal() * x;
  }
  return eigvecs_ * (eigvals_.array().pow(p).matrix().asDiagonal() *
                     (eigvecs_.transpose() * x));
}

Matrix Metric::apply_right(double p, const Matrix& x) const {
  if (x.cols() != size()) {
    throw std::invalid_argument("metric/matrix dimension mismatch");
  }
  if (is_diagonal_) {
    return x * diag_.array().pow(p).matrix().asDiagonal();
  }
  return ((x * eigvecs_) * eigvals_.array().pow(p).matrix().asDiagonal()) *
         eigvecs_.transpose();
}

Matrix Decomposition::reconstruct() const {
  return U * S.asDiagonal() * V.transpose();
}

void apply_sign_convention(Matrix& u, Matrix& v) {
  for (Index j = 0; j < u.cols(); ++j) {
    const double top = u.col(j).cwiseAbs().maxCoeff();
    if (top == 0.0) continue;
    Index pick = 0;
    for (Index i = 0; i < u.rows(); ++i) {
      if (std::abs(u(i, j)) >= top * (1.0 - kSignTieTolerance)) {
        pick = i;
        break;
      }
    }
    if (u(pick, j) < 0.0) {
      u.col(j) *= -1.0;
      if (j < v.cols()) v.col(j) *= -1.0;
    }
  }
}

namespace {

Index count_rank(const Vector& s) {
  if (s.size() == 0) return 0;
  const double cutoff = kRankTolerance * s(0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > 0.0 && s(rank) >= cutoff) ++rank;
  return rank;
}

}  // namespace

Decomposition svd(const Matrix& m) {
  require_finite(m, "svd input");
  Decomposition out;
  out.metric_row = Metric::identity(m.rows());
  out.metric_col = Metric::identity(m.cols());
  if (m.size() == 0) {
    out.U = Matrix(m.rows(), 0);
    out.V = Matrix(m.cols(), 0);
    out.S = Vector(0);
    return out;
  }

  Eigen::BDCSVD<Matrix> solver(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (solver.info() != Eigen::Success) {
    throw NumericalError("SVD did not converge");
  }
  out.U = solver.matrixU();
  out.S = solver.singularValues();
  out.V = solver.matrixV();
  if (!out.U.allFinite() || !out.V.allFinite() || !out.S.allFinite()) {
    throw NumericalError("SVD produced non-finite factors");
  }
  apply_sign_convention(out.U, out.V);
  out.numerical_rank = count_rank(out.S);
  return out;
}

Matrix spd_sqrt(const Matrix& k) {
  return Metric::dense(k).power(0.5);
}

Decomposition metric_gsvd(const Matrix& m, const Metric& wr,
                          const Metric& wc) {
  if (wr.size() != m.rows() || wc.size() != m.cols()) {
    std::ostringstream msg;
    msg << "metric_gsvd: metrics " << wr.size() << "/" << wc.size()
        << " do not conform to a " << m.rows() << "x" << m.cols()
        << " matrix";
    throw std::invalid_argument(msg.str());
  }
  require_finite(m, "metric_gsvd input");
  const Matrix whitened = wc.apply_right(-0.5, wr.apply_left(-0.5, m));
  Decomposition hat = svd(whitened);

  Decomposition out;
  out.U = wr.apply_left(0.5, hat.U);
  out.V = wc.apply_left(0.5, hat.V);
  out.S = std::move(hat.S);
  out.numerical_rank = hat.numerical_rank;
  out.metric_row = wr;
  out.metric_col = wc;
  apply_sign_convention(out.U, out.V);
  return out;
}

Decomposition metric_gsvd(const Matrix& m, const Matrix& wr,
                          const Matrix& wc) {
  return metric_gsvd(m, Metric::dense(wr), Metric::dense(wc));
}

double nuclear_norm(const Matrix& m) { return svd(m).S.sum(); }

}  // namespace kca
