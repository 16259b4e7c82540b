#include "kca/gini.hpp"

#include <sstream>
#include <stdexcept>

namespace kca {

double gini_variance(const ContingencyTable& t, Axis axis) {
  const Vector p = t.marginals(axis) / t.total();
  return 0.5 * (1.0 - p.squaredNorm());
}

std::uint64_t gini_disagreeing_pairs(const ContingencyTable& t, Axis axis) {
  if (!t.is_integral()) {
    throw std::invalid_argument("pair counts need an integral table");
  }
  const Vector& m = t.marginals(axis);
  const auto n = static_cast<std::uint64_t>(t.total());
  std::uint64_t same = 0;
  for (Index i = 0; i < m.size(); ++i) {
    const auto mi = static_cast<std::uint64_t>(m(i));
    same += mi * mi;
  }
  return n * n - same;
}

double rotated_objective(const Matrix& xi, const Matrix& rotation) {
  if (xi.rows() != rotation.rows() || xi.cols() != rotation.cols()) {
    throw std::invalid_argument("rotation does not match Xi's shape");
  }
  return 0.5 * rotation.cwiseProduct(xi).sum();
}

RotatedCovariance rotated_covariance(const ContingencyTable& t) {
  const Matrix xi = residual_matrix(t);
  RotatedCovariance out;
  // R^T R = I needs at least as many rows as columns; solve the transposed
  // problem otherwise and transpose the rotation back.
  if (xi.rows() >= xi.cols()) {
    const Decomposition d = svd(xi);
    out.rotation = d.U * d.V.transpose();
    out.value = 0.5 * d.S.sum();
  } else {
    const Decomposition d = svd(xi.transpose());
    out.rotation = (d.U * d.V.transpose()).transpose();
    out.value = 0.5 * d.S.sum();
  }
  return out;
}

double brute_force_covariance(const ObservationList& obs,
                              const Matrix& rotation) {
  const auto nr = static_cast<Index>(obs.row_categories().size());
  const auto nc = static_cast<Index>(obs.col_categories().size());
  if (rotation.rows() != nr || rotation.cols() != nc) {
    std::ostringstream msg;
    msg << "brute_force_covariance: rotation is " << rotation.rows() << "x"
        << rotation.cols() << ", observations have " << nr << "x" << nc
        << " categories";
    throw std::invalid_argument(msg.str());
  }
  const auto& ri = obs.row_index();
  const auto& ci = obs.col_index();
  const std::size_t n = obs.size();
  double sum = 0.0;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      // (e_i - e_k)^T R (e_j - e_l)
      sum += rotation(ri[a], ci[a]) - rotation(ri[a], ci[b]) -
             rotation(ri[b], ci[a]) + rotation(ri[b], ci[b]);
    }
  }
  const double nn = static_cast<double>(n);
  return sum / (4.0 * nn * nn);
}

}  // namespace kca
