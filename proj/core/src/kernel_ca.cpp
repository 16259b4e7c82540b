#include "kca/kernel_ca.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace kca {

namespace {

std::string format_param(double v) { return format_real(v); }

std::string kernel_tag(const KernelSpec& k) {
  switch (k.kind) {
    case KernelKind::Identity:
      return "I";
    case KernelKind::InverseMarginal:
      return "Dinv";
    case KernelKind::StopWord:
      return "sw(" + format_param(k.alpha) + ")";
    case KernelKind::KpcaCd:
      return "kpca(" + format_param(k.alpha) + ")";
    case KernelKind::Similarity:
      return "ws";
    case KernelKind::Explicit:
      return "explicit";
  }
  return "?";
}

void require_dimension(Index k, const ContingencyTable& t) {
  const Index max_k = std::min(t.rows(), t.cols());
  if (k < 1 || k > max_k) {
    std::ostringstream msg;
    msg << "dimension k = " << k << " outside [1, " << max_k << "]";
    throw std::invalid_argument(msg.str());
  }
}

}  // namespace

KcaMethod KcaMethod::linear_ca() {
  KcaMethod m;
  m.association.kind = AssociationKind::Linear;
  m.row_kernel = KernelSpec::inverse_marginal();
  m.col_kernel = KernelSpec::inverse_marginal();
  return m;
}

KcaMethod KcaMethod::gini() {
  KcaMethod m;
  m.association.kind = AssociationKind::Gini;
  return m;
}

KcaMethod KcaMethod::gtest() {
  KcaMethod m;
  m.association.kind = AssociationKind::GTest;
  return m;
}

KcaMethod KcaMethod::sgns(double shift_k) {
  KcaMethod m;
  m.association.kind = AssociationKind::Sgns;
  m.association.shift_k = shift_k;
  return m;
}

KcaMethod KcaMethod::kpca_cd(double alpha) {
  KcaMethod m;
  m.association.kind = AssociationKind::KpcaCd;
  m.row_kernel = KernelSpec::kpca_cd(alpha);
  return m;
}

std::string KcaMethod::tag() const {
  std::string base;
  switch (association.kind) {
    case AssociationKind::Linear:
      base = "linear";
      break;
    case AssociationKind::Gini:
      base = "gini";
      break;
    case AssociationKind::GTest:
      base = "gtest";
      break;
    case AssociationKind::Sgns:
      base = "sgns(k=" + format_param(association.shift_k) +
             (association.clamp_positive
                  ? ")"
                  : ",floor=" + format_param(association.zero_cell_floor) + ")");
      break;
    case AssociationKind::KpcaCd:
      base = "kpca_cd";
      break;
  }
  base += "[" + kernel_tag(row_kernel) + "," + kernel_tag(col_kernel) + "]";
  if (embedding_exponent != 1.0) base += "^p=" + format_param(embedding_exponent);
  return base;
}

AssociationMatrix association_matrix(const ContingencyTable& t,
                                     const Association& a) {
  const Matrix& counts = t.counts();
  const Vector& r = t.row_marginals();
  const Vector& c = t.col_marginals();
  const double n = t.total();

  AssociationMatrix out;
  switch (a.kind) {
    case AssociationKind::Linear:
    case AssociationKind::Gini:
    case AssociationKind::KpcaCd:
      out.values = residual_matrix(t);
      out.method_tag = a.kind == AssociationKind::Gini ? "gini" : "linear";
      return out;

    case AssociationKind::GTest: {
      out.values = Matrix::Zero(t.rows(), t.cols());
      for (Index j = 0; j < t.cols(); ++j) {
        for (Index i = 0; i < t.rows(); ++i) {
          const double nij = counts(i, j);
          if (nij == 0.0) continue;  // 0 log 0 = 0
          out.values(i, j) = (nij / n) * std::log((nij * n) / (r(i) * c(j)));
        }
      }
      out.method_tag = "gtest";
      return out;
    }

    case AssociationKind::Sgns: {
      if (!(a.shift_k > 0.0) || !std::isfinite(a.shift_k)) {
        throw std::invalid_argument("SGNS shift k must be positive");
      }
      const double log_k = std::log(a.shift_k);
      out.values.resize(t.rows(), t.cols());
      for (Index j = 0; j < t.cols(); ++j) {
        for (Index i = 0; i < t.rows(); ++i) {
          const double nij = counts(i, j);
          if (nij == 0.0) {
            out.values(i, j) = a.clamp_positive ? 0.0 : a.zero_cell_floor;
            continue;
          }
          const double shifted = std::log((nij * n) / (r(i) * c(j))) - log_k;
          out.values(i, j) = a.clamp_positive ? std::max(shifted, 0.0) : shifted;
        }
      }
      out.method_tag = "sgns";
      return out;
    }
  }
  throw std::logic_error("unknown association kind");
}

Metric kernel_metric(const KernelSpec& spec, const ContingencyTable& t,
                     Axis axis) {
  const Vector& marginal = t.marginals(axis);
  const Index m = marginal.size();
  switch (spec.kind) {
    case KernelKind::Identity:
      return Metric::identity(m);

    case KernelKind::InverseMarginal:
      return Metric::diagonal(marginal.cwiseInverse());

    case KernelKind::StopWord: {
      if (!(1.0 + spec.alpha > 0.0)) {
        std::ostringstream msg;
        msg << "stop-word kernel needs 1 + alpha > 0, got alpha = " << spec.alpha;
        throw NumericalError(msg.str());
      }
      const auto& labels = t.labels(axis);
      Vector d(m);
      for (Index i = 0; i < m; ++i) {
        const double w = spec.words.count(labels[i]) ? 1.0 + spec.alpha : 1.0;
        d(i) = w / marginal(i);
      }
      return Metric::diagonal(d);
    }

    case KernelKind::KpcaCd: {
      // |e_i - e_j|^2 is 2 off the diagonal and 0 on it.
      Matrix k = Matrix::Constant(m, m, std::exp(2.0 * spec.alpha));
      k.diagonal().setOnes();
      return Metric::dense(k);
    }

    case KernelKind::Similarity:
      throw std::invalid_argument(
          "similarity kernels define their own problem; use fit_ws_kca");

    case KernelKind::Explicit:
      if (spec.matrix.rows() != m || spec.matrix.cols() != m) {
        std::ostringstream msg;
        msg << "explicit kernel is " << spec.matrix.rows() << "x"
            << spec.matrix.cols() << ", axis has " << m << " categories";
        throw std::invalid_argument(msg.str());
      }
      return Metric::dense(spec.matrix);
  }
  throw std::logic_error("unknown kernel kind");
}

Matrix materialize_kernel(const KernelSpec& spec, const ContingencyTable& t,
                          Axis axis) {
  return kernel_metric(spec, t, axis).to_dense();
}

KcaProblem make_kca_problem(const ContingencyTable& t, const KcaMethod& m) {
  if (m.row_kernel.kind == KernelKind::Similarity ||
      m.col_kernel.kind == KernelKind::Similarity) {
    if (m.row_kernel.kind != m.col_kernel.kind) {
      throw std::invalid_argument(
          "similarity kernels must be given on both axes");
    }
    return make_ws_problem(t, m.row_kernel.matrix, m.col_kernel.matrix);
  }
  KcaProblem p;
  p.association = association_matrix(t, m.association).values;
  p.row_kernel = kernel_metric(m.row_kernel, t, Axis::Row);
  p.col_kernel = kernel_metric(m.col_kernel, t, Axis::Col);
  p.method_tag = m.tag();
  return p;
}

KcaProblem make_ws_problem(const ContingencyTable& t, const Matrix& gamma_row,
                           const Matrix& gamma_col) {
  const Matrix& counts = t.counts();
  if (gamma_row.rows() != t.rows() || gamma_row.cols() != t.rows() ||
      gamma_col.rows() != t.cols() || gamma_col.cols() != t.cols()) {
    throw std::invalid_argument("Gamma matrices do not match the table");
  }
  require_finite(gamma_row, "row Gamma");
  require_finite(gamma_col, "column Gamma");

  const Matrix left = gamma_row * counts;   // Gr N
  const Matrix right = counts * gamma_col;  // N Gc
  const Matrix both = left * gamma_col;     // Gr N Gc
  const Matrix cross = left.cwiseProduct(right);
  const Vector r_mod = cross.rowwise().sum();
  const Vector c_mod = cross.colwise().sum().transpose();
  for (Index i = 0; i < r_mod.size(); ++i) {
    if (!(r_mod(i) > 0.0)) {
      throw std::invalid_argument("word-similarity kernel: modified row marginal of '" +
                                  t.row_labels()[i] + "' is not positive");
    }
  }
  for (Index j = 0; j < c_mod.size(); ++j) {
    if (!(c_mod(j) > 0.0)) {
      throw std::invalid_argument("word-similarity kernel: modified column marginal of '" +
                                  t.col_labels()[j] + "' is not positive");
    }
  }

  const double n = t.total();
  KcaProblem p;
  p.association = (counts.cwiseProduct(both) - cross) / (n * n);
  p.row_kernel = Metric::diagonal(r_mod.cwiseInverse());
  p.col_kernel = Metric::diagonal(c_mod.cwiseInverse());
  p.method_tag = "linear[ws,ws]";
  return p;
}

namespace {

// A_hat = (K^r)^{1/2} A (K^c)^{1/2}
Matrix whitened_association(const KcaProblem& p) {
  return p.col_kernel.apply_right(0.5, p.row_kernel.apply_left(0.5, p.association));
}

}  // namespace

KcaSolution solve_kca(const KcaProblem& p) {
  const Decomposition d = svd(whitened_association(p));
  KcaSolution out;
  out.singular_values = d.S;
  out.objective = 0.5 * d.S.sum();
  // Thin factors: orthonormal columns when tall, orthonormal rows when wide.
  const Matrix rotation_hat = d.U * d.V.transpose();
  out.rotation = p.col_kernel.apply_right(-0.5, p.row_kernel.apply_left(-0.5, rotation_hat));
  return out;
}

double kca_objective(const KcaProblem& p, const Matrix& rotation) {
  if (rotation.rows() != p.association.rows() ||
      rotation.cols() != p.association.cols()) {
    throw std::invalid_argument("rotation does not match the association shape");
  }
  const Matrix sandwiched =
      p.col_kernel.apply_right(1.0, p.row_kernel.apply_left(1.0, p.association));
  return 0.5 * rotation.cwiseProduct(sandwiched).sum();
}

double kca_constraint_residual(const KcaProblem& p, const Matrix& rotation) {
  Matrix product;
  if (rotation.rows() >= rotation.cols()) {
    // R^T K^r R K^c
    product = p.col_kernel.apply_right(
        1.0, rotation.transpose() * p.row_kernel.apply_left(1.0, rotation));
  } else {
    // R K^c R^T K^r, the same condition for a wide R
    product = p.row_kernel.apply_right(
        1.0, rotation * p.col_kernel.apply_left(1.0, rotation.transpose()));
  }
  return (product - Matrix::Identity(product.rows(), product.cols()))
      .cwiseAbs()
      .maxCoeff();
}

EmbeddingSet fit_problem(const KcaProblem& p, const ContingencyTable& t,
                         Index k, double exponent) {
  require_dimension(k, t);
  if (!std::isfinite(exponent)) {
    throw std::invalid_argument("embedding exponent must be finite");
  }
  // The metric pair (K^r)^{-1}, (K^c)^{-1} turns the GSVD's whitening step
  // into the kernel sandwich; U_breve = (K^r)^{-1/2} U_hat.
  const Decomposition d = metric_gsvd(p.association, p.row_kernel.inverse(),
                                      p.col_kernel.inverse());
  EmbeddingSet e;
  e.row_axes = d.U.leftCols(k);
  e.col_axes = d.V.leftCols(k);
  e.singular_values = d.S.head(k);
  const Vector scale = e.singular_values.array().pow(exponent).matrix();
  e.F = p.row_kernel.apply_left(1.0, e.row_axes) * scale.asDiagonal();
  e.G = p.col_kernel.apply_left(1.0, e.col_axes) * scale.asDiagonal();
  e.row_labels = t.row_labels();
  e.col_labels = t.col_labels();
  e.method_tag = p.method_tag;
  return e;
}

EmbeddingSet fit_kca(const ContingencyTable& t, const KcaMethod& m, Index k) {
  return fit_problem(make_kca_problem(t, m), t, k, m.embedding_exponent);
}

EmbeddingSet fit_ws_kca(const ContingencyTable& t, const Matrix& gamma_row,
                        const Matrix& gamma_col, Index k, double exponent) {
  return fit_problem(make_ws_problem(t, gamma_row, gamma_col), t, k, exponent);
}

Matrix similarity_gamma(const std::vector<std::string>& labels,
                        const WordSimDataset& scores, double alpha,
                        double beta) {
  const auto m = static_cast<Index>(labels.size());
  std::unordered_map<std::string, Index> lookup;
  for (Index i = 0; i < m; ++i) lookup.emplace(labels[i], i);
  Matrix gamma = Matrix::Constant(m, m, beta);
  for (const auto& pair : scores.pairs) {
    const auto a = lookup.find(pair.a);
    const auto b = lookup.find(pair.b);
    if (a == lookup.end() || b == lookup.end()) continue;
    gamma(a->second, b->second) = alpha * pair.score + beta;
    gamma(b->second, a->second) = alpha * pair.score + beta;
  }
  return gamma;
}

double default_ws_alpha(const WordSimDataset& scores) {
  const double top = scores.max_score();
  return top > 0.0 ? 0.1 / top : 0.1;
}

}  // namespace kca
