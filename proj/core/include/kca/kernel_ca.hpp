#pragma once

// Kernel correspondence analysis.  Every method solves
//
//   maximize 1/2 tr(R^T K^r A K^c)  subject to  R^T K^r R K^c = I
//
// for an association matrix A built from the table and SPD kernels K^r, K^c.
// With A_hat = (K^r)^{1/2} A (K^c)^{1/2} = U S V^T the optimum is
// R = (K^r)^{-1/2} U V^T (K^c)^{-1/2}, attaining 1/2 sum(S), and the
// coordinates are F = (K^r)^{1/2} U S^p, G = (K^c)^{1/2} V S^p.
//
// Known specializations:
//
//   method        K^r               K^c          A_ij
//   linear CA     D(r)^-1           D(c)^-1      x - y
//   Gini index    I                 I            x - y
//   G-test        I                 I            x (log x - log y)
//   SGNS          I                 I            max(log x - log y - log k, 0)
//   kernel PCA    exp(a|e_i-e_j|^2) I            x - y
//
// with x = n_ij / n and y = r_i c_j / n^2.  GloVe's shifted-log form needs
// fitted bias terms and is not provided.

#include "kca/ca.hpp"
#include "kca/eval.hpp"
#include "kca/linalg.hpp"
#include "kca/tables.hpp"

#include <set>
#include <string>
#include <vector>

namespace kca {

enum class AssociationKind { Linear, Gini, GTest, Sgns, KpcaCd };

struct Association {
  AssociationKind kind = AssociationKind::Linear;
  /// SGNS shift k > 0.
  double shift_k = 1.0;
  /// SGNS only.  When true, A = max(PMI - log k, 0) (shifted positive PMI).
  /// When false, A = PMI - log k with zero-count cells set to zero_cell_floor.
  bool clamp_positive = true;
  double zero_cell_floor = 0.0;
};

enum class KernelKind {
  Identity,
  InverseMarginal,
  StopWord,
  KpcaCd,
  Similarity,
  Explicit,
};

struct KernelSpec {
  KernelKind kind = KernelKind::Identity;
  /// StopWord: weight added for listed words.  KpcaCd: exponent scale.
  double alpha = 0.0;
  std::set<std::string> words;
  /// Similarity: the Gamma matrix.  Explicit: the kernel itself.
  Matrix matrix;

  static KernelSpec identity() { return {}; }
  static KernelSpec inverse_marginal() { return {KernelKind::InverseMarginal, 0.0, {}, {}}; }
  static KernelSpec stopword(double alpha, std::set<std::string> words) {
    return {KernelKind::StopWord, alpha, std::move(words), {}};
  }
  static KernelSpec kpca_cd(double alpha) { return {KernelKind::KpcaCd, alpha, {}, {}}; }
  static KernelSpec similarity(Matrix gamma) {
    return {KernelKind::Similarity, 0.0, {}, std::move(gamma)};
  }
  static KernelSpec explicit_matrix(Matrix k) {
    return {KernelKind::Explicit, 0.0, {}, std::move(k)};
  }
};

struct KcaMethod {
  Association association;
  KernelSpec row_kernel;
  KernelSpec col_kernel;
  /// Coordinates use S^p; 1 is the CA convention, 0.5 splits S evenly.
  double embedding_exponent = 1.0;

  static KcaMethod linear_ca();
  static KcaMethod gini();
  static KcaMethod gtest();
  static KcaMethod sgns(double shift_k);
  /// Kernel PCA for categorical data.  alpha < 0 keeps the kernel SPD.
  static KcaMethod kpca_cd(double alpha);

  std::string tag() const;
};

struct AssociationMatrix {
  Matrix values;
  std::string method_tag;
};

AssociationMatrix association_matrix(const ContingencyTable& t,
                                     const Association& a);
inline AssociationMatrix association_matrix(const ContingencyTable& t,
                                            const KcaMethod& m) {
  return association_matrix(t, m.association);
}

/// The kernel as a Metric, keeping diagonal kernels diagonal.
Metric kernel_metric(const KernelSpec& spec, const ContingencyTable& t,
                     Axis axis);
/// Dense form of kernel_metric.
Matrix materialize_kernel(const KernelSpec& spec, const ContingencyTable& t,
                          Axis axis);

/// A, K^r and K^c of one instance of the kernel problem.
struct KcaProblem {
  Matrix association;
  Metric row_kernel;
  Metric col_kernel;
  std::string method_tag;
};

KcaProblem make_kca_problem(const ContingencyTable& t, const KcaMethod& m);

/// Word-similarity problem:
///   M  = N o (Gr N Gc) - (Gr N) o (N Gc)
///   r' = ((Gr N) o (N Gc)) 1,  c' = ((Gr N) o (N Gc))^T 1
/// with A = M / n^2 (original n) and kernels D(r')^-1, D(c')^-1.  Throws
/// std::invalid_argument naming the first label whose r' or c' is not
/// positive.
KcaProblem make_ws_problem(const ContingencyTable& t, const Matrix& gamma_row,
                           const Matrix& gamma_col);

struct KcaSolution {
  Matrix rotation;
  double objective = 0.0;
  Vector singular_values;
};

/// Optimal R and the attained objective 1/2 sum(S).
KcaSolution solve_kca(const KcaProblem& p);
/// 1/2 tr(R^T K^r A K^c) for any R.
double kca_objective(const KcaProblem& p, const Matrix& rotation);
/// max |R^T K^r R K^c - I|.
double kca_constraint_residual(const KcaProblem& p, const Matrix& rotation);

/// Leading k coordinates of a problem; 1 <= k <= min(n^r, n^c).
EmbeddingSet fit_problem(const KcaProblem& p, const ContingencyTable& t,
                         Index k, double exponent);

/// Dispatches on the method.  Similarity kernels on both axes route to
/// fit_ws_kca.
EmbeddingSet fit_kca(const ContingencyTable& t, const KcaMethod& m, Index k);

EmbeddingSet fit_ws_kca(const ContingencyTable& t, const Matrix& gamma_row,
                        const Matrix& gamma_col, Index k,
                        double exponent = 1.0);

/// Gamma_ij = alpha * score(label_i, label_j) + beta, with score 0 for pairs
/// the dataset does not list.  Scores are symmetric.
Matrix similarity_gamma(const std::vector<std::string>& labels,
                        const WordSimDataset& scores, double alpha,
                        double beta);

/// 0.1 / max score, so Gamma stays positive on 0..10 style datasets.
double default_ws_alpha(const WordSimDataset& scores);

}  // namespace kca
