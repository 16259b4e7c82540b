#include "kca/ca.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>
#include <sstream>

#include "test_support.hpp"

namespace kca {
namespace {

using testing::cosine_matrix;
using testing::max_abs_diff;

Index nearest(const Matrix& points, const Vector& query) {
  Index best = 0;
  (points.rowwise() - query.transpose()).rowwise().squaredNorm().minCoeff(&best);
  return best;
}

TEST(LinearCa, IndependenceTableIsDegenerate) {
  Vector r(3);
  r << 1, 2, 3;
  Vector c(2);
  c << 2, 4;
  const ContingencyTable t(r * c.transpose(), testing::make_labels("r", 3),
                           testing::make_labels("c", 2));
  const EmbeddingSet e = fit_linear_ca(t, 2);
  EXPECT_LT(e.singular_values.maxCoeff(), 1e-12);
  EXPECT_LT(e.F.cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT(e.G.cwiseAbs().maxCoeff(), 1e-12);
}

TEST(LinearCa, FisherConstraintsAndNeighbours) {
  const ContingencyTable t = fisher_table();
  const Decomposition d = linear_ca_decomposition(t);
  const Matrix dr_inv = t.row_marginals().cwiseInverse().asDiagonal();
  const Matrix dc_inv = t.col_marginals().cwiseInverse().asDiagonal();
  EXPECT_LT(max_abs_diff(d.U.transpose() * dr_inv * d.U, Matrix::Identity(4, 4)), 1e-8);
  EXPECT_LT(max_abs_diff(d.V.transpose() * dc_inv * d.V, Matrix::Identity(4, 4)), 1e-8);
  EXPECT_LT(max_abs_diff(d.reconstruct(), residual_matrix(t)), 1e-8);

  const EmbeddingSet e = fit_linear_ca(t, 2);
  ASSERT_EQ(e.dim(), 2);
  // dark eyes and dark hair are mutual nearest neighbours across the sets
  EXPECT_EQ(e.col_labels[nearest(e.G, e.F.row(3).transpose())], "dark");
  EXPECT_EQ(e.row_labels[nearest(e.F, e.G.row(3).transpose())], "dark");
  // blue/light eyes sit with fair hair
  EXPECT_EQ(e.col_labels[nearest(e.G, e.F.row(0).transpose())], "fair");
  EXPECT_EQ(e.col_labels[nearest(e.G, e.F.row(1).transpose())], "fair");
}

TEST(LinearCa, SingularValuesMatchStandardizedResidualEigenvalues) {
  // Independent route: squared singular values of
  // D(r)^-1/2 Xi D(c)^-1/2 are the eigenvalues of its Gram matrix.
  const ContingencyTable t = fisher_table();
  const Vector rs = t.row_marginals().cwiseSqrt().cwiseInverse();
  const Vector cs = t.col_marginals().cwiseSqrt().cwiseInverse();
  const Matrix xh = rs.asDiagonal() * residual_matrix(t) * cs.asDiagonal();
  Eigen::SelfAdjointEigenSolver<Matrix> eig(xh * xh.transpose());
  Vector expected = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt().reverse();
  const EmbeddingSet e = fit_linear_ca(t, 3);
  EXPECT_LT((e.singular_values - expected.head(3)).cwiseAbs().maxCoeff(), 1e-15);
  // in textbook (proportion) scaling the leading value is 0.4464
  EXPECT_NEAR(e.singular_values(0) * t.total(), 0.4464, 1e-4);
}

TEST(LinearCa, TwoByTwoDiagonalTable) {
  Matrix n(2, 2);
  n << 2, 0, 0, 2;
  const ContingencyTable t(n, {"a", "b"}, {"x", "y"});
  const EmbeddingSet e = fit_linear_ca(t, 1);
  // Xi_hat = Xi / 2 = [[1, -1], [-1, 1]] / 8 has singular value 1/4.
  EXPECT_NEAR(e.singular_values(0), 0.25, 1e-15);
  EXPECT_NEAR(e.F(0, 0), -e.F(1, 0), 1e-15);
  EXPECT_GT(std::abs(e.F(0, 0)), 0.0);
}

TEST(LinearCa, CoordinatesFollowFromAxes) {
  std::mt19937_64 rng(6);
  const ContingencyTable t = testing::random_table(rng, 6, 4);
  const EmbeddingSet e = fit_linear_ca(t, 3);
  const Matrix s = e.singular_values.asDiagonal();
  EXPECT_LT(max_abs_diff(e.F, t.row_marginals().cwiseInverse().asDiagonal() * e.row_axes * s),
            1e-10);
  EXPECT_LT(max_abs_diff(e.G, t.col_marginals().cwiseInverse().asDiagonal() * e.col_axes * s),
            1e-10);
}

TEST(LinearCa, FullRankReconstruction) {
  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const ContingencyTable t = testing::random_table(rng, 5, 5);
    const Decomposition d = linear_ca_decomposition(t);
    EXPECT_LT(max_abs_diff(d.reconstruct(), residual_matrix(t)), 1e-8);
  }
}

TEST(LinearCa, ScalingCountsScalesCoordinates) {
  // Xi is scale free while D(r) grows with n, so F, G scale by c^{-3/2};
  // directions (and so cosines) are unchanged.
  std::mt19937_64 rng(9);
  const ContingencyTable t = testing::random_table(rng, 5, 4);
  const EmbeddingSet a = fit_linear_ca(t, 3);
  const EmbeddingSet b = fit_linear_ca(t.scaled(10.0), 3);
  const double factor = std::pow(10.0, -1.5);
  EXPECT_LT(max_abs_diff(b.F, factor * a.F), 1e-9 * a.F.cwiseAbs().maxCoeff());
  EXPECT_LT(max_abs_diff(b.G, factor * a.G), 1e-9 * a.G.cwiseAbs().maxCoeff());
  EXPECT_LT(max_abs_diff(cosine_matrix(a.F), cosine_matrix(b.F)), 1e-9);
  // On normalized tables (N / n) the fit is literally identical.
  const EmbeddingSet pa = fit_linear_ca(t.scaled(1.0 / t.total()), 3);
  const ContingencyTable t10 = t.scaled(10.0);
  const EmbeddingSet pb = fit_linear_ca(t10.scaled(1.0 / t10.total()), 3);
  EXPECT_LT(max_abs_diff(pa.F, pb.F), 1e-9);
  EXPECT_LT(max_abs_diff(pa.G, pb.G), 1e-9);
}

TEST(LinearCa, RowPermutationEquivariance) {
  std::mt19937_64 rng(10);
  const ContingencyTable t = testing::random_table(rng, 5, 4);
  const std::vector<Index> perm = {3, 0, 4, 1, 2};
  Matrix pn(5, 4);
  std::vector<std::string> labels;
  for (Index i = 0; i < 5; ++i) {
    pn.row(i) = t.counts().row(perm[i]);
    labels.push_back(t.row_labels()[perm[i]]);
  }
  const ContingencyTable p(pn, labels, t.col_labels());
  const EmbeddingSet a = fit_linear_ca(t, 3);
  const EmbeddingSet b = fit_linear_ca(p, 3);
  for (Index j = 0; j < 3; ++j) {
    // Up to the sign the convention picks for each axis.
    const double sign = a.G.col(j).dot(b.G.col(j)) >= 0 ? 1.0 : -1.0;
    for (Index i = 0; i < 5; ++i) {
      EXPECT_NEAR(b.F(i, j), sign * a.F(perm[i], j), 1e-10);
    }
  }
}

TEST(LinearCa, DimensionOutOfRange) {
  const ContingencyTable t = fisher_table();
  EXPECT_THROW(fit_linear_ca(t, 0), std::invalid_argument);
  EXPECT_THROW(fit_linear_ca(t, 5), std::invalid_argument);
  EXPECT_NO_THROW(fit_linear_ca(t, 4));
  EXPECT_EQ(default_ca_dimension(t), 3);
}

TEST(ExportCoordinates, EmptySetWritesHeaderOnly) {
  std::ostringstream out;
  export_coordinates(EmbeddingSet{}, out);
  EXPECT_EQ(out.str(), "point_set,label\n");
}

TEST(ExportCoordinates, FisherHasNineDataLines) {
  std::ostringstream out;
  export_coordinates(fit_linear_ca(fisher_table(), 2), out);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  EXPECT_EQ(line, "point_set,label,dim_1,dim_2");
  int rows = 0;
  int cols = 0;
  while (std::getline(in, line)) {
    if (line.rfind("row,", 0) == 0) ++rows;
    if (line.rfind("col,", 0) == 0) ++cols;
  }
  EXPECT_EQ(rows, 4);
  EXPECT_EQ(cols, 5);
}

TEST(ExportCoordinates, RoundTripIsBitExact) {
  std::mt19937_64 rng(13);
  EmbeddingSet e = fit_linear_ca(testing::random_table(rng, 6, 5), 4);
  e.row_labels[0] = "needs,\"quoting\"";
  std::stringstream buf;
  export_coordinates(e, buf);
  const EmbeddingSet back = import_coordinates(buf);
  EXPECT_EQ(back.row_labels, e.row_labels);
  EXPECT_EQ(back.col_labels, e.col_labels);
  ASSERT_EQ(back.F.rows(), e.F.rows());
  ASSERT_EQ(back.G.rows(), e.G.rows());
  EXPECT_EQ(std::memcmp(back.F.data(), e.F.data(), sizeof(double) * e.F.size()), 0);
  EXPECT_EQ(std::memcmp(back.G.data(), e.G.data(), sizeof(double) * e.G.size()), 0);
}

}  // namespace
}  // namespace kca
