#include "projreg/linalg.hpp"
#include "support/random.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>

namespace projreg {
namespace {

using testing::dense_norm;
using testing::Rng;

// Minimum-norm least squares without SVD: restrict to an orthonormal basis Q
// of R(M^T) from a rank-revealing QR of M^T and solve the normal equations
// (Q^T M^T M Q) w = Q^T M^T b.
Vector normal_equations_oracle(const Matrix& m, const Vector& b) {
  Eigen::ColPivHouseholderQR<Matrix> qr(m.transpose());
  qr.setThreshold(1e-10);
  const Index r = qr.rank();
  const Matrix q = Matrix(qr.householderQ()).leftCols(r);
  const Matrix mq = m * q;
  const Vector w = (mq.transpose() * mq).ldlt().solve(mq.transpose() * b);
  return q * w;
}

TEST(Svd, DiagonalMatrix) {
  Matrix m(2, 2);
  m << 3, 0, 0, 1;
  const SvdFactors f = svd(m);
  EXPECT_NEAR(f.singular_values(0), 3.0, 1e-15);
  EXPECT_NEAR(f.singular_values(1), 1.0, 1e-15);
}

TEST(Svd, ZeroMatrix) {
  const SvdFactors f = svd(Matrix::Zero(2, 2));
  EXPECT_EQ(f.singular_values(0), 0.0);
  EXPECT_EQ(f.singular_values(1), 0.0);
}

TEST(Svd, RandomReconstruction) {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = rng.matrix(6, 5);
    const SvdFactors f = svd(m);
    const Matrix back = f.left_vectors * f.singular_values.asDiagonal() * f.right_vectors.transpose();
    EXPECT_LE((back - m).norm(), 1e-10 * m.norm());
    for (Index k = 1; k < f.singular_values.size(); ++k) {
      EXPECT_GE(f.singular_values(k - 1), f.singular_values(k));
    }
  }
}

TEST(Svd, RejectsNonFiniteInputWithDimensions) {
  Matrix m = Matrix::Ones(3, 2);
  m(1, 1) = std::numeric_limits<double>::quiet_NaN();
  try {
    svd(m);
    FAIL() << "expected LinalgError";
  } catch (const LinalgError& e) {
    EXPECT_NE(std::string(e.what()).find("3x2"), std::string::npos) << e.what();
  }
}

TEST(PseudoInverseApply, RankDeficientDiagonal) {
  Matrix m(2, 2);
  m << 2, 0, 0, 0;
  const MinNormSolution s = pseudo_inverse_apply(m, Vector::Ones(2));
  EXPECT_NEAR(s.x(0), 0.5, 1e-15);
  EXPECT_EQ(s.x(1), 0.0);
  EXPECT_NEAR(s.residual_norm, 1.0, 1e-15);
  EXPECT_EQ(s.rank, 1);
}

TEST(PseudoInverseApply, Identity) {
  Rng rng(3);
  const Vector b = rng.vector(5);
  const MinNormSolution s = pseudo_inverse_apply(Matrix::Identity(5, 5), b);
  EXPECT_LE((s.x - b).norm(), 1e-15);
  EXPECT_LE(s.residual_norm, 1e-15);
}

TEST(PseudoInverseApply, DimensionMismatch) {
  EXPECT_THROW(pseudo_inverse_apply(Matrix::Identity(3, 3), Vector::Ones(2)), LinalgError);
}

TEST(PseudoInverseApply, MatchesNormalEquationsOracle) {
  Rng rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const Matrix m = rng.matrix(6, 5);
    const Vector b = rng.vector(6);
    const MinNormSolution s = pseudo_inverse_apply(m, b);
    const Vector oracle = normal_equations_oracle(m, b);
    EXPECT_LE((s.x - oracle).norm(), 1e-10 * std::max(1.0, oracle.norm()));
    EXPECT_NEAR(s.residual_norm, (m * oracle - b).norm(), 1e-10);
  }
}

TEST(PseudoInverseApply, NormalEquationsAndRowSpaceProperty) {
  Rng rng(7);
  for (int trial = 0; trial < 100; ++trial) {
    const Index rows = rng.integer(2, 9);
    const Index cols = rng.integer(2, 9);
    const Index rank = rng.integer(1, std::min(rows, cols));
    const Matrix m = rng.low_rank(rows, cols, rank);
    const Vector b = rng.vector(rows);
    const MinNormSolution s = pseudo_inverse_apply(m, b);
    const double scale = m.norm() * m.norm() * b.norm();
    EXPECT_LE((m.transpose() * (m * s.x - b)).norm(), 1e-10 * scale);
    // x in R(M^T): orthogonal to every nullspace vector from an independent QR.
    Eigen::ColPivHouseholderQR<Matrix> qr(m.transpose());
    qr.setThreshold(1e-10);
    const Matrix q = qr.householderQ();
    const Matrix null_basis = q.rightCols(cols - qr.rank());
    EXPECT_LE((null_basis.transpose() * s.x).norm(), 1e-10 * std::max(1.0, s.x.norm()));
    EXPECT_EQ(s.rank, rank);
  }
}

TEST(PseudoInverse, BlockDecompositionMatchesDenseReference) {
  Rng rng(13);
  for (int trial = 0; trial < 30; ++trial) {
    // Permuted block-diagonal matrix with zero rows and columns.
    const Index rows = 12;
    const Index cols = 10;
    Matrix m = Matrix::Zero(rows, cols);
    m.block(0, 0, 4, 3) = rng.matrix(4, 3);
    m.block(4, 3, 3, 4) = rng.low_rank(3, 4, 2);
    m.block(7, 7, 3, 2) = rng.matrix(3, 2);
    Eigen::PermutationMatrix<Eigen::Dynamic> pr(rows), pc(cols);
    pr.setIdentity();
    pc.setIdentity();
    std::shuffle(pr.indices().data(), pr.indices().data() + rows, std::mt19937(trial));
    std::shuffle(pc.indices().data(), pc.indices().data() + cols, std::mt19937(trial + 100));
    m = pr * m * pc;

    const PseudoInverse pinv(m);
    const Matrix reference = Eigen::CompleteOrthogonalDecomposition<Matrix>(m).pseudoInverse();
    const Vector b = rng.vector(rows);
    EXPECT_LE((pinv.apply(b) - reference * b).norm(), 1e-10 * b.norm() * reference.norm());
    EXPECT_EQ(pinv.rank(), 3 + 2 + 2);
    EXPECT_NEAR(spectral_norm(m), dense_norm(m), 1e-12 * dense_norm(m));
    EXPECT_NEAR(pinv.sigma_max(), dense_norm(m), 1e-12 * dense_norm(m));

    const Vector x = rng.vector(cols);
    const Matrix reference_adj = Eigen::CompleteOrthogonalDecomposition<Matrix>(m.transpose()).pseudoInverse();
    EXPECT_LE((pinv.apply_adjoint(x) - reference_adj * x).norm(), 1e-10 * x.norm() * reference_adj.norm());

    const Matrix nb = pinv.nullspace_basis();
    EXPECT_EQ(nb.cols(), cols - 7);
    EXPECT_LE((m * nb).norm(), 1e-10 * m.norm());
    EXPECT_LE((nb.transpose() * nb - Matrix::Identity(nb.cols(), nb.cols())).norm(), 1e-12);
    const Matrix cb = pinv.corange_basis();
    EXPECT_LE((cb.transpose() * nb).norm(), 1e-12);
    const Matrix rb = pinv.range_basis();
    EXPECT_LE((m - rb * (rb.transpose() * m)).norm(), 1e-10 * m.norm());
    EXPECT_LE((pinv.scaled_corange() * rb.transpose() - reference).norm(), 1e-10 * reference.norm());
  }
}

TEST(PseudoInverse, ZeroMatrixHasInfiniteInverseNorm) {
  const PseudoInverse pinv(Matrix::Zero(3, 2));
  EXPECT_EQ(pinv.rank(), 0);
  EXPECT_EQ(pinv.sigma_min(), 0.0);
  EXPECT_TRUE(std::isinf(pinv.inverse_norm()));
  EXPECT_EQ(pinv.apply(Vector(Vector::Ones(3))).norm(), 0.0);
  EXPECT_EQ(pinv.nullspace_basis().cols(), 2);
}

TEST(PseudoInverse, RankToleranceTruncatesSmallSingularValues) {
  Matrix m = Matrix::Zero(3, 3);
  m.diagonal() << 1.0, 1e-3, 1e-9;
  EXPECT_EQ(PseudoInverse(m).rank(), 3);
  EXPECT_EQ(PseudoInverse(m, 1e-6).rank(), 2);
  EXPECT_EQ(PseudoInverse(m, 1e-2).rank(), 1);
  EXPECT_THROW(PseudoInverse(m, -1.0), LinalgError);
}

TEST(DefaultRankTol, EpsilonTimesLargerDimension) {
  EXPECT_DOUBLE_EQ(default_rank_tol(4, 7), 7 * std::numeric_limits<double>::epsilon());
}

TEST(OrthonormalRange, RankOneExample) {
  Matrix m(2, 2);
  m << 1, 1, 0, 0;
  const SubspaceBasis b = orthonormal_range(m);
  ASSERT_EQ(b.dim(), 1);
  EXPECT_NEAR(std::abs(b.columns()(0, 0)), 1.0, 1e-15);
  EXPECT_NEAR(b.columns()(1, 0), 0.0, 1e-15);
}

TEST(OrthonormalRange, ZeroMatrixGivesEmptyBasis) {
  const SubspaceBasis b = orthonormal_range(Matrix::Zero(4, 3));
  EXPECT_TRUE(b.is_trivial());
  EXPECT_EQ(b.ambient_dim(), 4);
}

TEST(OrthonormalRange, ProjectorFixesColumns) {
  Rng rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    const Matrix m = rng.matrix(8, 3);
    const SubspaceBasis b = orthonormal_range(m);
    EXPECT_EQ(b.dim(), 3);
    EXPECT_LE((b.projector_matrix() * m - m).norm(), 1e-10 * m.norm());
  }
}

TEST(OrthonormalNullspace, AnnihilatedAndRightDimension) {
  Rng rng(19);
  for (int trial = 0; trial < 30; ++trial) {
    const Index rank = rng.integer(1, 4);
    const Matrix m = rng.low_rank(5, 7, rank);
    const SubspaceBasis n = orthonormal_nullspace(m);
    EXPECT_EQ(n.dim(), 7 - rank);
    EXPECT_LE((m * n.columns()).norm(), 1e-10 * m.norm());
    EXPECT_NO_THROW(SubspaceBasis(n.ambient_dim(), n.columns()));
  }
}

TEST(SubspaceBasis, RejectsNonOrthonormalColumns) {
  Matrix c(3, 2);
  c << 1, 1, 0, 0, 0, 1;
  EXPECT_THROW(SubspaceBasis(3, c), LinalgError);
  EXPECT_THROW(SubspaceBasis(2, Matrix::Identity(3, 1)), LinalgError);
  EXPECT_THROW(SubspaceBasis::coordinate(3, {3}), LinalgError);
}

TEST(ProjectorProductNorm, FortyFiveDegrees) {
  Matrix y(3, 1);
  y << 1, 1, 0;
  y /= std::sqrt(2.0);
  const SubspaceBasis x = SubspaceBasis::coordinate(3, {0});
  EXPECT_NEAR(projector_product_norm(x, SubspaceBasis(3, y)), 1.0 / std::sqrt(2.0), 1e-15);
}

TEST(ProjectorProductNorm, IdenticalOrthogonalAndEmpty) {
  Rng rng(23);
  const SubspaceBasis x = rng.subspace(6, 3);
  EXPECT_NEAR(projector_product_norm(x, x), 1.0, 1e-14);
  const SubspaceBasis a = SubspaceBasis::coordinate(4, {0, 1});
  const SubspaceBasis b = SubspaceBasis::coordinate(4, {2, 3});
  EXPECT_EQ(projector_product_norm(a, b), 0.0);
  EXPECT_EQ(projector_product_norm(a, SubspaceBasis::empty(4)), 0.0);
  EXPECT_EQ(projector_product_norm(SubspaceBasis::empty(4), a), 0.0);
  EXPECT_THROW(projector_product_norm(a, SubspaceBasis::empty(5)), LinalgError);
}

TEST(ProjectorProductNorm, SymmetricAndMatchesProjectorAssembly) {
  Rng rng(29);
  for (int trial = 0; trial < 50; ++trial) {
    const SubspaceBasis x = rng.subspace(9, rng.integer(1, 5));
    const SubspaceBasis y = rng.subspace(9, rng.integer(1, 5));
    const double xy = projector_product_norm(x, y);
    EXPECT_NEAR(xy, projector_product_norm(y, x), 1e-14);
    EXPECT_NEAR(xy, dense_norm(x.projector_matrix() * y.projector_matrix()), 1e-12);
    EXPECT_GE(xy, 0.0);
    EXPECT_LE(xy, 1.0);
  }
}

TEST(ProjectorProductNorm, AngleInequalityOnRandomSamples) {
  // ||x + y||^2 >= (1 - rho^2) ||x||^2 for x in X, y in Y when rho < 1.
  Rng rng(31);
  for (int inst = 0; inst < 10; ++inst) {
    const SubspaceBasis xb = rng.subspace(8, 3);
    const SubspaceBasis yb = rng.subspace(8, 3);
    const double rho = projector_product_norm(xb, yb);
    ASSERT_LT(rho, 1.0);
    for (int s = 0; s < 100; ++s) {
      const Vector x = xb.columns() * rng.vector(3);
      const Vector y = yb.columns() * rng.vector(3) * rng.uniform(0.1, 10.0);
      EXPECT_GE((x + y).squaredNorm(), (1.0 - rho * rho) * x.squaredNorm() - 1e-12 * x.squaredNorm());
    }
  }
}

TEST(ComplementProductNorm, MatchesProjectorAssembly) {
  Rng rng(37);
  for (int trial = 0; trial < 30; ++trial) {
    const SubspaceBasis x = rng.subspace(7, rng.integer(1, 6));
    const SubspaceBasis y = rng.subspace(7, rng.integer(1, 6));
    const Matrix i = Matrix::Identity(7, 7);
    EXPECT_NEAR(complement_product_norm(x, y), dense_norm((i - x.projector_matrix()) * y.projector_matrix()),
                1e-12);
  }
  const SubspaceBasis a = SubspaceBasis::coordinate(3, {0});
  EXPECT_EQ(complement_product_norm(a, SubspaceBasis::empty(3)), 0.0);
  EXPECT_EQ(complement_product_norm(SubspaceBasis::empty(3), a), 1.0);
}

TEST(SubspaceGap, Examples) {
  Rng rng(41);
  const SubspaceBasis x = rng.subspace(5, 2);
  EXPECT_NEAR(subspace_gap(x, x), 0.0, 1e-14);
  EXPECT_NEAR(subspace_gap(SubspaceBasis::coordinate(2, {0}), SubspaceBasis::coordinate(2, {1})), 1.0, 1e-15);
}

TEST(SubspaceGap, MatchesSvdOfProjectorDifference) {
  Rng rng(43);
  for (int trial = 0; trial < 50; ++trial) {
    const SubspaceBasis x = rng.subspace(10, rng.integer(1, 6));
    const SubspaceBasis y = rng.subspace(10, rng.integer(1, 6));
    EXPECT_NEAR(subspace_gap(x, y), dense_norm(x.projector_matrix() - y.projector_matrix()), 1e-12);
  }
}

TEST(Project, IdempotentOrthogonalAndNonexpansive) {
  Rng rng(47);
  for (int trial = 0; trial < 50; ++trial) {
    const SubspaceBasis b = rng.subspace(8, rng.integer(1, 7));
    const Vector v = rng.vector(8);
    const Vector p = project(b, v);
    EXPECT_LE((project(b, p) - p).norm(), 1e-12 * v.norm());
    EXPECT_LE((b.columns().transpose() * (v - p)).norm(), 1e-12 * v.norm());
    EXPECT_LE(p.norm(), v.norm() * (1.0 + 1e-14));
    EXPECT_NEAR(distance_to(b, v), (v - p).norm(), 1e-14);
  }
  EXPECT_EQ(project(SubspaceBasis::empty(3), Vector::Ones(3)).norm(), 0.0);
}

}  // namespace
}  // namespace projreg
