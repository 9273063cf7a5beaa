#pragma once

// Dense real linear algebra kernels: SVD, pseudoinverse, orthonormal bases of
// ranges and nullspaces, and the subspace-angle quantities used by the
// convergence diagnostics.

#include <Eigen/Dense>

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace projreg {

using Index = Eigen::Index;
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;

/// Coefficients of an element against a fixed orthonormal basis prefix.
using CoeffVector = Vector;

class LinalgError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True when every entry is finite.
bool all_finite(const Matrix& m);
bool all_finite(const Vector& v);

/// Default relative rank tolerance: machine epsilon times max(rows, cols).
double default_rank_tol(Index rows, Index cols);

/// Thin singular value decomposition M = U diag(s) V^T with s non-increasing.
struct SvdFactors {
  Matrix left_vectors;     // rows x k
  Matrix right_vectors;    // cols x k
  Vector singular_values;  // k = min(rows, cols)
};

SvdFactors svd(const Matrix& m);

/// Orthonormal set of columns in a fixed ambient coordinate space.
///
/// A zero-dimensional basis is a legal value and represents the trivial
/// subspace {0}.
class SubspaceBasis {
 public:
  /// Validates that the columns are orthonormal to 1e-12.
  SubspaceBasis(Index ambient_dim, Matrix columns);

  static SubspaceBasis empty(Index ambient_dim);
  static SubspaceBasis coordinate(Index ambient_dim, const std::vector<Index>& indices);
  /// Skips the orthonormality check; for columns produced by SVD or QR.
  static SubspaceBasis trusted(Index ambient_dim, Matrix columns);

  Index ambient_dim() const { return ambient_dim_; }
  Index dim() const { return columns_.cols(); }
  bool is_trivial() const { return columns_.cols() == 0; }
  const Matrix& columns() const { return columns_; }

  /// Orthogonal projector as a dense ambient x ambient matrix.
  Matrix projector_matrix() const;

 private:
  struct Unchecked {};
  SubspaceBasis(Index ambient_dim, Matrix columns, Unchecked);

  Index ambient_dim_;
  Matrix columns_;
};

/// Minimum-norm least-squares solution of M x = b.
struct MinNormSolution {
  Vector x;
  Vector singular_values;  // all min(rows, cols) values, non-increasing
  Index rank = 0;
  double residual_norm = 0.0;
};

/// Truncated-SVD pseudoinverse of a fixed matrix.
///
/// Rows and columns that are identically zero are dropped, and the remaining
/// sparsity pattern is split into connected row/column components that are
/// factorized independently. Both steps are exact: the matrix is block
/// diagonal under a permutation and the pseudoinverse respects the blocks.
/// Singular values at or below rank_tol * sigma_max are treated as zero.
class PseudoInverse {
 public:
  explicit PseudoInverse(const Matrix& m, std::optional<double> rank_tol = std::nullopt);

  Index rows() const { return rows_; }
  Index cols() const { return cols_; }
  Index rank() const { return rank_; }
  double sigma_max() const { return sigma_max_; }
  /// Smallest retained singular value; 0 when the matrix is numerically zero.
  double sigma_min() const { return sigma_min_; }
  /// Norm of the pseudoinverse, 1/sigma_min; +inf for the zero matrix.
  double inverse_norm() const;
  Vector singular_values() const;

  /// M^+ b.
  Vector apply(const Vector& b) const;
  Matrix apply(const Matrix& b) const;
  /// (M^T)^+ x, the minimum-norm least-squares solution of M^T z = x.
  Vector apply_adjoint(const Vector& x) const;

  /// Orthonormal basis of R(M) in row coordinates.
  Matrix range_basis() const;
  /// Orthonormal basis of R(M^T) = N(M)^perp in column coordinates.
  Matrix corange_basis() const;
  /// Orthonormal basis of N(M) in column coordinates.
  Matrix nullspace_basis() const;
  /// V diag(1/s) in column coordinates, so that M^+ = scaled_corange() * range_basis()^T.
  Matrix scaled_corange() const;

 private:
  struct Block {
    std::vector<Index> rows;
    std::vector<Index> cols;
    Matrix u;  // retained left singular vectors
    Matrix v;  // retained right singular vectors
    Vector s;  // retained singular values
    Vector dropped;  // singular values below threshold
  };

  Index rows_;
  Index cols_;
  Index rank_ = 0;
  double sigma_max_ = 0.0;
  double sigma_min_ = 0.0;
  std::vector<Block> blocks_;
  std::vector<Index> zero_cols_;
};

MinNormSolution pseudo_inverse_apply(const Matrix& m, const Vector& b,
                                     std::optional<double> rank_tol = std::nullopt);

SubspaceBasis orthonormal_range(const Matrix& m, std::optional<double> rank_tol = std::nullopt);
SubspaceBasis orthonormal_nullspace(const Matrix& m, std::optional<double> rank_tol = std::nullopt);

/// Largest singular value, exploiting block structure.
double spectral_norm(const Matrix& m);

/// ||Pi_X Pi_Y||, the cosine of the minimal principal angle. 0 if either is trivial.
double projector_product_norm(const SubspaceBasis& x, const SubspaceBasis& y);

/// ||(I - Pi_X) Pi_Y||, i.e. projector_product_norm(X^perp, Y) without forming
/// a basis of X^perp.
double complement_product_norm(const SubspaceBasis& x, const SubspaceBasis& y);

/// gap(X, Y) = ||Pi_X - Pi_Y||.
double subspace_gap(const SubspaceBasis& x, const SubspaceBasis& y);

/// Orthogonal projection of v onto span(basis).
CoeffVector project(const SubspaceBasis& basis, const CoeffVector& v);

/// Euclidean distance from v to span(basis).
double distance_to(const SubspaceBasis& basis, const CoeffVector& v);

}  // namespace projreg
