#pragma once

// Concrete operator families realized on finite basis prefixes.

#include "projreg/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace projreg {

/// Row-major bijection between 1-based grid positions (i, j), 1 <= i, j <= side,
/// and flat ambient indices: flat(i, j) = (i - 1) * side + (j - 1).
class GridIndexMap {
 public:
  explicit GridIndexMap(Index side);

  Index side() const { return side_; }
  Index size() const { return side_ * side_; }
  Index flat(Index i, Index j) const;
  std::pair<Index, Index> position(Index flat) const;

 private:
  Index side_;
};

/// A: X -> Y realized as a dense matrix on basis prefixes (rows index Y,
/// columns index X). tail_bound estimates the norm of the discarded part and
/// is reported next to results; it is not used to correct anything.
struct TruncatedOperator {
  Matrix matrix;
  double tail_bound = 0.0;
  std::string label;
  std::optional<GridIndexMap> grid;
  std::vector<std::string> warnings;

  Index x_dim() const { return matrix.cols(); }
  Index y_dim() const { return matrix.rows(); }
};

struct SeidmanParams {
  Vector gamma;  // diagonal, strictly positive
  Vector beta;   // rank-one direction
  Index truncation = 0;
  /// Caller-supplied bounds on gamma_{K+1} and (sum_{k>K} beta_k^2)^{1/2}.
  std::optional<double> gamma_tail;
  std::optional<double> beta_tail;
  /// false: x -> gamma .* x + x_1 beta. true: x -> gamma .* x + <beta, x> e_1.
  bool transpose_rank_one = false;
};

struct DuParams {
  Vector e;  // unit norm
};

struct NeubauerParams {
  double q = 0.5;
  Index side = 0;
  /// c_i for i = 1..c.size(); zero beyond. Must not be longer than side.
  Vector c;
};

TruncatedOperator make_dense(Matrix matrix, std::string label = "dense");

/// A = diag(gamma) + beta (x) e_1.
TruncatedOperator make_seidman(const SeidmanParams& p);

/// A = I - e e^T, an orthogonal projector with a one-dimensional nullspace.
TruncatedOperator make_du(const DuParams& p);

/// (A x)_{ij} = xi_{ij} + q^j xi_{i1} for j >= 2 and 0 for j = 1, on a side x side
/// grid of coefficients.
TruncatedOperator make_neubauer(const NeubauerParams& p);

/// x in N(A) iff xi_{ij} = -q^j xi_{i1} for all stored i and 2 <= j <= side.
bool neubauer_nullspace_test(const NeubauerParams& p, const CoeffVector& x, double tol = 1e-10);

CoeffVector apply(const TruncatedOperator& op, const CoeffVector& x);
CoeffVector apply_adjoint(const TruncatedOperator& op, const CoeffVector& y);

void validate(const NeubauerParams& p);

}  // namespace projreg
