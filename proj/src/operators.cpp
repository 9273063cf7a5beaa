#include "projreg/operators.hpp"

#include <fmt/format.h>

#include <cmath>
#include <stdexcept>

namespace projreg {

GridIndexMap::GridIndexMap(Index side) : side_(side) {
  if (side < 1) throw std::invalid_argument(fmt::format("grid side must be positive, got {}", side));
}

Index GridIndexMap::flat(Index i, Index j) const {
  if (i < 1 || i > side_ || j < 1 || j > side_) {
    throw std::out_of_range(fmt::format("grid position ({}, {}) outside 1..{}", i, j, side_));
  }
  return (i - 1) * side_ + (j - 1);
}

std::pair<Index, Index> GridIndexMap::position(Index flat) const {
  if (flat < 0 || flat >= size()) {
    throw std::out_of_range(fmt::format("flat index {} outside grid of size {}", flat, size()));
  }
  return {flat / side_ + 1, flat % side_ + 1};
}

TruncatedOperator make_dense(Matrix matrix, std::string label) {
  if (!all_finite(matrix)) throw std::invalid_argument("dense operator has non-finite entries");
  TruncatedOperator op;
  op.matrix = std::move(matrix);
  op.label = std::move(label);
  return op;
}

TruncatedOperator make_seidman(const SeidmanParams& p) {
  const Index k = p.truncation > 0 ? p.truncation : p.gamma.size();
  if (k < 1) throw std::invalid_argument("seidman: truncation must be positive");
  if (p.gamma.size() != k || p.beta.size() != k) {
    throw std::invalid_argument(fmt::format("seidman: gamma has {} and beta has {} entries, truncation is {}",
                                            p.gamma.size(), p.beta.size(), k));
  }
  for (Index i = 0; i < k; ++i) {
    if (!(p.gamma(i) > 0.0)) {
      throw std::invalid_argument(fmt::format("seidman: gamma_{} = {} is not positive", i + 1, p.gamma(i)));
    }
  }
  if (!all_finite(p.beta)) throw std::invalid_argument("seidman: beta has non-finite entries");

  TruncatedOperator op;
  op.matrix = p.gamma.asDiagonal();
  if (p.transpose_rank_one) {
    op.matrix.row(0) += p.beta.transpose();
  } else {
    op.matrix.col(0) += p.beta;
  }
  if (!p.gamma_tail && !p.beta_tail) {
    op.warnings.push_back("seidman: no tail bounds supplied, tail_bound set to 0");
  }
  op.tail_bound = std::max(p.gamma_tail.value_or(0.0), p.beta_tail.value_or(0.0));
  op.label = fmt::format("seidman(K={}{})", k, p.transpose_rank_one ? ", transposed" : "");
  return op;
}

TruncatedOperator make_du(const DuParams& p) {
  if (p.e.size() < 1) throw std::invalid_argument("du: e must be non-empty");
  if (!all_finite(p.e) || std::abs(p.e.norm() - 1.0) > 1e-12) {
    throw std::invalid_argument(fmt::format("du: e must have unit norm, got {}", p.e.norm()));
  }
  TruncatedOperator op;
  const Index k = p.e.size();
  op.matrix = Matrix::Identity(k, k) - p.e * p.e.transpose();
  op.label = fmt::format("du(K={})", k);
  return op;
}

void validate(const NeubauerParams& p) {
  if (!(p.q > 0.0 && p.q < 1.0)) {
    throw std::invalid_argument(fmt::format("neubauer: q = {} must lie in (0, 1)", p.q));
  }
  if (p.side < 2) throw std::invalid_argument(fmt::format("neubauer: side = {} must be at least 2", p.side));
  if (p.c.size() > p.side) {
    throw std::invalid_argument(fmt::format("neubauer: {} coefficients c_i exceed side {}", p.c.size(), p.side));
  }
  if (!all_finite(p.c)) throw std::invalid_argument("neubauer: c has non-finite entries");
}

TruncatedOperator make_neubauer(const NeubauerParams& p) {
  validate(p);
  const GridIndexMap grid(p.side);
  TruncatedOperator op;
  op.matrix = Matrix::Zero(grid.size(), grid.size());
  for (Index i = 1; i <= p.side; ++i) {
    for (Index j = 2; j <= p.side; ++j) {
      const Index row = grid.flat(i, j);
      op.matrix(row, row) = 1.0;
      op.matrix(row, grid.flat(i, 1)) = std::pow(p.q, static_cast<double>(j));
    }
  }
  // Discarded rows j > side of column (i, 1): (sum_{j>side} q^{2j})^{1/2}.
  op.tail_bound = std::pow(p.q, static_cast<double>(p.side + 1)) / std::sqrt(1.0 - p.q * p.q);
  op.grid = grid;
  op.label = fmt::format("neubauer(q={}, side={})", p.q, p.side);
  return op;
}

bool neubauer_nullspace_test(const NeubauerParams& p, const CoeffVector& x, double tol) {
  validate(p);
  const GridIndexMap grid(p.side);
  if (x.size() != grid.size()) {
    throw std::invalid_argument(fmt::format("neubauer: vector length {} does not match grid {}x{}", x.size(),
                                            p.side, p.side));
  }
  const double scale = std::max(1.0, x.norm());
  for (Index i = 1; i <= p.side; ++i) {
    const double first = x(grid.flat(i, 1));
    for (Index j = 2; j <= p.side; ++j) {
      const double expected = -std::pow(p.q, static_cast<double>(j)) * first;
      if (std::abs(x(grid.flat(i, j)) - expected) > tol * scale) return false;
    }
  }
  return true;
}

CoeffVector apply(const TruncatedOperator& op, const CoeffVector& x) {
  if (x.size() != op.x_dim()) {
    throw std::invalid_argument(fmt::format("apply: vector length {} != operator domain {}", x.size(), op.x_dim()));
  }
  return op.matrix * x;
}

CoeffVector apply_adjoint(const TruncatedOperator& op, const CoeffVector& y) {
  if (y.size() != op.y_dim()) {
    throw std::invalid_argument(
        fmt::format("apply_adjoint: vector length {} != operator codomain {}", y.size(), op.y_dim()));
  }
  return op.matrix.transpose() * y;
}

}  // namespace projreg
