#pragma once

// Nested trial/test spaces X_n, Y_m given as selections of ambient basis
// vectors, and assembly of the projected operator A_{n,m} = Q_m A P_n.

#include "projreg/operators.hpp"

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

namespace projreg {

/// Level sentinel: P = I (resp. Q = I) on the whole truncation.
inline constexpr Index kInfinity = std::numeric_limits<Index>::max();

std::string level_to_string(Index level);

/// Monotone schedule level -> ordered ambient indices, levels 1..max_level().
class NestedFamily {
 public:
  /// Validates nestedness and that the last level covers every ambient index.
  NestedFamily(Index ambient_dim, std::vector<std::vector<Index>> schedule, std::string kind);

  Index ambient_dim() const { return ambient_dim_; }
  Index max_level() const { return static_cast<Index>(schedule_.size()); }
  const std::string& kind() const { return kind_; }

  /// Indices of level n; kInfinity selects all ambient indices.
  const std::vector<Index>& indices(Index level) const;
  /// Ambient indices not selected at level n.
  std::vector<Index> complement(Index level) const;

 private:
  Index ambient_dim_;
  std::vector<std::vector<Index>> schedule_;
  std::vector<Index> all_;
  std::string kind_;
};

/// schedule(n) = first min(n * step, ambient_dim) indices.
NestedFamily coordinate_family(Index ambient_dim, Index step = 1);

/// schedule(n) = flat indices of the n x n corner of a side x side grid.
NestedFamily grid_family(Index side);

/// Coordinate basis of X_n.
SubspaceBasis projector(const NestedFamily& family, Index level);

/// A_{n,m} between the selected bases: |Y_m| x |X_n| block of the operator.
struct ProjectedSystem {
  Matrix matrix;
  std::vector<Index> x_indices;
  std::vector<Index> y_indices;
  Index x_ambient = 0;
  Index y_ambient = 0;
  Index n = 0;
  Index m = 0;

  /// Coefficients on X_n -> ambient X coordinates (zero elsewhere).
  CoeffVector embed_x(const Vector& local) const;
  CoeffVector embed_y(const Vector& local) const;
  /// Ambient coordinates -> coefficients on X_n (the action of P_n).
  Vector restrict_x(const CoeffVector& ambient) const;
  Vector restrict_y(const CoeffVector& ambient) const;
};

ProjectedSystem assemble(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy,
                         Index m);

/// Orthonormal basis of N(Q_m A) cap X_n in ambient X coordinates.
SubspaceBasis nullspace_within(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                               const NestedFamily& fy, Index m, std::optional<double> rank_tol = std::nullopt);

}  // namespace projreg
