#pragma once

// Minimum-norm least-squares solutions x_{n,m} = A_{n,m}^+ A x^dagger and the
// oblique decompositions of X induced by A_{n,m}^* A and A^* A_{n,m}.

#include "projreg/discretization.hpp"

#include <cstdint>
#include <optional>

namespace projreg {

/// A_{n,m} together with its factorized pseudoinverse.
///
/// Holds references to the operator and families, which must outlive it.
class ProjectedProblem {
 public:
  ProjectedProblem(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy, Index m,
                   std::optional<double> rank_tol = std::nullopt);

  const TruncatedOperator& op() const { return *op_; }
  const NestedFamily& x_family() const { return *fx_; }
  const NestedFamily& y_family() const { return *fy_; }
  const ProjectedSystem& system() const { return system_; }
  const PseudoInverse& pinv() const { return pinv_; }
  std::optional<double> rank_tol() const { return rank_tol_; }
  Index n() const { return system_.n; }
  Index m() const { return system_.m; }

  /// A_{n,m}^+ A x in ambient X coordinates.
  CoeffVector oblique_apply(const CoeffVector& x) const;
  /// A_{n,m}^+ y for ambient y.
  CoeffVector pinv_apply(const CoeffVector& y) const;
  /// (A_{n,m}^*)^+ x in ambient Y coordinates; supported in Y_m.
  CoeffVector adjoint_pinv_apply(const CoeffVector& x) const;
  /// A^* (A_{n,m}^*)^+ x in ambient X coordinates.
  CoeffVector dual_apply(const CoeffVector& x) const;

  /// Orthonormal basis of R(A_{n,m}^*) = N(A_{n,m})^perp, ambient X coordinates.
  SubspaceBasis solution_space() const;

 private:
  const TruncatedOperator* op_;
  const NestedFamily* fx_;
  const NestedFamily* fy_;
  std::optional<double> rank_tol_;
  ProjectedSystem system_;
  PseudoInverse pinv_;
};

struct SolutionRecord {
  Index n = 0;
  Index m = 0;
  CoeffVector x;
  double norm = 0.0;
  std::optional<double> error_to_reference;
  /// ||A_{n,m} x - Q_m A x^dagger||.
  double residual = 0.0;
  double sigma_min = 0.0;
  /// ||A_{n,m}^+|| = 1 / sigma_min; +inf for a zero projected matrix.
  double kappa = 0.0;
  Index rank = 0;
  double tail_bound = 0.0;
  /// False when x left N(A_{n,m})^perp beyond tolerance.
  bool consistent = true;
};

SolutionRecord solve_projected(const ProjectedProblem& problem, const CoeffVector& xdagger,
                               double consistency_tol = 1e-10);
SolutionRecord solve_projected(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                               const NestedFamily& fy, Index m, const CoeffVector& xdagger,
                               std::optional<double> rank_tol = std::nullopt);

/// x = v + u with v in R(A_{n,m}^* A), u in N(A_{n,m}^* A); and
/// x = v_bar + w_bar + q_bar with v_bar in R(A^* A_{n,m}), w_bar in
/// N(Q_m A) cap X_n, q_bar in X_n^perp.
struct ObliqueParts {
  CoeffVector v;
  CoeffVector u;
  CoeffVector v_bar;
  CoeffVector w_bar;
  CoeffVector q_bar;
  /// Largest membership defect found while checking the parts.
  double defect = 0.0;
  bool consistent = true;
};

ObliqueParts oblique_decompose_primal(const ProjectedProblem& problem, const CoeffVector& x,
                                      double tol = 1e-10);
ObliqueParts oblique_decompose_dual(const ProjectedProblem& problem, const CoeffVector& x, double tol = 1e-10);

ObliqueParts oblique_decompose_primal(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                      const NestedFamily& fy, Index m, const CoeffVector& x);
ObliqueParts oblique_decompose_dual(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                    const NestedFamily& fy, Index m, const CoeffVector& x);

/// Maximum deviation, over random unit vectors, of the two identities
///   P_k Pi_W = P_k - A_k^* (A_{n,m}^*)^+   and   Pi_W P_k = P_k - A_{n,m}^+ A_k
/// with W = N(Q_m A) cap X_n and A_k = A P_k, for k <= n.
double check_cor10(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy, Index m,
                   Index k, int trials, std::uint64_t seed = 1);

}  // namespace projreg
