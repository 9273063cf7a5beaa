#pragma once

// Computable, per-level versions of the convergence conditions for projection
// methods. Every "sup over n, m" condition is reported as a value at one level;
// sweeps collect profiles and maxima over the computed window and never claim
// an infinite supremum.

#include "projreg/solve.hpp"

#include <optional>
#include <string>
#include <vector>

namespace projreg {

/// ||A_{n,m}^+ A|_K|| (columns restricted to the first K ambient coordinates)
/// and the variant ||A_{n,m}^+ A (I - P_n)|_K||.
struct UbcProxy {
  double full = 0.0;
  double off_trial = 0.0;
};

UbcProxy ubc_proxy(const ProjectedProblem& problem, std::optional<Index> k = std::nullopt);
UbcProxy ubc_proxy(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy, Index m,
                   std::optional<Index> k = std::nullopt);

/// Projector-product norms of the three angle conditions:
///   rho_primal  = ||Pi_{N(A_{n,m}^* A)} Pi_{R(A_{n,m}^* A)}||
///   rho_dual    = ||Pi_{N(A^* A_{n,m})} Pi_{R(A^* A_{n,m})}||
///   rho_condadj = ||(I - P_n) Pi_{R(A^* A_{n,m})}||
/// A zero projected operator makes the ranges trivial; values are then 0 and
/// `degenerate` is set.
struct AngleConditions {
  double rho_primal = 0.0;
  double rho_dual = 0.0;
  double rho_condadj = 0.0;
  bool degenerate = false;
};

AngleConditions angle_conditions(const ProjectedProblem& problem);
AngleConditions angle_conditions(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                 const NestedFamily& fy, Index m);

/// sup_z ||B z|| / ||D z|| over z with D z != 0, computed as ||B D^+||.
/// Infinite when N(D) is not contained in N(B).
double ratio_sup(const Matrix& b, const Matrix& d, double tol = 1e-10);

/// With F = A^* Q_m A P_n restricted to X_n, B = (I - P_n) F and D = P_n F:
/// eta_oneA = sup ||Bz|| / ||Fz||, c_threeA = sup ||Bz|| / ||Dz||.
struct RatioConditions {
  double eta_oneA = 0.0;
  double c_threeA = 0.0;
  bool vaha_ok = true;
};

RatioConditions ratio_conditions(const ProjectedProblem& problem);
RatioConditions ratio_conditions(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                 const NestedFamily& fy, Index m);

/// Upper bound on min_{u in X_n} (||x - u|| + ||A_{n,m}^+ A (x - u)||) / ||x||.
double natterer_value(const ProjectedProblem& problem, const CoeffVector& x);
double natterer_value(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy,
                      Index m, const CoeffVector& x);

/// kappa = ||A_{n,m}^+||;
///   global_product = ||A (I - P_n)|| kappa
///   local_product  = ||A (I - P_n) x|| kappa
///   thisaa_product = ||(I - P_n) A^* Q_m|| kappa
struct SimpleProducts {
  double kappa = 0.0;
  double global_product = 0.0;
  std::optional<double> local_product;
  double thisaa_product = 0.0;
};

SimpleProducts simple_products(const ProjectedProblem& problem, const std::optional<CoeffVector>& x = std::nullopt);

/// ||A^* (A_{n,m}^*)^+ x_{n,m}||.
double luecke_hickey(const ProjectedProblem& problem, const CoeffVector& x_nm);
double luecke_hickey(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy,
                     Index m, const CoeffVector& x_nm);

/// ||P_n Pi_{N(A_{n,m}^* A)}||.
double wiederwas_norm(const ProjectedProblem& problem);

/// gap(R(A^* A P_n), R(A^+ A P_n)). Reported as an experiment only.
double range_gap(const TruncatedOperator& op, const NestedFamily& fx, Index n);

struct SpaceLevel {
  Index n = 0;
  Index intersection_dim = 0;            // dim(N(A) cap X_n)
  std::vector<double> distances;         // dist(z, N(A) cap X_n) per nullspace vector z
  double max_distance = 0.0;
};

struct SpaceProbe {
  Index nullspace_dim = 0;
  std::vector<SpaceLevel> levels;
  /// true: every distance is below tol at the last probed level.
  bool holds = true;
  std::string verdict() const { return holds ? "HOLDS-at-truncation" : "FAILS-at-truncation"; }
};

SpaceProbe space_condition_probe(const TruncatedOperator& op, const NestedFamily& fx, Index max_n,
                                 double tol = 1e-10);

/// Distances for selected levels only, reusing a nullspace basis.
SpaceLevel space_level(const TruncatedOperator& op, const NestedFamily& fx, Index n, const SubspaceBasis& null_a);

struct LocalOptions {
  double strong_tol = 1e-6;
  /// Bounded over the window when the maximum norm over the later half does not
  /// exceed growth_factor times the maximum over the earlier half.
  double growth_factor = 2.0;
};

struct LocalVerdict {
  bool bounded = false;
  double sup_norm = 0.0;
  double limsup_norm = 0.0;
  double reference_norm = 0.0;
  bool strong_criterion_met = false;
  /// max_t |<x_{n,m} - x_ref, t>| per record, and its last/min value.
  std::vector<double> weak_proxy_series;
  double weak_proxy = 0.0;
  double weak_proxy_min = 0.0;
  /// ||Pi_{N(A)} x_{n,m}|| per record; empty when no nullspace basis is given.
  std::vector<double> nullspace_drift;
};

/// Coordinate functionals e_0, ..., e_{count-1}.
std::vector<CoeffVector> coordinate_functionals(Index ambient_dim, Index count = 25);

double weak_proxy(const CoeffVector& x, const CoeffVector& x_ref, const std::vector<CoeffVector>& functionals);

LocalVerdict classify_local(const std::vector<SolutionRecord>& sweep, const CoeffVector& x_ref,
                            const std::vector<CoeffVector>& functionals,
                            const std::optional<SubspaceBasis>& null_a = std::nullopt,
                            const LocalOptions& options = {});

}  // namespace projreg
