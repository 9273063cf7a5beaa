#include "projreg/solve.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace projreg {

ProjectedProblem::ProjectedProblem(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                   const NestedFamily& fy, Index m, std::optional<double> rank_tol)
    : op_(&op), fx_(&fx), fy_(&fy), rank_tol_(rank_tol), system_(assemble(op, fx, n, fy, m)),
      pinv_(system_.matrix, rank_tol) {}

CoeffVector ProjectedProblem::oblique_apply(const CoeffVector& x) const {
  if (x.size() != op_->x_dim()) {
    throw std::invalid_argument(fmt::format("vector length {} != operator domain {}", x.size(), op_->x_dim()));
  }
  const Vector rhs = op_->matrix(system_.y_indices, Eigen::all) * x;
  return system_.embed_x(pinv_.apply(rhs));
}

CoeffVector ProjectedProblem::pinv_apply(const CoeffVector& y) const {
  return system_.embed_x(pinv_.apply(system_.restrict_y(y)));
}

CoeffVector ProjectedProblem::adjoint_pinv_apply(const CoeffVector& x) const {
  if (x.size() != op_->x_dim()) {
    throw std::invalid_argument(fmt::format("vector length {} != operator domain {}", x.size(), op_->x_dim()));
  }
  return system_.embed_y(pinv_.apply_adjoint(system_.restrict_x(x)));
}

CoeffVector ProjectedProblem::dual_apply(const CoeffVector& x) const {
  const Vector z = pinv_.apply_adjoint(system_.restrict_x(x));
  return op_->matrix(system_.y_indices, Eigen::all).transpose() * z;
}

SubspaceBasis ProjectedProblem::solution_space() const {
  const Matrix local = pinv_.corange_basis();
  Matrix ambient = Matrix::Zero(op_->x_dim(), local.cols());
  ambient(system_.x_indices, Eigen::all) = local;
  return SubspaceBasis::trusted(op_->x_dim(), std::move(ambient));
}

SolutionRecord solve_projected(const ProjectedProblem& problem, const CoeffVector& xdagger,
                               double consistency_tol) {
  const auto& sys = problem.system();
  const auto& pinv = problem.pinv();
  const CoeffVector y = apply(problem.op(), xdagger);
  const Vector rhs = sys.restrict_y(y);
  const Vector local = pinv.apply(rhs);

  SolutionRecord rec;
  rec.n = sys.n;
  rec.m = sys.m;
  rec.x = sys.embed_x(local);
  rec.norm = rec.x.norm();
  rec.error_to_reference = (rec.x - xdagger).norm();
  rec.residual = (sys.matrix * local - rhs).norm();
  rec.sigma_min = pinv.sigma_min();
  rec.kappa = pinv.inverse_norm();
  rec.rank = pinv.rank();
  rec.tail_bound = problem.op().tail_bound;

  const Matrix v = pinv.corange_basis();
  const double leak = (local - v * (v.transpose() * local)).norm();
  rec.consistent = leak <= consistency_tol * std::max(1.0, rec.norm);
  return rec;
}

SolutionRecord solve_projected(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                               const NestedFamily& fy, Index m, const CoeffVector& xdagger,
                               std::optional<double> rank_tol) {
  return solve_projected(ProjectedProblem(op, fx, n, fy, m, rank_tol), xdagger);
}

ObliqueParts oblique_decompose_primal(const ProjectedProblem& problem, const CoeffVector& x, double tol) {
  const auto& sys = problem.system();
  ObliqueParts parts;
  parts.v = problem.oblique_apply(x);
  parts.u = x - parts.v;

  // u must satisfy the projected normal equations: A_{n,m}^* A u = 0.
  const auto rows = problem.op().matrix(sys.y_indices, Eigen::all);
  const Vector normal = sys.matrix.transpose() * (rows * parts.u);
  const double scale = std::max(problem.pinv().sigma_max() * rows.norm() * x.norm(), 1e-300);
  parts.defect = normal.norm() / scale;
  // v must lie in R(A_{n,m}^*): zero outside X_n and inside the corange.
  const Vector local = sys.restrict_x(parts.v);
  const Matrix basis = problem.pinv().corange_basis();
  const double outside = (parts.v - sys.embed_x(local)).norm();
  const double leak = (local - basis * (basis.transpose() * local)).norm();
  parts.defect = std::max({parts.defect, (outside + leak) / std::max(1.0, x.norm())});
  parts.consistent = parts.defect <= tol;
  return parts;
}

ObliqueParts oblique_decompose_dual(const ProjectedProblem& problem, const CoeffVector& x, double tol) {
  const auto& sys = problem.system();
  ObliqueParts parts;
  parts.v_bar = problem.dual_apply(x);
  const SubspaceBasis w = nullspace_within(problem.op(), problem.x_family(), sys.n, problem.y_family(), sys.m,
                                           problem.rank_tol());
  parts.w_bar = project(w, x);
  parts.q_bar = x - parts.v_bar - parts.w_bar;

  const double scale = std::max(1.0, x.norm());
  const double in_xn = sys.restrict_x(parts.q_bar).norm() / scale;
  const double cross = std::abs(parts.w_bar.dot(parts.q_bar)) / (scale * scale);
  parts.defect = std::max(in_xn, cross);
  parts.consistent = parts.defect <= tol;
  return parts;
}

ObliqueParts oblique_decompose_primal(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                      const NestedFamily& fy, Index m, const CoeffVector& x) {
  return oblique_decompose_primal(ProjectedProblem(op, fx, n, fy, m), x);
}

ObliqueParts oblique_decompose_dual(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                    const NestedFamily& fy, Index m, const CoeffVector& x) {
  return oblique_decompose_dual(ProjectedProblem(op, fx, n, fy, m), x);
}

double check_cor10(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy, Index m,
                   Index k, int trials, std::uint64_t seed) {
  if (k < 1 || (n != kInfinity && k > n) || k > fx.max_level()) {
    throw std::invalid_argument(fmt::format("check_cor10: need 1 <= k <= n, got k = {}, n = {}", k,
                                            level_to_string(n)));
  }
  const ProjectedProblem problem(op, fx, n, fy, m);
  const SubspaceBasis w = nullspace_within(op, fx, n, fy, m);
  const auto& pk_idx = fx.indices(k);
  auto restrict_to_k = [&](const CoeffVector& v) {
    CoeffVector out = CoeffVector::Zero(v.size());
    out(pk_idx) = v(pk_idx);
    return out;
  };

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    CoeffVector x(op.x_dim());
    for (Index i = 0; i < x.size(); ++i) x(i) = normal(rng);
    x.normalize();
    const CoeffVector pkx = restrict_to_k(x);

    // P_k Pi_W x  vs  P_k x - P_k A^* (A_{n,m}^*)^+ x
    const CoeffVector lhs1 = restrict_to_k(project(w, x));
    const CoeffVector rhs1 = pkx - restrict_to_k(apply_adjoint(op, problem.adjoint_pinv_apply(x)));
    // Pi_W P_k x  vs  P_k x - A_{n,m}^+ A P_k x
    const CoeffVector lhs2 = project(w, pkx);
    const CoeffVector rhs2 = pkx - problem.oblique_apply(pkx);

    worst = std::max({worst, (lhs1 - rhs1).norm(), (lhs2 - rhs2).norm()});
  }
  return worst;
}

}  // namespace projreg
