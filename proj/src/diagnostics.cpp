#include "projreg/diagnostics.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace projreg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// A^* Q_m A P_n restricted to X_n: N_X x |X_n|. Its range is R(A^* A_{n,m}),
// and N(A_{n,m}^* A) is its orthogonal complement.
Matrix normal_block(const ProjectedProblem& problem) {
  const auto& sys = problem.system();
  return problem.op().matrix(sys.y_indices, Eigen::all).transpose() * sys.matrix;
}

double times_kappa(double factor, double kappa) { return factor == 0.0 ? 0.0 : factor * kappa; }

}  // namespace

UbcProxy ubc_proxy(const ProjectedProblem& problem, std::optional<Index> k) {
  const auto& sys = problem.system();
  const Index ambient = problem.op().x_dim();
  const Index cols = k.value_or(ambient);
  const Index span = sys.x_indices.empty() ? 0 : *std::max_element(sys.x_indices.begin(), sys.x_indices.end()) + 1;
  if (cols > ambient || cols < span) {
    throw std::invalid_argument(fmt::format("ubc_proxy: K = {} must cover X_n (needs >= {}) and not exceed {}",
                                            cols, span, ambient));
  }
  const Matrix image = problem.pinv().apply(Matrix(problem.op().matrix(sys.y_indices, Eigen::seqN(0, cols))));

  std::vector<char> in_trial(static_cast<std::size_t>(ambient), 0);
  for (Index i : sys.x_indices) in_trial[i] = 1;
  std::vector<Index> off;
  for (Index j = 0; j < cols; ++j) {
    if (!in_trial[j]) off.push_back(j);
  }
  UbcProxy out;
  out.full = spectral_norm(image);
  out.off_trial = off.empty() ? 0.0 : spectral_norm(image(Eigen::all, off));
  return out;
}

UbcProxy ubc_proxy(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy, Index m,
                   std::optional<Index> k) {
  return ubc_proxy(ProjectedProblem(op, fx, n, fy, m), k);
}

AngleConditions angle_conditions(const ProjectedProblem& problem) {
  AngleConditions out;
  if (problem.pinv().rank() == 0) {
    out.degenerate = true;
    return out;
  }
  const Index ambient = problem.op().x_dim();
  // R(A_{n,m}^* A) = R(A_{n,m}^*); N(A^* A_{n,m}) is its complement.
  const SubspaceBasis solution = problem.solution_space();
  // R(A^* A_{n,m}); N(A_{n,m}^* A) is its complement.
  const SubspaceBasis normal = orthonormal_range(normal_block(problem), problem.rank_tol());
  const SubspaceBasis trial = SubspaceBasis::coordinate(ambient, problem.system().x_indices);

  out.rho_primal = complement_product_norm(normal, solution);
  out.rho_dual = complement_product_norm(solution, normal);
  out.rho_condadj = complement_product_norm(trial, normal);
  return out;
}

AngleConditions angle_conditions(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                 const NestedFamily& fy, Index m) {
  return angle_conditions(ProjectedProblem(op, fx, n, fy, m));
}

double ratio_sup(const Matrix& b, const Matrix& d, double tol) {
  if (b.cols() != d.cols()) {
    throw std::invalid_argument(fmt::format("ratio_sup: B has {} columns, D has {}", b.cols(), d.cols()));
  }
  const double b_norm = spectral_norm(b);
  if (b_norm == 0.0) return 0.0;
  const PseudoInverse pd(d);
  const Matrix null_d = pd.nullspace_basis();
  if (null_d.cols() > 0 && spectral_norm(b * null_d) > tol * b_norm) return kInf;
  // ||B D^+|| = ||B V diag(1/s) U^T|| = ||B V diag(1/s)||.
  return spectral_norm(b * pd.scaled_corange());
}

RatioConditions ratio_conditions(const ProjectedProblem& problem) {
  const auto& sys = problem.system();
  const Matrix f = normal_block(problem);
  const std::vector<Index> off = problem.x_family().complement(sys.n);
  const Matrix b = f(off, Eigen::all);
  const Matrix d = f(sys.x_indices, Eigen::all);

  RatioConditions out;
  out.eta_oneA = ratio_sup(b, f);
  out.c_threeA = ratio_sup(b, d);
  out.vaha_ok = std::isfinite(out.c_threeA);
  return out;
}

RatioConditions ratio_conditions(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                                 const NestedFamily& fy, Index m) {
  return ratio_conditions(ProjectedProblem(op, fx, n, fy, m));
}

double natterer_value(const ProjectedProblem& problem, const CoeffVector& x) {
  const double x_norm = x.norm();
  if (x_norm == 0.0) return 0.0;
  const auto& sys = problem.system();
  const Matrix& a = problem.op().matrix;

  auto objective = [&](const CoeffVector& u) {
    const CoeffVector diff = x - u;
    return diff.norm() + problem.oblique_apply(diff).norm();
  };

  // Smooth surrogate ||x - u||^2 + kappa^2 ||A (x - u)||^2 over u in X_n.
  double kappa = problem.pinv().inverse_norm();
  if (!std::isfinite(kappa)) kappa = 0.0;
  const Matrix a_trial = a(Eigen::all, sys.x_indices);
  const Index k = a_trial.cols();
  const Matrix lhs = Matrix::Identity(k, k) + kappa * kappa * (a_trial.transpose() * a_trial);
  const Vector rhs = sys.restrict_x(x) + kappa * kappa * (a_trial.transpose() * (a * x));
  const CoeffVector u_smooth = sys.embed_x(lhs.llt().solve(rhs));

  const CoeffVector u_proj = sys.embed_x(sys.restrict_x(x));
  const CoeffVector u_sol = problem.oblique_apply(x);
  return std::min({objective(u_smooth), objective(u_proj), objective(u_sol)}) / x_norm;
}

double natterer_value(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy,
                      Index m, const CoeffVector& x) {
  return natterer_value(ProjectedProblem(op, fx, n, fy, m), x);
}

SimpleProducts simple_products(const ProjectedProblem& problem, const std::optional<CoeffVector>& x) {
  const auto& sys = problem.system();
  const Matrix& a = problem.op().matrix;
  const std::vector<Index> off = problem.x_family().complement(sys.n);

  SimpleProducts out;
  out.kappa = problem.pinv().inverse_norm();
  const Matrix a_off = a(Eigen::all, off);
  out.global_product = times_kappa(spectral_norm(a_off), out.kappa);
  out.thisaa_product = times_kappa(spectral_norm(a_off(sys.y_indices, Eigen::all)), out.kappa);
  if (x) {
    const Vector tail = (*x)(off);
    out.local_product = times_kappa((a_off * tail).norm(), out.kappa);
  }
  return out;
}

double luecke_hickey(const ProjectedProblem& problem, const CoeffVector& x_nm) {
  return problem.dual_apply(x_nm).norm();
}

double luecke_hickey(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy,
                     Index m, const CoeffVector& x_nm) {
  return luecke_hickey(ProjectedProblem(op, fx, n, fy, m), x_nm);
}

double wiederwas_norm(const ProjectedProblem& problem) {
  const Index ambient = problem.op().x_dim();
  const SubspaceBasis trial = SubspaceBasis::coordinate(ambient, problem.system().x_indices);
  if (problem.pinv().rank() == 0) return trial.is_trivial() ? 0.0 : 1.0;
  const SubspaceBasis normal = orthonormal_range(normal_block(problem), problem.rank_tol());
  // ||P_n Pi_{N}|| = ||Pi_{N} P_n|| with N = normal^perp.
  return complement_product_norm(normal, trial);
}

double range_gap(const TruncatedOperator& op, const NestedFamily& fx, Index n) {
  const auto& idx = fx.indices(n);
  const Matrix& a = op.matrix;
  const SubspaceBasis left = orthonormal_range(a.transpose() * a(Eigen::all, idx));
  // A^+ A is the orthogonal projector onto R(A^T).
  const Matrix row_space = PseudoInverse(a).corange_basis();
  const SubspaceBasis right = orthonormal_range(row_space * row_space(idx, Eigen::all).transpose());
  return subspace_gap(left, right);
}

SpaceLevel space_level(const TruncatedOperator& op, const NestedFamily& fx, Index n, const SubspaceBasis& null_a) {
  const NestedFamily identity_y = coordinate_family(op.y_dim(), op.y_dim());
  const SubspaceBasis inside = nullspace_within(op, fx, n, identity_y, kInfinity);
  SpaceLevel level;
  level.n = n;
  level.intersection_dim = inside.dim();
  for (Index k = 0; k < null_a.dim(); ++k) {
    const double d = distance_to(inside, null_a.columns().col(k));
    level.distances.push_back(d);
    level.max_distance = std::max(level.max_distance, d);
  }
  return level;
}

SpaceProbe space_condition_probe(const TruncatedOperator& op, const NestedFamily& fx, Index max_n, double tol) {
  if (max_n < 1 || max_n > fx.max_level()) {
    throw std::invalid_argument(fmt::format("space probe: max_n = {} outside 1..{}", max_n, fx.max_level()));
  }
  const SubspaceBasis null_a = orthonormal_nullspace(op.matrix);
  SpaceProbe probe;
  probe.nullspace_dim = null_a.dim();
  for (Index n = 1; n <= max_n; ++n) probe.levels.push_back(space_level(op, fx, n, null_a));
  probe.holds = probe.levels.back().max_distance <= tol;
  return probe;
}

std::vector<CoeffVector> coordinate_functionals(Index ambient_dim, Index count) {
  std::vector<CoeffVector> out;
  for (Index i = 0; i < std::min(ambient_dim, count); ++i) out.push_back(CoeffVector::Unit(ambient_dim, i));
  return out;
}

double weak_proxy(const CoeffVector& x, const CoeffVector& x_ref, const std::vector<CoeffVector>& functionals) {
  const CoeffVector diff = x - x_ref;
  double worst = 0.0;
  for (const auto& t : functionals) {
    if (t.size() != diff.size()) {
      throw std::invalid_argument(fmt::format("test functional has length {}, expected {}", t.size(), diff.size()));
    }
    worst = std::max(worst, std::abs(diff.dot(t)));
  }
  return worst;
}

LocalVerdict classify_local(const std::vector<SolutionRecord>& sweep, const CoeffVector& x_ref,
                            const std::vector<CoeffVector>& functionals, const std::optional<SubspaceBasis>& null_a,
                            const LocalOptions& options) {
  if (sweep.empty()) throw std::invalid_argument("classify_local: empty sweep");
  LocalVerdict out;
  out.reference_norm = x_ref.norm();

  const std::size_t count = sweep.size();
  const std::size_t early_end = (count + 1) / 2;
  const std::size_t late_begin = count / 2;
  double early_max = 0.0;
  double late_max = 0.0;
  bool finite = true;
  for (std::size_t i = 0; i < count; ++i) {
    const double norm = sweep[i].x.norm();
    finite = finite && std::isfinite(norm);
    out.sup_norm = std::max(out.sup_norm, norm);
    if (i < early_end) early_max = std::max(early_max, norm);
    if (i >= late_begin) late_max = std::max(late_max, norm);

    out.weak_proxy_series.push_back(weak_proxy(sweep[i].x, x_ref, functionals));
    if (null_a) out.nullspace_drift.push_back(project(*null_a, sweep[i].x).norm());
  }
  out.limsup_norm = late_max;
  out.bounded = finite && late_max <= options.growth_factor * std::max(early_max, out.reference_norm);
  out.strong_criterion_met = out.limsup_norm <= out.reference_norm + options.strong_tol;
  out.weak_proxy = out.weak_proxy_series.back();
  out.weak_proxy_min = *std::min_element(out.weak_proxy_series.begin(), out.weak_proxy_series.end());
  return out;
}

}  // namespace projreg
