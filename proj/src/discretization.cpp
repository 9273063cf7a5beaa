#include "projreg/discretization.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace projreg {

std::string level_to_string(Index level) { return level == kInfinity ? "inf" : std::to_string(level); }

NestedFamily::NestedFamily(Index ambient_dim, std::vector<std::vector<Index>> schedule, std::string kind)
    : ambient_dim_(ambient_dim), schedule_(std::move(schedule)), all_(static_cast<std::size_t>(ambient_dim)),
      kind_(std::move(kind)) {
  std::iota(all_.begin(), all_.end(), Index{0});
  if (schedule_.empty()) throw std::invalid_argument("nested family needs at least one level");
  std::vector<char> seen(static_cast<std::size_t>(ambient_dim), 0);
  std::size_t previous = 0;
  for (std::size_t level = 0; level < schedule_.size(); ++level) {
    const auto& idx = schedule_[level];
    for (Index i : idx) {
      if (i < 0 || i >= ambient_dim) {
        throw std::invalid_argument(fmt::format("level {} selects index {} outside 0..{}", level + 1, i,
                                                ambient_dim - 1));
      }
    }
    std::vector<char> here(static_cast<std::size_t>(ambient_dim), 0);
    for (Index i : idx) {
      if (here[i]) throw std::invalid_argument(fmt::format("level {} selects index {} twice", level + 1, i));
      here[i] = 1;
    }
    std::size_t kept = 0;
    for (Index i = 0; i < ambient_dim; ++i) {
      if (seen[i] && here[i]) ++kept;
    }
    if (kept != previous) {
      throw std::invalid_argument(fmt::format("level {} does not contain level {}", level + 1, level));
    }
    seen = std::move(here);
    previous = idx.size();
  }
  if (static_cast<Index>(previous) != ambient_dim) {
    throw std::invalid_argument(
        fmt::format("last level selects {} of {} ambient indices", previous, ambient_dim));
  }
}

const std::vector<Index>& NestedFamily::indices(Index level) const {
  if (level == kInfinity) return all_;
  if (level < 1 || level > max_level()) {
    throw std::out_of_range(fmt::format("level {} outside 1..{} of {} family", level, max_level(), kind_));
  }
  return schedule_[static_cast<std::size_t>(level - 1)];
}

std::vector<Index> NestedFamily::complement(Index level) const {
  std::vector<char> in(static_cast<std::size_t>(ambient_dim_), 0);
  for (Index i : indices(level)) in[i] = 1;
  std::vector<Index> out;
  for (Index i = 0; i < ambient_dim_; ++i) {
    if (!in[i]) out.push_back(i);
  }
  return out;
}

NestedFamily coordinate_family(Index ambient_dim, Index step) {
  if (ambient_dim < 1 || step < 1) {
    throw std::invalid_argument(fmt::format("coordinate family: ambient {} and step {} must be positive",
                                            ambient_dim, step));
  }
  std::vector<std::vector<Index>> schedule;
  for (Index count = step;; count += step) {
    const Index k = std::min(count, ambient_dim);
    std::vector<Index> idx(static_cast<std::size_t>(k));
    std::iota(idx.begin(), idx.end(), Index{0});
    schedule.push_back(std::move(idx));
    if (k == ambient_dim) break;
  }
  return NestedFamily(ambient_dim, std::move(schedule), fmt::format("coordinate(step={})", step));
}

NestedFamily grid_family(Index side) {
  const GridIndexMap grid(side);
  std::vector<std::vector<Index>> schedule;
  for (Index n = 1; n <= side; ++n) {
    std::vector<Index> idx;
    idx.reserve(static_cast<std::size_t>(n * n));
    for (Index i = 1; i <= n; ++i) {
      for (Index j = 1; j <= n; ++j) idx.push_back(grid.flat(i, j));
    }
    schedule.push_back(std::move(idx));
  }
  return NestedFamily(grid.size(), std::move(schedule), fmt::format("grid(side={})", side));
}

SubspaceBasis projector(const NestedFamily& family, Index level) {
  return SubspaceBasis::coordinate(family.ambient_dim(), family.indices(level));
}

CoeffVector ProjectedSystem::embed_x(const Vector& local) const {
  CoeffVector out = CoeffVector::Zero(x_ambient);
  out(x_indices) = local;
  return out;
}

CoeffVector ProjectedSystem::embed_y(const Vector& local) const {
  CoeffVector out = CoeffVector::Zero(y_ambient);
  out(y_indices) = local;
  return out;
}

Vector ProjectedSystem::restrict_x(const CoeffVector& ambient) const { return ambient(x_indices); }

Vector ProjectedSystem::restrict_y(const CoeffVector& ambient) const { return ambient(y_indices); }

namespace {
void check_families(const TruncatedOperator& op, const NestedFamily& fx, const NestedFamily& fy) {
  if (fx.ambient_dim() != op.x_dim() || fy.ambient_dim() != op.y_dim()) {
    throw std::invalid_argument(fmt::format("families ({} -> {}) do not match operator ({} -> {})",
                                            fx.ambient_dim(), fy.ambient_dim(), op.x_dim(), op.y_dim()));
  }
}
}  // namespace

ProjectedSystem assemble(const TruncatedOperator& op, const NestedFamily& fx, Index n, const NestedFamily& fy,
                         Index m) {
  check_families(op, fx, fy);
  ProjectedSystem sys;
  sys.x_indices = fx.indices(n);
  sys.y_indices = fy.indices(m);
  sys.x_ambient = op.x_dim();
  sys.y_ambient = op.y_dim();
  sys.n = n;
  sys.m = m;
  sys.matrix = op.matrix(sys.y_indices, sys.x_indices);
  return sys;
}

SubspaceBasis nullspace_within(const TruncatedOperator& op, const NestedFamily& fx, Index n,
                               const NestedFamily& fy, Index m, std::optional<double> rank_tol) {
  const ProjectedSystem sys = assemble(op, fx, n, fy, m);
  const Matrix local = PseudoInverse(sys.matrix, rank_tol).nullspace_basis();
  Matrix ambient = Matrix::Zero(op.x_dim(), local.cols());
  ambient(sys.x_indices, Eigen::all) = local;
  return SubspaceBasis::trusted(op.x_dim(), std::move(ambient));
}

}  // namespace projreg
