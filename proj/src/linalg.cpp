#include "projreg/linalg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace projreg {

namespace {

constexpr double kOrthonormalityTol = 1e-12;

// Disjoint-set forest over rows [0, R) and columns [R, R + C).
class DisjointSets {
 public:
  explicit DisjointSets(Index n) : parent_(static_cast<std::size_t>(n)) {
    std::iota(parent_.begin(), parent_.end(), Index{0});
  }
  Index find(Index a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  void unite(Index a, Index b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

 private:
  std::vector<Index> parent_;
};

struct Component {
  std::vector<Index> rows;
  std::vector<Index> cols;
};

// Connected components of the bipartite row/column graph of the nonzero
// pattern. Zero columns are returned separately; zero rows are dropped.
std::vector<Component> nonzero_components(const Matrix& m, std::vector<Index>& zero_cols) {
  const Index r = m.rows();
  const Index c = m.cols();
  DisjointSets sets(r + c);
  std::vector<char> row_used(static_cast<std::size_t>(r), 0);
  std::vector<char> col_used(static_cast<std::size_t>(c), 0);
  for (Index j = 0; j < c; ++j) {
    for (Index i = 0; i < r; ++i) {
      if (m(i, j) != 0.0) {
        sets.unite(i, r + j);
        row_used[i] = 1;
        col_used[j] = 1;
      }
    }
  }
  std::vector<Index> slot(static_cast<std::size_t>(r + c), -1);
  std::vector<Component> comps;
  auto component_of = [&](Index node) -> Component& {
    const Index root = sets.find(node);
    if (slot[root] < 0) {
      slot[root] = static_cast<Index>(comps.size());
      comps.emplace_back();
    }
    return comps[slot[root]];
  };
  for (Index j = 0; j < c; ++j) {
    if (col_used[j]) {
      component_of(r + j).cols.push_back(j);
    } else {
      zero_cols.push_back(j);
    }
  }
  for (Index i = 0; i < r; ++i) {
    if (row_used[i]) component_of(i).rows.push_back(i);
  }
  return comps;
}

void require_finite(const Matrix& m, const char* what) {
  if (!all_finite(m)) {
    throw LinalgError(fmt::format("{}: non-finite entry in {}x{} matrix", what, m.rows(), m.cols()));
  }
}

Eigen::BDCSVD<Matrix> thin_svd(const Matrix& m) {
  Eigen::BDCSVD<Matrix> dec(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) {
    throw LinalgError(fmt::format("svd failed to converge for {}x{} matrix", m.rows(), m.cols()));
  }
  return dec;
}

double largest_singular_value(const Matrix& m) {
  if (m.rows() == 0 || m.cols() == 0) return 0.0;
  return thin_svd(m).singularValues()(0);
}

}  // namespace

bool all_finite(const Matrix& m) { return m.allFinite(); }
bool all_finite(const Vector& v) { return v.allFinite(); }

double default_rank_tol(Index rows, Index cols) {
  return std::numeric_limits<double>::epsilon() * static_cast<double>(std::max<Index>({rows, cols, 1}));
}

SvdFactors svd(const Matrix& m) {
  require_finite(m, "svd");
  const Index k = std::min(m.rows(), m.cols());
  if (k == 0) {
    return {Matrix(m.rows(), 0), Matrix(m.cols(), 0), Vector(0)};
  }
  auto dec = thin_svd(m);
  return {dec.matrixU(), dec.matrixV(), dec.singularValues()};
}

// ---------------------------------------------------------------------------
// SubspaceBasis

SubspaceBasis::SubspaceBasis(Index ambient_dim, Matrix columns, Unchecked)
    : ambient_dim_(ambient_dim), columns_(std::move(columns)) {}

SubspaceBasis::SubspaceBasis(Index ambient_dim, Matrix columns)
    : ambient_dim_(ambient_dim), columns_(std::move(columns)) {
  if (ambient_dim_ < 0 || columns_.rows() != ambient_dim_) {
    throw LinalgError(fmt::format("basis has {} rows, ambient dimension is {}", columns_.rows(), ambient_dim_));
  }
  if (columns_.cols() > ambient_dim_) {
    throw LinalgError(fmt::format("{} basis vectors exceed ambient dimension {}", columns_.cols(), ambient_dim_));
  }
  require_finite(columns_, "SubspaceBasis");
  if (columns_.cols() > 0) {
    const Matrix gram = columns_.transpose() * columns_;
    const double dev = (gram - Matrix::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff();
    if (dev > kOrthonormalityTol) {
      throw LinalgError(fmt::format("basis columns not orthonormal (deviation {:.3e})", dev));
    }
  }
}

SubspaceBasis SubspaceBasis::empty(Index ambient_dim) {
  return SubspaceBasis(ambient_dim, Matrix(ambient_dim, 0), Unchecked{});
}

SubspaceBasis SubspaceBasis::coordinate(Index ambient_dim, const std::vector<Index>& indices) {
  Matrix cols = Matrix::Zero(ambient_dim, static_cast<Index>(indices.size()));
  for (std::size_t k = 0; k < indices.size(); ++k) {
    const Index i = indices[k];
    if (i < 0 || i >= ambient_dim) {
      throw LinalgError(fmt::format("coordinate index {} outside ambient dimension {}", i, ambient_dim));
    }
    cols(i, static_cast<Index>(k)) = 1.0;
  }
  return SubspaceBasis(ambient_dim, std::move(cols));
}

SubspaceBasis SubspaceBasis::trusted(Index ambient_dim, Matrix columns) {
  return SubspaceBasis(ambient_dim, std::move(columns), Unchecked{});
}

Matrix SubspaceBasis::projector_matrix() const { return columns_ * columns_.transpose(); }

// ---------------------------------------------------------------------------
// PseudoInverse

PseudoInverse::PseudoInverse(const Matrix& m, std::optional<double> rank_tol)
    : rows_(m.rows()), cols_(m.cols()) {
  require_finite(m, "pseudoinverse");
  const double tol = rank_tol.value_or(default_rank_tol(rows_, cols_));
  if (tol < 0.0) throw LinalgError("rank tolerance must be non-negative");

  auto comps = nonzero_components(m, zero_cols_);
  std::vector<Eigen::BDCSVD<Matrix>> decs;
  decs.reserve(comps.size());
  for (const auto& comp : comps) {
    decs.push_back(thin_svd(m(comp.rows, comp.cols)));
    sigma_max_ = std::max(sigma_max_, decs.back().singularValues()(0));
  }
  const double threshold = tol * sigma_max_;

  sigma_min_ = std::numeric_limits<double>::infinity();
  for (std::size_t b = 0; b < comps.size(); ++b) {
    const auto& dec = decs[b];
    const Vector& s = dec.singularValues();
    Index keep = 0;
    while (keep < s.size() && s(keep) > threshold) ++keep;
    Block block;
    block.rows = std::move(comps[b].rows);
    block.cols = std::move(comps[b].cols);
    block.u = dec.matrixU().leftCols(keep);
    block.v = dec.matrixV().leftCols(keep);
    block.s = s.head(keep);
    block.dropped = s.tail(s.size() - keep);
    if (keep > 0) sigma_min_ = std::min(sigma_min_, s(keep - 1));
    rank_ += keep;
    blocks_.push_back(std::move(block));
  }
  if (rank_ == 0) sigma_min_ = 0.0;
}

double PseudoInverse::inverse_norm() const {
  return rank_ == 0 ? std::numeric_limits<double>::infinity() : 1.0 / sigma_min_;
}

Vector PseudoInverse::singular_values() const {
  const Index k = std::min(rows_, cols_);
  std::vector<double> all;
  all.reserve(static_cast<std::size_t>(k));
  for (const auto& b : blocks_) {
    all.insert(all.end(), b.s.data(), b.s.data() + b.s.size());
    all.insert(all.end(), b.dropped.data(), b.dropped.data() + b.dropped.size());
  }
  all.resize(static_cast<std::size_t>(k), 0.0);
  std::sort(all.begin(), all.end(), std::greater<>());
  return Eigen::Map<Vector>(all.data(), k);
}

Vector PseudoInverse::apply(const Vector& b) const {
  if (b.size() != rows_) {
    throw LinalgError(fmt::format("pseudoinverse: right-hand side has length {}, expected {}", b.size(), rows_));
  }
  Vector x = Vector::Zero(cols_);
  for (const auto& blk : blocks_) {
    if (blk.s.size() == 0) continue;
    const Vector coeff = (blk.u.transpose() * b(blk.rows)).cwiseQuotient(blk.s);
    x(blk.cols) = blk.v * coeff;
  }
  return x;
}

Matrix PseudoInverse::apply(const Matrix& b) const {
  if (b.rows() != rows_) {
    throw LinalgError(fmt::format("pseudoinverse: right-hand side has {} rows, expected {}", b.rows(), rows_));
  }
  Matrix x = Matrix::Zero(cols_, b.cols());
  for (const auto& blk : blocks_) {
    if (blk.s.size() == 0) continue;
    const Matrix coeff = blk.s.cwiseInverse().asDiagonal() * (blk.u.transpose() * b(blk.rows, Eigen::all));
    x(blk.cols, Eigen::all) = blk.v * coeff;
  }
  return x;
}

Vector PseudoInverse::apply_adjoint(const Vector& x) const {
  if (x.size() != cols_) {
    throw LinalgError(fmt::format("adjoint pseudoinverse: vector has length {}, expected {}", x.size(), cols_));
  }
  Vector z = Vector::Zero(rows_);
  for (const auto& blk : blocks_) {
    if (blk.s.size() == 0) continue;
    const Vector coeff = (blk.v.transpose() * x(blk.cols)).cwiseQuotient(blk.s);
    z(blk.rows) = blk.u * coeff;
  }
  return z;
}

Matrix PseudoInverse::range_basis() const {
  Matrix out = Matrix::Zero(rows_, rank_);
  Index at = 0;
  for (const auto& blk : blocks_) {
    const Index k = blk.s.size();
    out(blk.rows, Eigen::seqN(at, k)) = blk.u;
    at += k;
  }
  return out;
}

Matrix PseudoInverse::corange_basis() const {
  Matrix out = Matrix::Zero(cols_, rank_);
  Index at = 0;
  for (const auto& blk : blocks_) {
    const Index k = blk.s.size();
    out(blk.cols, Eigen::seqN(at, k)) = blk.v;
    at += k;
  }
  return out;
}

Matrix PseudoInverse::scaled_corange() const {
  Matrix out = Matrix::Zero(cols_, rank_);
  Index at = 0;
  for (const auto& blk : blocks_) {
    const Index k = blk.s.size();
    out(blk.cols, Eigen::seqN(at, k)) = blk.v * blk.s.cwiseInverse().asDiagonal();
    at += k;
  }
  return out;
}

Matrix PseudoInverse::nullspace_basis() const {
  Matrix out = Matrix::Zero(cols_, cols_ - rank_);
  Index at = 0;
  for (Index j : zero_cols_) out(j, at++) = 1.0;
  for (const auto& blk : blocks_) {
    const Index dim = static_cast<Index>(blk.cols.size());
    const Index k = blk.s.size();
    if (dim == k) continue;
    Matrix comp;
    if (k == 0) {
      comp = Matrix::Identity(dim, dim);
    } else {
      Eigen::HouseholderQR<Matrix> qr(blk.v);
      const Matrix q = qr.householderQ() * Matrix::Identity(dim, dim);
      comp = q.rightCols(dim - k);
    }
    out(blk.cols, Eigen::seqN(at, dim - k)) = comp;
    at += dim - k;
  }
  return out;
}

// ---------------------------------------------------------------------------

MinNormSolution pseudo_inverse_apply(const Matrix& m, const Vector& b, std::optional<double> rank_tol) {
  if (b.size() != m.rows()) {
    throw LinalgError(fmt::format("dimension mismatch: matrix is {}x{}, right-hand side has length {}", m.rows(),
                                  m.cols(), b.size()));
  }
  PseudoInverse pinv(m, rank_tol);
  MinNormSolution out;
  out.x = pinv.apply(b);
  out.singular_values = pinv.singular_values();
  out.rank = pinv.rank();
  out.residual_norm = (m * out.x - b).norm();
  return out;
}

SubspaceBasis orthonormal_range(const Matrix& m, std::optional<double> rank_tol) {
  return SubspaceBasis::trusted(m.rows(), PseudoInverse(m, rank_tol).range_basis());
}

SubspaceBasis orthonormal_nullspace(const Matrix& m, std::optional<double> rank_tol) {
  return SubspaceBasis::trusted(m.cols(), PseudoInverse(m, rank_tol).nullspace_basis());
}

double spectral_norm(const Matrix& m) {
  require_finite(m, "spectral_norm");
  std::vector<Index> zero_cols;
  double best = 0.0;
  for (const auto& comp : nonzero_components(m, zero_cols)) {
    const Matrix block = m(comp.rows, comp.cols);
    Eigen::BDCSVD<Matrix> dec(block);
    if (dec.info() != Eigen::Success) {
      throw LinalgError(fmt::format("svd failed to converge for {}x{} matrix", block.rows(), block.cols()));
    }
    best = std::max(best, dec.singularValues()(0));
  }
  return best;
}

namespace {
void require_same_ambient(const SubspaceBasis& x, const SubspaceBasis& y) {
  if (x.ambient_dim() != y.ambient_dim()) {
    throw LinalgError(fmt::format("subspaces live in different ambient spaces ({} vs {})", x.ambient_dim(),
                                  y.ambient_dim()));
  }
}
}  // namespace

double projector_product_norm(const SubspaceBasis& x, const SubspaceBasis& y) {
  require_same_ambient(x, y);
  if (x.is_trivial() || y.is_trivial()) return 0.0;
  const Matrix cross = x.columns().transpose() * y.columns();
  return std::clamp(largest_singular_value(cross), 0.0, 1.0);
}

double complement_product_norm(const SubspaceBasis& x, const SubspaceBasis& y) {
  require_same_ambient(x, y);
  if (y.is_trivial()) return 0.0;
  if (x.is_trivial()) return 1.0;
  const Matrix residual = y.columns() - x.columns() * (x.columns().transpose() * y.columns());
  return std::clamp(largest_singular_value(residual), 0.0, 1.0);
}

double subspace_gap(const SubspaceBasis& x, const SubspaceBasis& y) {
  require_same_ambient(x, y);
  // ||P_X - P_Y|| = max(||(I - P_Y) P_X||, ||(I - P_X) P_Y||)
  return std::max(complement_product_norm(y, x), complement_product_norm(x, y));
}

CoeffVector project(const SubspaceBasis& basis, const CoeffVector& v) {
  if (v.size() != basis.ambient_dim()) {
    throw LinalgError(fmt::format("project: vector has length {}, ambient dimension is {}", v.size(),
                                  basis.ambient_dim()));
  }
  if (basis.is_trivial()) return CoeffVector::Zero(v.size());
  return basis.columns() * (basis.columns().transpose() * v);
}

double distance_to(const SubspaceBasis& basis, const CoeffVector& v) { return (v - project(basis, v)).norm(); }

}  // namespace projreg
