#include "projreg/sweep.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>

namespace projreg {

namespace {

std::size_t column_slot(const std::string& column) {
  for (std::size_t k = 2; k < kSweepColumns.size(); ++k) {
    if (column == kSweepColumns[k]) return k - 2;
  }
  throw std::invalid_argument(fmt::format("unknown sweep column '{}'", column));
}

std::string resolve(const std::string& base_dir, const std::string& path) {
  const std::filesystem::path p(path);
  return p.is_absolute() ? path : (std::filesystem::path(base_dir) / p).string();
}

std::vector<double> read_numbers(std::istream& in, const std::string& path) {
  std::vector<double> out;
  std::string token;
  while (in >> token) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(token, &used));
      if (used != token.size()) throw std::invalid_argument(token);
    } catch (const std::exception&) {
      throw ConfigError({fmt::format("{}: '{}' is not a number", path, token)});
    }
  }
  return out;
}

std::unique_ptr<NestedFamily> make_family(const FamilyConfig& f, const TruncatedOperator& op, Index ambient) {
  if (f.kind == "grid") return std::make_unique<NestedFamily>(grid_family(op.grid->side()));
  return std::make_unique<NestedFamily>(coordinate_family(ambient, f.step));
}

TruncatedOperator build_operator(const ScenarioConfig& cfg, const std::string& base_dir) {
  const auto& oc = cfg.op;
  if (oc.kind == "dense-file") return make_dense(read_matrix_file(resolve(base_dir, oc.path)), oc.path);
  if (oc.kind == "seidman") {
    SeidmanParams p;
    p.truncation = oc.truncation;
    p.gamma = oc.gamma.prefix(oc.truncation);
    p.beta = oc.beta.prefix(oc.truncation);
    p.gamma_tail = oc.gamma_tail ? oc.gamma_tail : oc.gamma.next_term(oc.truncation);
    p.beta_tail = oc.beta_tail ? oc.beta_tail : oc.beta.l2_tail(oc.truncation);
    if (oc.gamma.kind == SequenceSpec::Kind::kExplicit && !oc.gamma_tail) p.gamma_tail = std::nullopt;
    if (oc.beta.kind == SequenceSpec::Kind::kExplicit && !oc.beta_tail) p.beta_tail = std::nullopt;
    p.transpose_rank_one = oc.transpose_rank_one;
    return make_seidman(p);
  }
  if (oc.kind == "du") {
    DuParams p;
    p.e = oc.e.prefix(oc.truncation);
    p.e /= p.e.norm();
    return make_du(p);
  }
  NeubauerParams p;
  p.q = oc.q;
  p.side = oc.side;
  const Index support = oc.c.kind == SequenceSpec::Kind::kExplicit ? static_cast<Index>(oc.c.values.size())
                                                                   : oc.c.count;
  p.c = oc.c.prefix(std::min(support, oc.side));
  return make_neubauer(p);
}

NeubauerParams neubauer_params(const ScenarioConfig& cfg) {
  NeubauerParams p;
  p.q = cfg.op.q;
  p.side = cfg.op.side;
  const Index support = cfg.op.c.kind == SequenceSpec::Kind::kExplicit
                            ? static_cast<Index>(cfg.op.c.values.size())
                            : cfg.op.c.count;
  p.c = cfg.op.c.prefix(std::min(support, cfg.op.side));
  return p;
}

CoeffVector random_in_adjoint_range(const TruncatedOperator& op, std::uint64_t seed, Index support) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Vector y = Vector::Zero(op.y_dim());
  const Index count = support > 0 ? std::min(support, op.y_dim()) : op.y_dim();
  for (Index i = 0; i < count; ++i) y(i) = normal(rng);
  CoeffVector x = apply_adjoint(op, y);
  const double norm = x.norm();
  if (norm == 0.0) return x;
  return x / norm;
}

std::vector<Index> levels_or_all(const std::vector<Index>& requested, const NestedFamily& family) {
  if (!requested.empty()) return requested;
  std::vector<Index> all;
  for (Index l = 1; l <= family.max_level(); ++l) all.push_back(l);
  return all;
}

void check_level(Index level, const NestedFamily& family, const char* name) {
  if (level != kInfinity && level > family.max_level()) {
    throw ConfigError({fmt::format("sweep.{}: level {} exceeds the family's {} levels", name, level,
                                   family.max_level())});
  }
}

struct Shared {
  const ScenarioConfig* cfg;
  const Instance* inst;
  RunMode mode;
  std::vector<CoeffVector> functionals;
  std::optional<SubspaceBasis> null_a;
};

SweepRow compute_row(const Shared& sh, Index n, Index m, SolutionRecord& record) {
  const auto& cfg = *sh.cfg;
  const auto& inst = *sh.inst;
  const auto& dc = cfg.diagnostics;
  const auto& tol = cfg.tolerances;
  const bool solution = sh.mode != RunMode::kDiagnose;
  const bool conditions = sh.mode != RunMode::kSolve;

  SweepRow row;
  row.n = n;
  row.m = m;
  const ProjectedProblem problem(inst.op, *inst.fx, n, *inst.fy, m, tol.rank_tol);
  record = solve_projected(problem, inst.xdagger, tol.consistency);
  if (!record.consistent) {
    row.consistent = false;
    row.problems.push_back(fmt::format("n={} m={}: solution left N(A_nm)^perp", level_to_string(n),
                                       level_to_string(m)));
  }

  row.at("sigma_min") = record.sigma_min;
  row.at("kappa") = record.kappa;
  if (solution) {
    row.at("norm_x") = record.norm;
    row.at("err_to_xdagger") = record.error_to_reference;
    if (inst.limits && dc.limits) {
      row.at("err_to_u") = (record.x - inst.limits->u).norm();
      row.at("err_to_v") = (record.x - inst.limits->v).norm();
    }
    if (dc.luecke_hickey) row.at("luecke_hickey") = luecke_hickey(problem, record.x);
    if (dc.weak_proxy) row.at("weak_proxy_max") = weak_proxy(record.x, inst.xdagger, sh.functionals);
  }
  if (conditions) {
    if (dc.ubc) {
      std::optional<Index> k;
      if (dc.ubc_k > 0) k = dc.ubc_k;
      row.at("ubc_proxy") = ubc_proxy(problem, k).full;
    }
    if (dc.angles) {
      const AngleConditions ac = angle_conditions(problem);
      row.at("rho_primal") = ac.rho_primal;
      row.at("rho_dual") = ac.rho_dual;
      row.at("rho_condadj") = ac.rho_condadj;
    }
    if (dc.ratios) {
      const RatioConditions rc = ratio_conditions(problem);
      row.at("eta_oneA") = rc.eta_oneA;
      row.at("C_threeA") = rc.c_threeA;
    }
    if (dc.natterer) row.at("natterer") = natterer_value(problem, inst.xdagger);
    if (dc.space_condition && sh.null_a) {
      row.at("space_dist_max") = space_level(inst.op, *inst.fx, n, *sh.null_a).max_distance;
    }
  }
  if (dc.oblique) {
    const ObliqueParts primal = oblique_decompose_primal(problem, inst.xdagger, tol.consistency);
    const ObliqueParts dual = oblique_decompose_dual(problem, inst.xdagger, tol.consistency);
    if (!primal.consistent || !dual.consistent) {
      row.consistent = false;
      row.problems.push_back(fmt::format("n={} m={}: oblique decomposition defect {:.3g} / {:.3g}",
                                         level_to_string(n), level_to_string(m), primal.defect, dual.defect));
    }
  }
  return row;
}

}  // namespace

std::optional<double>& SweepRow::at(const std::string& column) { return values[column_slot(column)]; }
const std::optional<double>& SweepRow::at(const std::string& column) const { return values[column_slot(column)]; }

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({fmt::format("cannot open matrix file '{}'", path)});
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    auto values = read_numbers(ls, path);
    if (!values.empty()) rows.push_back(std::move(values));
  }
  if (rows.empty()) throw ConfigError({fmt::format("matrix file '{}' is empty", path)});
  Matrix m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) {
      throw ConfigError({fmt::format("matrix file '{}': row {} has {} entries, expected {}", path, i + 1,
                                     rows[i].size(), rows.front().size())});
    }
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(static_cast<Index>(i), static_cast<Index>(j)) = rows[i][j];
  }
  if (!m.allFinite()) throw ConfigError({fmt::format("matrix file '{}' has non-finite entries", path)});
  return m;
}

Vector read_vector_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError({fmt::format("cannot open coefficient file '{}'", path)});
  const auto values = read_numbers(in, path);
  Vector v = Eigen::Map<const Vector>(values.data(), static_cast<Index>(values.size()));
  if (!v.allFinite()) throw ConfigError({fmt::format("coefficient file '{}' has non-finite entries", path)});
  return v;
}

Instance build_instance(const ScenarioConfig& cfg, const std::string& base_dir) {
  Instance inst;
  inst.op = build_operator(cfg, base_dir);
  inst.fx = make_family(cfg.discretization.x, inst.op, inst.op.x_dim());
  inst.fy = make_family(cfg.discretization.y, inst.op, inst.op.y_dim());

  if (cfg.op.kind == "neubauer") {
    inst.oracle.emplace(neubauer_params(cfg));
    inst.limits = neubauer_limits(*inst.oracle);
  }
  const auto& xc = cfg.xdagger;
  if (xc.kind == "neubauer-default") {
    inst.xdagger = inst.oracle->xdagger();
  } else if (xc.kind == "coeff-file") {
    inst.xdagger = read_vector_file(resolve(base_dir, xc.path));
    if (inst.xdagger.size() != inst.op.x_dim()) {
      throw ConfigError({fmt::format("xdagger.path: {} coefficients, operator domain has {}", inst.xdagger.size(),
                                     inst.op.x_dim())});
    }
  } else {
    inst.xdagger = random_in_adjoint_range(inst.op, xc.seed, xc.support);
  }
  return inst;
}

std::string config_hash(const ScenarioConfig& cfg) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : emit_config(cfg)) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  return fmt::format("{:016x}", h);
}

SweepTable run_scenario(const ScenarioConfig& cfg, const RunOptions& options) {
  const Instance inst = build_instance(cfg, options.base_dir);
  const auto& dc = cfg.diagnostics;
  const bool conditions = options.mode != RunMode::kSolve;
  const bool solution = options.mode != RunMode::kDiagnose;

  const std::vector<Index> ns = levels_or_all(cfg.sweep.n, *inst.fx);
  const std::vector<Index>& ms = cfg.sweep.m;
  for (Index n : ns) check_level(n, *inst.fx, "n");
  for (Index m : ms) check_level(m, *inst.fy, "m");

  Shared sh{&cfg, &inst, options.mode, {}, std::nullopt};
  if (dc.weak_proxy) {
    sh.functionals = coordinate_functionals(inst.op.x_dim(), dc.weak_functionals);
    if (inst.limits && dc.limits) {
      for (const CoeffVector* w : {&inst.limits->u, &inst.limits->v}) {
        const CoeffVector d = *w - inst.xdagger;
        if (d.norm() > 0.0) sh.functionals.push_back(d / d.norm());
      }
    }
  }
  if (dc.space_condition) sh.null_a = orthonormal_nullspace(inst.op.matrix, cfg.tolerances.rank_tol);

  std::vector<std::pair<Index, Index>> points;
  for (Index n : ns) {
    for (Index m : ms) points.emplace_back(n, m);
  }
  std::vector<SweepRow> rows(points.size());
  std::vector<SolutionRecord> records(points.size());
  std::vector<std::string> errors(points.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
    for (std::size_t k = next++; k < points.size(); k = next++) {
      try {
        rows[k] = compute_row(sh, points[k].first, points[k].second, records[k]);
      } catch (const std::exception& e) {
        errors[k] = fmt::format("n={} m={}: {}", level_to_string(points[k].first),
                                level_to_string(points[k].second), e.what());
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(points.size())));
  std::vector<std::thread> pool;
  for (unsigned j = 1; j < jobs; ++j) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (!e.empty()) throw LinalgError(e);
  }

  SweepTable table;
  table.rows = std::move(rows);
  auto& summary = table.summary;
  for (const auto& row : table.rows) {
    summary.consistent = summary.consistent && row.consistent;
    summary.problems.insert(summary.problems.end(), row.problems.begin(), row.problems.end());
  }

  // Local verdict along n at the last requested m.
  if (solution && !points.empty()) {
    std::vector<SolutionRecord> series;
    for (std::size_t k = 0; k < points.size(); ++k) {
      if (points[k].second == ms.back()) series.push_back(records[k]);
    }
    LocalOptions lo;
    lo.strong_tol = cfg.tolerances.strong;
    lo.growth_factor = cfg.tolerances.growth_factor;
    const auto functionals = sh.functionals.empty() ? coordinate_functionals(inst.op.x_dim(), dc.weak_functionals)
                                                    : sh.functionals;
    const LocalVerdict verdict = classify_local(series, inst.xdagger, functionals, sh.null_a, lo);
    summary.bounded = verdict.bounded;
    summary.strong_criterion_met = verdict.strong_criterion_met;
    summary.limsup_norm = verdict.limsup_norm;
    summary.reference_norm = verdict.reference_norm;
    summary.weak_proxy_min = verdict.weak_proxy_min;
  }
  if (conditions && sh.null_a) {
    summary.nullspace_dim = sh.null_a->dim();
    // The largest finite level decides; X_inf is the whole truncation.
    Index last = 0;
    for (Index n : ns) {
      if (n != kInfinity) last = std::max(last, n);
    }
    double dist = 0.0;
    if (last > 0) {
      for (const auto& row : table.rows) {
        if (row.n == last && row.at("space_dist_max")) dist = *row.at("space_dist_max");
      }
    }
    summary.space_verdict = dist <= cfg.tolerances.space ? "HOLDS-at-truncation" : "FAILS-at-truncation";
  }

  auto& meta = table.metadata;
  meta.scenario = cfg.name;
  meta.config_hash = config_hash(cfg);
  meta.x_dim = inst.op.x_dim();
  meta.y_dim = inst.op.y_dim();
  meta.tail_bound = inst.op.tail_bound;
  meta.tolerances = cfg.tolerances;
  meta.warnings = inst.op.warnings;
  return table;
}

}  // namespace projreg
