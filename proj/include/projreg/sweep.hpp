#pragma once

// Runs a scenario over its (n, m) grid: solve, diagnostics, and the summary
// verdicts, producing a SweepTable with a fixed column set.

#include "projreg/config.hpp"
#include "projreg/diagnostics.hpp"
#include "projreg/gallery.hpp"

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace projreg {

/// Operator, families and reference solution built from a config.
struct Instance {
  TruncatedOperator op;
  std::unique_ptr<NestedFamily> fx;
  std::unique_ptr<NestedFamily> fy;
  CoeffVector xdagger;
  std::optional<NeubauerOracle> oracle;
  std::optional<NeubauerLimits> limits;
};

/// Relative file paths in the config are resolved against base_dir.
Instance build_instance(const ScenarioConfig& cfg, const std::string& base_dir = ".");

/// Whitespace-separated numbers; one matrix row per non-empty line.
Matrix read_matrix_file(const std::string& path);
/// Whitespace-separated numbers.
Vector read_vector_file(const std::string& path);

inline constexpr std::array<const char*, 18> kSweepColumns = {
    "n",          "m",        "norm_x",      "err_to_xdagger", "err_to_u",     "err_to_v",
    "sigma_min",  "kappa",    "ubc_proxy",   "rho_primal",     "rho_dual",     "rho_condadj",
    "eta_oneA",   "C_threeA", "natterer",    "luecke_hickey",  "space_dist_max", "weak_proxy_max"};

/// One sweep point. values[k] belongs to kSweepColumns[k + 2]; nullopt is an
/// absent quantity.
struct SweepRow {
  Index n = 0;
  Index m = 0;
  std::array<std::optional<double>, kSweepColumns.size() - 2> values;
  bool consistent = true;
  std::vector<std::string> problems;

  std::optional<double>& at(const std::string& column);
  const std::optional<double>& at(const std::string& column) const;
};

struct SweepSummary {
  std::optional<bool> bounded;
  std::optional<bool> strong_criterion_met;
  std::optional<double> limsup_norm;
  std::optional<double> reference_norm;
  std::optional<double> weak_proxy_min;
  std::optional<std::string> space_verdict;
  std::optional<Index> nullspace_dim;
  bool consistent = true;
  std::vector<std::string> problems;
};

struct SweepMetadata {
  std::string scenario;
  std::string config_hash;  // FNV-1a 64 of the emitted config, hex
  Index x_dim = 0;
  Index y_dim = 0;
  double tail_bound = 0.0;
  Tolerances tolerances;
  std::vector<std::string> warnings;
};

struct SweepTable {
  std::vector<SweepRow> rows;
  SweepSummary summary;
  SweepMetadata metadata;
};

enum class RunMode {
  kSolve,     // solution columns only
  kSweep,     // everything enabled in the config
  kDiagnose,  // condition columns only
};

struct RunOptions {
  RunMode mode = RunMode::kSweep;
  unsigned jobs = 1;
  std::string base_dir = ".";
};

SweepTable run_scenario(const ScenarioConfig& cfg, const RunOptions& options = {});

std::string config_hash(const ScenarioConfig& cfg);

std::string to_csv(const SweepTable& table);
std::string to_json(const SweepTable& table);
/// Writes csv or json to path; "-" or empty writes to stdout.
void emit(const SweepTable& table, const std::string& format, const std::string& path);

}  // namespace projreg
