#pragma once

// Scenario configuration: a JSON document with the blocks operator,
// discretization, xdagger, sweep, diagnostics, output and tolerances. See
// README.md for the grammar. Unknown keys are rejected and every validation
// problem is reported at once.

#include "projreg/discretization.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace projreg {

class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const { return problems_; }

 private:
  std::vector<std::string> problems_;
};

/// A real sequence s_1, s_2, ...: an explicit list, scale * ratio^k, or
/// scale * k^(-exponent). Generated sequences stop after `count` terms when
/// count > 0.
struct SequenceSpec {
  enum class Kind { kExplicit, kGeometric, kPower };
  Kind kind = Kind::kExplicit;
  std::vector<double> values;
  double scale = 1.0;
  double ratio = 0.5;
  double exponent = 1.0;
  Index count = 0;

  /// First `length` terms (zero beyond the sequence's support).
  Vector prefix(Index length) const;
  /// (sum_{k > length} s_k^2)^{1/2}, or nullopt for explicit lists.
  std::optional<double> l2_tail(Index length) const;
  /// s_{length+1}, or nullopt for explicit lists.
  std::optional<double> next_term(Index length) const;

  bool operator==(const SequenceSpec&) const = default;
};

struct OperatorConfig {
  std::string kind;  // dense-file | seidman | du | neubauer
  std::string path;  // dense-file
  Index truncation = 40;  // seidman, du
  SequenceSpec gamma;
  SequenceSpec beta;
  std::optional<double> gamma_tail;
  std::optional<double> beta_tail;
  bool transpose_rank_one = false;
  SequenceSpec e;  // du, normalized before use
  double q = 0.5;  // neubauer
  Index side = 60;
  SequenceSpec c;

  bool operator==(const OperatorConfig&) const = default;
};

struct FamilyConfig {
  std::string kind = "coordinate";  // coordinate | grid
  Index step = 1;

  bool operator==(const FamilyConfig&) const = default;
};

struct DiscretizationConfig {
  FamilyConfig x;
  FamilyConfig y;

  bool operator==(const DiscretizationConfig&) const = default;
};

struct XdaggerConfig {
  std::string kind;  // neubauer-default | coeff-file | random-in-range-of-adjoint
  std::string path;
  std::uint64_t seed = 1;
  /// random-in-range-of-adjoint: x = A^T y / ||A^T y|| with y Gaussian on the
  /// first `support` coordinates of Y (0: all of them).
  Index support = 0;

  bool operator==(const XdaggerConfig&) const = default;
};

/// Levels; kInfinity is written "inf".
struct SweepConfig {
  std::vector<Index> n;
  std::vector<Index> m;

  bool operator==(const SweepConfig&) const = default;
};

struct DiagnosticsConfig {
  bool ubc = true;
  Index ubc_k = 0;  // 0: full truncation
  bool angles = true;
  bool ratios = true;
  bool natterer = true;
  bool luecke_hickey = true;
  bool space_condition = true;
  bool weak_proxy = true;
  Index weak_functionals = 25;
  bool oblique = true;
  /// Neubauer only: errors against the weak limits u and v, and functionals
  /// along u - x^dagger and v - x^dagger.
  bool limits = true;

  bool operator==(const DiagnosticsConfig&) const = default;
};

struct OutputConfig {
  std::string path;
  std::string format = "csv";

  bool operator==(const OutputConfig&) const = default;
};

struct Tolerances {
  std::optional<double> rank_tol;  // nullopt: eps * max(rows, cols)
  double consistency = 1e-10;
  double strong = 1e-6;
  double space = 1e-10;
  double growth_factor = 2.0;

  bool operator==(const Tolerances&) const = default;
};

struct ScenarioConfig {
  std::string name;
  OperatorConfig op;
  DiscretizationConfig discretization;
  XdaggerConfig xdagger;
  SweepConfig sweep;
  DiagnosticsConfig diagnostics;
  OutputConfig output;
  Tolerances tolerances;

  bool operator==(const ScenarioConfig&) const = default;
};

ScenarioConfig parse_config(const std::string& text);
std::string emit_config(const ScenarioConfig& cfg);

/// Applies "name=value" to the tolerances block.
void apply_tolerance_override(Tolerances& tol, const std::string& assignment);

/// Defaults for an operator kind, as filled in by parse_config when the
/// corresponding blocks are omitted.
ScenarioConfig default_config(const std::string& operator_kind);

}  // namespace projreg
