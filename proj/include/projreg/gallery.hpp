#pragma once

// Named constructions with closed-form oracles: the Neubauer grid operator
// (where projected least squares oscillates between two weak limits), and
// ready-to-run scenario configs for the Seidman and Du operator families.

#include "projreg/config.hpp"
#include "projreg/operators.hpp"

namespace projreg {

/// Closed forms for the Neubauer operator with parameters (q, c) on a
/// side x side grid. All (i, j) arguments are 1-based grid positions.
class NeubauerOracle {
 public:
  explicit NeubauerOracle(const NeubauerParams& p);

  const NeubauerParams& params() const { return params_; }
  double q() const { return params_.q; }
  Index side() const { return params_.side; }
  const GridIndexMap& grid() const { return grid_; }
  /// c_i, zero beyond the stored support.
  double c(Index i) const;

  /// zeta_{ij}: for j >= 2, q^j / (1 - q^2) (c_i rho_j + r_{ij}) with rho_j = [j even]
  /// and r_{ij} = [j = i + 1]; zeta_{i1} = sum_{j=2}^{side} q^j zeta_{ij}.
  double zeta(Index i, Index j) const;
  /// e_n = q^2 / (1 - q^4) for even n, 1 / (1 - q^4) for odd n.
  double e(Index n) const;

  /// x^dagger = sum zeta_{ij} e_{ij}; lies in N(A)^perp of the truncated operator.
  CoeffVector xdagger() const;

  /// Projected least-squares solution x_n on the n x n corner, 1 <= n < side:
  ///   xi_{i1} = zeta_{i1} + c_i e_n + [i = n],
  ///   xi_{ij} = zeta_{ij} - q^j (xi_{i1} - zeta_{i1}) for 2 <= j <= n.
  CoeffVector closed_xn(Index n) const;

  /// Weak limits along even (u) and odd (v) levels:
  ///   u_{i1} = zeta_{i1} + c_i q^2 / (1 - q^4),  v_{i1} = zeta_{i1} + c_i / (1 - q^4),
  ///   w_{ij} = zeta_{ij} - q^j (w_{i1} - zeta_{i1}) for j >= 2.
  CoeffVector u() const;
  CoeffVector v() const;

 private:
  CoeffVector limit(double first_column_shift) const;

  NeubauerParams params_;
  GridIndexMap grid_;
  Vector zeta_first_;  // zeta_{i1}
};

CoeffVector neubauer_xdagger(const NeubauerParams& p);

/// e_n by its closed form.
double neubauer_en(double q, Index n);
/// e_n as the series sum_{j=0}^{terms} q^{2j} rho_{n+1+j}.
double neubauer_en_series(double q, Index n, Index terms = 200);

struct NeubauerLimits {
  CoeffVector u;
  CoeffVector v;
};

NeubauerLimits neubauer_limits(const NeubauerOracle& oracle);

/// Squared distance between x_n and P_n w, with n = 2l and w = u for
/// even, and n = 2l + 1 and w = v for odd, computed by summation over the
/// n x n block. formula = (q^4 - q^{2n+2}) / (1 - q^2) is returned next to
/// it; the two differ by the (n, 1) coefficient, which contributes exactly 1.
struct Oscillation {
  Index n = 0;
  double numeric_dist_sq = 0.0;
  double formula_value = 0.0;
};

struct OscillationPair {
  Oscillation even;
  Oscillation odd;
};

OscillationPair neubauer_oscillation(const NeubauerOracle& oracle, Index l);

/// Scenario configs with the defaults of default_config and the given overrides.
ScenarioConfig scenario_neubauer(double q = 0.5, Index side = 60);
ScenarioConfig scenario_seidman(Index truncation = 40);
ScenarioConfig scenario_du(Index truncation = 80);

/// Scenario by key (neubauer | seidman | du); throws ConfigError otherwise.
ScenarioConfig scenario_by_key(const std::string& key);

}  // namespace projreg
