#include "projreg/gallery.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace projreg {

NeubauerOracle::NeubauerOracle(const NeubauerParams& p) : params_(p), grid_(p.side) {
  validate(p);
  zeta_first_ = Vector::Zero(p.side);
  for (Index i = 1; i <= p.side; ++i) {
    double sum = 0.0;
    for (Index j = 2; j <= p.side; ++j) sum += std::pow(p.q, static_cast<double>(j)) * zeta(i, j);
    zeta_first_(i - 1) = sum;
  }
}

double NeubauerOracle::c(Index i) const { return i <= params_.c.size() ? params_.c(i - 1) : 0.0; }

double NeubauerOracle::zeta(Index i, Index j) const {
  if (i < 1 || j < 1 || i > side() || j > side()) {
    throw std::out_of_range(fmt::format("zeta({}, {}) outside the {} x {} grid", i, j, side(), side()));
  }
  if (j == 1) return zeta_first_(i - 1);
  const double q = params_.q;
  const double rho = j % 2 == 0 ? 1.0 : 0.0;
  const double r = j == i + 1 ? 1.0 : 0.0;
  return std::pow(q, static_cast<double>(j)) / (1.0 - q * q) * (c(i) * rho + r);
}

double NeubauerOracle::e(Index n) const { return neubauer_en(params_.q, n); }

CoeffVector NeubauerOracle::xdagger() const {
  CoeffVector x(grid_.size());
  for (Index i = 1; i <= side(); ++i) {
    for (Index j = 1; j <= side(); ++j) x(grid_.flat(i, j)) = zeta(i, j);
  }
  return x;
}

CoeffVector NeubauerOracle::closed_xn(Index n) const {
  if (n < 1 || n >= side()) {
    throw std::invalid_argument(fmt::format("closed_xn: n = {} outside 1..{}", n, side() - 1));
  }
  const double en = e(n);
  CoeffVector x = CoeffVector::Zero(grid_.size());
  for (Index i = 1; i <= n; ++i) {
    const double shift = c(i) * en + (i == n ? 1.0 : 0.0);
    x(grid_.flat(i, 1)) = zeta(i, 1) + shift;
    for (Index j = 2; j <= n; ++j) {
      x(grid_.flat(i, j)) = zeta(i, j) - std::pow(params_.q, static_cast<double>(j)) * shift;
    }
  }
  return x;
}

CoeffVector NeubauerOracle::limit(double first_column_shift) const {
  CoeffVector w(grid_.size());
  for (Index i = 1; i <= side(); ++i) {
    const double shift = c(i) * first_column_shift;
    w(grid_.flat(i, 1)) = zeta(i, 1) + shift;
    for (Index j = 2; j <= side(); ++j) {
      w(grid_.flat(i, j)) = zeta(i, j) - std::pow(params_.q, static_cast<double>(j)) * shift;
    }
  }
  return w;
}

CoeffVector NeubauerOracle::u() const {
  const double q2 = params_.q * params_.q;
  return limit(q2 / (1.0 - q2 * q2));
}

CoeffVector NeubauerOracle::v() const {
  const double q2 = params_.q * params_.q;
  return limit(1.0 / (1.0 - q2 * q2));
}

CoeffVector neubauer_xdagger(const NeubauerParams& p) { return NeubauerOracle(p).xdagger(); }

double neubauer_en(double q, Index n) {
  const double q2 = q * q;
  return (n % 2 == 0 ? q2 : 1.0) / (1.0 - q2 * q2);
}

double neubauer_en_series(double q, Index n, Index terms) {
  double sum = 0.0;
  for (Index j = 0; j <= terms; ++j) {
    if ((n + 1 + j) % 2 == 0) sum += std::pow(q, 2.0 * static_cast<double>(j));
  }
  return sum;
}

NeubauerLimits neubauer_limits(const NeubauerOracle& oracle) { return {oracle.u(), oracle.v()}; }

namespace {

Oscillation oscillation_at(const NeubauerOracle& oracle, Index n, const CoeffVector& w) {
  const CoeffVector xn = oracle.closed_xn(n);
  const auto& grid = oracle.grid();
  double sum = 0.0;
  for (Index i = 1; i <= n; ++i) {
    for (Index j = 1; j <= n; ++j) {
      const Index k = grid.flat(i, j);
      sum += (xn(k) - w(k)) * (xn(k) - w(k));
    }
  }
  const double q = oracle.q();
  Oscillation out;
  out.n = n;
  out.numeric_dist_sq = sum;
  out.formula_value = (std::pow(q, 4.0) - std::pow(q, 2.0 * static_cast<double>(n) + 2.0)) / (1.0 - q * q);
  return out;
}

}  // namespace

OscillationPair neubauer_oscillation(const NeubauerOracle& oracle, Index l) {
  if (l < 1 || 2 * l + 1 >= oracle.side()) {
    throw std::invalid_argument(fmt::format("oscillation: l = {} needs 2l + 1 < side = {}", l, oracle.side()));
  }
  return {oscillation_at(oracle, 2 * l, oracle.u()), oscillation_at(oracle, 2 * l + 1, oracle.v())};
}

ScenarioConfig scenario_neubauer(double q, Index side) {
  ScenarioConfig cfg = default_config("neubauer");
  cfg.name = "neubauer";
  cfg.op.q = q;
  cfg.op.side = side;
  return cfg;
}

ScenarioConfig scenario_seidman(Index truncation) {
  ScenarioConfig cfg = default_config("seidman");
  cfg.name = "seidman";
  cfg.op.truncation = truncation;
  cfg.sweep.n.clear();
  for (Index n = 1; n <= truncation; ++n) cfg.sweep.n.push_back(n);
  return cfg;
}

ScenarioConfig scenario_du(Index truncation) {
  ScenarioConfig cfg = default_config("du");
  cfg.name = "du";
  cfg.op.truncation = truncation;
  // X_K is the whole truncation, where x_K = x^dagger trivially; stop at K/2.
  cfg.sweep.n.clear();
  for (Index n = 1; n <= std::max<Index>(1, truncation / 2); ++n) cfg.sweep.n.push_back(n);
  return cfg;
}

ScenarioConfig scenario_by_key(const std::string& key) {
  if (key == "neubauer") return scenario_neubauer();
  if (key == "seidman") return scenario_seidman();
  if (key == "du") return scenario_du();
  throw ConfigError({fmt::format("unknown scenario '{}' (expected neubauer, seidman or du)", key)});
}

}  // namespace projreg
