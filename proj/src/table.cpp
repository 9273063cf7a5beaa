#include "projreg/sweep.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>

namespace projreg {

namespace {

std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

nlohmann::json json_number(const std::optional<double>& v) {
  if (!v) return nullptr;
  if (!std::isfinite(*v)) return number(*v);
  return *v;
}

nlohmann::json json_level(Index level) {
  if (level == kInfinity) return "inf";
  return level;
}

}  // namespace

std::string to_csv(const SweepTable& table) {
  std::string out;
  for (std::size_t k = 0; k < kSweepColumns.size(); ++k) {
    if (k > 0) out += ',';
    out += kSweepColumns[k];
  }
  out += "\r\n";
  for (const auto& row : table.rows) {
    out += level_to_string(row.n);
    out += ',';
    out += level_to_string(row.m);
    for (const auto& v : row.values) {
      out += ',';
      if (v) out += number(*v);
    }
    out += "\r\n";
  }
  return out;
}

std::string to_json(const SweepTable& table) {
  using nlohmann::json;
  const auto& meta = table.metadata;
  const auto& tol = meta.tolerances;
  json doc;
  doc["metadata"] = {
      {"scenario", meta.scenario},
      {"config_hash", meta.config_hash},
      {"truncation", {{"x_dim", meta.x_dim}, {"y_dim", meta.y_dim}}},
      {"tail_bound", meta.tail_bound},
      {"tolerances",
       {{"rank_tol", tol.rank_tol ? json(*tol.rank_tol) : json("auto")},
        {"consistency", tol.consistency},
        {"strong", tol.strong},
        {"space", tol.space},
        {"growth_factor", tol.growth_factor}}},
      {"warnings", meta.warnings},
  };
  doc["columns"] = json::array();
  for (const char* c : kSweepColumns) doc["columns"].push_back(c);

  json rows = json::array();
  for (const auto& row : table.rows) {
    json r;
    r["n"] = json_level(row.n);
    r["m"] = json_level(row.m);
    for (std::size_t k = 0; k < row.values.size(); ++k) r[kSweepColumns[k + 2]] = json_number(row.values[k]);
    rows.push_back(r);
  }
  doc["rows"] = rows;

  const auto& s = table.summary;
  json summary;
  summary["bounded"] = s.bounded ? json(*s.bounded) : json(nullptr);
  summary["strong_criterion_met"] = s.strong_criterion_met ? json(*s.strong_criterion_met) : json(nullptr);
  summary["limsup_norm"] = json_number(s.limsup_norm);
  summary["reference_norm"] = json_number(s.reference_norm);
  summary["weak_proxy_min"] = json_number(s.weak_proxy_min);
  summary["space_condition"] = s.space_verdict ? json(*s.space_verdict) : json(nullptr);
  summary["nullspace_dim"] = s.nullspace_dim ? json(*s.nullspace_dim) : json(nullptr);
  summary["consistent"] = s.consistent;
  summary["problems"] = s.problems;
  doc["summary"] = summary;
  return doc.dump(2) + "\n";
}

void emit(const SweepTable& table, const std::string& format, const std::string& path) {
  std::string text;
  if (format == "csv") {
    text = to_csv(table);
  } else if (format == "json") {
    text = to_json(table);
  } else {
    throw std::invalid_argument(fmt::format("unknown output format '{}' (csv or json)", format));
  }
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(fmt::format("cannot write '{}'", path));
  out << text;
  if (!out) throw std::runtime_error(fmt::format("write to '{}' failed", path));
}

}  // namespace projreg
