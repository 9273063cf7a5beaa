#include "projreg/config.hpp"

#include <fmt/format.h>
#include <json.hpp>

#include <cmath>
#include <limits>
#include <set>

namespace projreg {

using nlohmann::json;

namespace {

std::string join_problems(const std::vector<std::string>& problems) {
  std::string out = "invalid configuration:";
  for (const auto& p : problems) out += "\n  " + p;
  return out;
}

}  // namespace

ConfigError::ConfigError(std::vector<std::string> problems)
    : std::runtime_error(join_problems(problems)), problems_(std::move(problems)) {}

// ---------------------------------------------------------------------------
// SequenceSpec

namespace {
double term(const SequenceSpec& s, Index k) {
  if (s.count > 0 && k > s.count) return 0.0;
  switch (s.kind) {
    case SequenceSpec::Kind::kExplicit:
      return k <= static_cast<Index>(s.values.size()) ? s.values[static_cast<std::size_t>(k - 1)] : 0.0;
    case SequenceSpec::Kind::kGeometric:
      return s.scale * std::pow(s.ratio, static_cast<double>(k));
    case SequenceSpec::Kind::kPower:
      return s.scale * std::pow(static_cast<double>(k), -s.exponent);
  }
  return 0.0;
}
}  // namespace

Vector SequenceSpec::prefix(Index length) const {
  Vector out(length);
  for (Index k = 1; k <= length; ++k) out(k - 1) = term(*this, k);
  return out;
}

std::optional<double> SequenceSpec::next_term(Index length) const {
  if (kind == Kind::kExplicit) return std::nullopt;
  return std::abs(term(*this, length + 1));
}

std::optional<double> SequenceSpec::l2_tail(Index length) const {
  if (kind == Kind::kExplicit) return std::nullopt;
  if (count > 0) {
    double sum = 0.0;
    for (Index k = length + 1; k <= count; ++k) sum += std::pow(term(*this, k), 2);
    return std::sqrt(sum);
  }
  if (kind == Kind::kGeometric) {
    const double r2 = ratio * ratio;
    if (r2 >= 1.0) return std::numeric_limits<double>::infinity();
    return std::abs(scale) * std::pow(std::abs(ratio), static_cast<double>(length + 1)) / std::sqrt(1.0 - r2);
  }
  // Power law: explicit sum, then the integral bound for the remainder.
  if (2.0 * exponent <= 1.0) return std::numeric_limits<double>::infinity();
  constexpr Index kTerms = 100000;
  double sum = 0.0;
  for (Index k = length + 1; k <= length + kTerms; ++k) sum += std::pow(term(*this, k), 2);
  const double start = static_cast<double>(length + kTerms);
  sum += scale * scale * std::pow(start, 1.0 - 2.0 * exponent) / (2.0 * exponent - 1.0);
  return std::sqrt(sum);
}

// ---------------------------------------------------------------------------
// Defaults

namespace {

SequenceSpec geometric(double scale, double ratio, Index count = 0) {
  SequenceSpec s;
  s.kind = SequenceSpec::Kind::kGeometric;
  s.scale = scale;
  s.ratio = ratio;
  s.count = count;
  return s;
}

SequenceSpec power(double scale, double exponent, Index count = 0) {
  SequenceSpec s;
  s.kind = SequenceSpec::Kind::kPower;
  s.scale = scale;
  s.exponent = exponent;
  s.count = count;
  return s;
}

std::vector<Index> levels(Index first, Index last) {
  std::vector<Index> out;
  for (Index i = first; i <= last; ++i) out.push_back(i);
  return out;
}

const std::set<std::string> kOperatorKinds = {"dense-file", "seidman", "du", "neubauer"};
const std::set<std::string> kFamilyKinds = {"coordinate", "grid"};
const std::set<std::string> kXdaggerKinds = {"neubauer-default", "coeff-file", "random-in-range-of-adjoint"};

}  // namespace

ScenarioConfig default_config(const std::string& operator_kind) {
  ScenarioConfig cfg;
  cfg.name = operator_kind;
  cfg.op.kind = operator_kind;
  cfg.xdagger.kind = "random-in-range-of-adjoint";
  cfg.sweep.m = {kInfinity};
  if (operator_kind == "neubauer") {
    cfg.op.q = 0.5;
    cfg.op.side = 60;
    cfg.op.c = geometric(1.0, 0.5, 10);
    cfg.discretization.x.kind = "grid";
    cfg.discretization.y.kind = "grid";
    cfg.xdagger.kind = "neubauer-default";
    cfg.sweep.n = levels(1, 12);
  } else if (operator_kind == "seidman") {
    cfg.op.truncation = 40;
    cfg.op.gamma = power(1.0, 2.0);
    cfg.op.beta = power(1.0, 1.0);
    cfg.sweep.n = levels(1, 40);
  } else if (operator_kind == "du") {
    cfg.op.truncation = 80;
    cfg.op.e = power(1.0, 1.0);
    cfg.xdagger.support = 1;
    cfg.sweep.n = levels(1, 40);
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Parsing

namespace {

class Reader {
 public:
  std::vector<std::string> problems;

  void fail(const std::string& path, const std::string& what) { problems.push_back(path + ": " + what); }

  // Reports keys of `obj` outside `allowed`.
  void check_keys(const json& obj, const std::string& path, const std::set<std::string>& allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
      if (!allowed.count(it.key())) fail(path + "." + it.key(), "unknown key");
    }
  }

  const json* object(const json& parent, const std::string& key, const std::string& path) {
    if (!parent.contains(key)) return nullptr;
    const json& v = parent.at(key);
    if (!v.is_object()) {
      fail(path + "." + key, "expected an object");
      return nullptr;
    }
    return &v;
  }

  void number(const json& obj, const std::string& key, const std::string& path, double& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number()) {
      fail(path + "." + key, "expected a number");
      return;
    }
    out = v.get<double>();
  }

  void integer(const json& obj, const std::string& key, const std::string& path, Index& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_integer()) {
      fail(path + "." + key, "expected an integer");
      return;
    }
    out = v.get<Index>();
  }

  void unsigned_integer(const json& obj, const std::string& key, const std::string& path, std::uint64_t& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_number_unsigned()) {
      fail(path + "." + key, "expected a non-negative integer");
      return;
    }
    out = v.get<std::uint64_t>();
  }

  void boolean(const json& obj, const std::string& key, const std::string& path, bool& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_boolean()) {
      fail(path + "." + key, "expected true or false");
      return;
    }
    out = v.get<bool>();
  }

  void string(const json& obj, const std::string& key, const std::string& path, std::string& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (!v.is_string()) {
      fail(path + "." + key, "expected a string");
      return;
    }
    out = v.get<std::string>();
  }

  void optional_number(const json& obj, const std::string& key, const std::string& path,
                       std::optional<double>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    if (v.is_null()) {
      out.reset();
    } else if (v.is_number()) {
      out = v.get<double>();
    } else {
      fail(path + "." + key, "expected a number or null");
    }
  }

  void sequence(const json& obj, const std::string& key, const std::string& path, SequenceSpec& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string where = path + "." + key;
    if (v.is_array()) {
      out = SequenceSpec{};
      for (const auto& x : v) {
        if (!x.is_number()) {
          fail(where, "sequence entries must be numbers");
          return;
        }
        out.values.push_back(x.get<double>());
      }
      return;
    }
    if (!v.is_object()) {
      fail(where, "expected an array or a sequence object");
      return;
    }
    check_keys(v, where, {"kind", "values", "scale", "ratio", "exponent", "count"});
    std::string kind = "explicit";
    string(v, "kind", where, kind);
    SequenceSpec s;
    if (kind == "explicit") {
      s.kind = SequenceSpec::Kind::kExplicit;
      if (v.contains("values")) sequence(v, "values", where, s);
      s.kind = SequenceSpec::Kind::kExplicit;
    } else if (kind == "geometric") {
      s.kind = SequenceSpec::Kind::kGeometric;
    } else if (kind == "power") {
      s.kind = SequenceSpec::Kind::kPower;
    } else {
      fail(where + ".kind", fmt::format("'{}' is not one of explicit, geometric, power", kind));
      return;
    }
    number(v, "scale", where, s.scale);
    number(v, "ratio", where, s.ratio);
    number(v, "exponent", where, s.exponent);
    integer(v, "count", where, s.count);
    if (s.count < 0) fail(where + ".count", "must be non-negative");
    out = s;
  }

  void levels(const json& obj, const std::string& key, const std::string& path, std::vector<Index>& out) {
    if (!obj.contains(key)) return;
    const json& v = obj.at(key);
    const std::string where = path + "." + key;
    if (!v.is_array()) {
      fail(where, "expected an array of levels");
      return;
    }
    out.clear();
    for (const auto& x : v) {
      if (x.is_string() && x.get<std::string>() == "inf") {
        out.push_back(kInfinity);
      } else if (x.is_number_integer() && x.get<Index>() >= 1) {
        out.push_back(x.get<Index>());
      } else {
        fail(where, fmt::format("level {} is neither a positive integer nor \"inf\"", x.dump()));
        return;
      }
    }
    for (std::size_t i = 1; i < out.size(); ++i) {
      if (out[i] <= out[i - 1]) {
        fail(where, "levels must be strictly increasing (\"inf\" only last)");
        return;
      }
    }
  }
};

void validate_sequence(Reader& r, const SequenceSpec& s, const std::string& path) {
  for (double x : s.values) {
    if (!std::isfinite(x)) r.fail(path, "entries must be finite");
  }
  if (!std::isfinite(s.scale) || !std::isfinite(s.ratio) || !std::isfinite(s.exponent)) {
    r.fail(path, "parameters must be finite");
  }
}

void validate(Reader& r, const ScenarioConfig& cfg) {
  const auto& op = cfg.op;
  if (op.kind == "neubauer") {
    if (!(op.q > 0.0 && op.q < 1.0)) r.fail("operator.q", fmt::format("{} outside (0, 1)", op.q));
    if (op.side < 2) r.fail("operator.side", "must be at least 2");
    validate_sequence(r, op.c, "operator.c");
    const Index support = op.c.kind == SequenceSpec::Kind::kExplicit ? static_cast<Index>(op.c.values.size())
                                                                     : op.c.count;
    if (support == 0 && op.c.kind != SequenceSpec::Kind::kExplicit) {
      r.fail("operator.c.count", "must be positive (c must be finitely supported)");
    } else if (support > op.side) {
      r.fail("operator.c", fmt::format("support {} exceeds side {}", support, op.side));
    }
  }
  if (op.kind == "seidman" || op.kind == "du") {
    if (op.truncation < 1) r.fail("operator.truncation", "must be positive");
  }
  if (op.kind == "seidman") {
    validate_sequence(r, op.gamma, "operator.gamma");
    validate_sequence(r, op.beta, "operator.beta");
    if (op.truncation >= 1) {
      const Vector g = op.gamma.prefix(op.truncation);
      if (!(g.array() > 0.0).all()) r.fail("operator.gamma", "entries must be positive on the truncation");
      if (op.gamma.kind == SequenceSpec::Kind::kExplicit &&
          static_cast<Index>(op.gamma.values.size()) != op.truncation) {
        r.fail("operator.gamma", "explicit list length must equal truncation");
      }
    }
  }
  if (op.kind == "du") {
    validate_sequence(r, op.e, "operator.e");
    if (op.truncation >= 1 && op.e.prefix(op.truncation).norm() == 0.0) {
      r.fail("operator.e", "must be nonzero on the truncation");
    }
  }
  if (op.kind == "dense-file" && op.path.empty()) r.fail("operator.path", "required for dense-file");

  for (const auto* fam : {&cfg.discretization.x, &cfg.discretization.y}) {
    const std::string where = fam == &cfg.discretization.x ? "discretization.x" : "discretization.y";
    if (!kFamilyKinds.count(fam->kind)) {
      r.fail(where + ".kind", fmt::format("'{}' is not one of coordinate, grid", fam->kind));
    } else if (fam->kind == "grid" && op.kind != "neubauer") {
      r.fail(where + ".kind", "grid families require the neubauer operator");
    }
    if (fam->step < 1) r.fail(where + ".step", "must be positive");
  }

  if (!kXdaggerKinds.count(cfg.xdagger.kind)) {
    r.fail("xdagger.kind", fmt::format("'{}' is not one of neubauer-default, coeff-file, random-in-range-of-adjoint",
                                       cfg.xdagger.kind));
  } else if (cfg.xdagger.kind == "neubauer-default" && op.kind != "neubauer") {
    r.fail("xdagger.kind", "neubauer-default requires the neubauer operator");
  } else if (cfg.xdagger.kind == "coeff-file" && cfg.xdagger.path.empty()) {
    r.fail("xdagger.path", "required for coeff-file");
  }

  if (cfg.xdagger.support < 0) r.fail("xdagger.support", "must be non-negative");
  if (cfg.sweep.m.empty()) r.fail("sweep.m", "must list at least one level");
  if (cfg.diagnostics.ubc_k < 0) r.fail("diagnostics.ubc_k", "must be non-negative");
  if (cfg.diagnostics.weak_functionals < 0) r.fail("diagnostics.weak_functionals", "must be non-negative");

  if (cfg.output.format != "csv" && cfg.output.format != "json") {
    r.fail("output.format", fmt::format("'{}' is not one of csv, json", cfg.output.format));
  }

  const auto& tol = cfg.tolerances;
  if (tol.rank_tol && !(*tol.rank_tol >= 0.0)) r.fail("tolerances.rank_tol", "must be non-negative");
  if (!(tol.consistency > 0.0)) r.fail("tolerances.consistency", "must be positive");
  if (!(tol.strong >= 0.0)) r.fail("tolerances.strong", "must be non-negative");
  if (!(tol.space > 0.0)) r.fail("tolerances.space", "must be positive");
  if (!(tol.growth_factor >= 1.0)) r.fail("tolerances.growth_factor", "must be at least 1");
}

}  // namespace

ScenarioConfig parse_config(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ConfigError({fmt::format("not valid JSON: {}", e.what())});
  }
  if (!doc.is_object()) throw ConfigError({"top level must be a JSON object"});

  Reader r;
  r.check_keys(doc, "config",
               {"name", "operator", "discretization", "xdagger", "sweep", "diagnostics", "output", "tolerances"});

  const json* op = r.object(doc, "operator", "config");
  std::string kind;
  if (op) r.string(*op, "kind", "operator", kind);
  if (kind.empty()) {
    r.fail("operator.kind", "missing (expected one of dense-file, seidman, du, neubauer)");
    throw ConfigError(r.problems);
  }
  if (!kOperatorKinds.count(kind)) {
    r.fail("operator.kind", fmt::format("'{}' is not one of dense-file, seidman, du, neubauer", kind));
    throw ConfigError(r.problems);
  }

  ScenarioConfig cfg = default_config(kind);
  r.string(doc, "name", "config", cfg.name);

  r.check_keys(*op, "operator",
               {"kind", "path", "truncation", "gamma", "beta", "gamma_tail", "beta_tail", "transpose_rank_one", "e",
                "q", "side", "c"});
  r.string(*op, "path", "operator", cfg.op.path);
  r.integer(*op, "truncation", "operator", cfg.op.truncation);
  r.sequence(*op, "gamma", "operator", cfg.op.gamma);
  r.sequence(*op, "beta", "operator", cfg.op.beta);
  r.optional_number(*op, "gamma_tail", "operator", cfg.op.gamma_tail);
  r.optional_number(*op, "beta_tail", "operator", cfg.op.beta_tail);
  r.boolean(*op, "transpose_rank_one", "operator", cfg.op.transpose_rank_one);
  r.sequence(*op, "e", "operator", cfg.op.e);
  r.number(*op, "q", "operator", cfg.op.q);
  r.integer(*op, "side", "operator", cfg.op.side);
  r.sequence(*op, "c", "operator", cfg.op.c);

  if (const json* d = r.object(doc, "discretization", "config")) {
    r.check_keys(*d, "discretization", {"x", "y"});
    for (auto [key, fam] : {std::pair{"x", &cfg.discretization.x}, std::pair{"y", &cfg.discretization.y}}) {
      const std::string where = std::string("discretization.") + key;
      if (const json* f = r.object(*d, key, "discretization")) {
        r.check_keys(*f, where, {"kind", "step"});
        r.string(*f, "kind", where, fam->kind);
        r.integer(*f, "step", where, fam->step);
      }
    }
  }

  if (const json* x = r.object(doc, "xdagger", "config")) {
    r.check_keys(*x, "xdagger", {"kind", "path", "seed", "support"});
    r.string(*x, "kind", "xdagger", cfg.xdagger.kind);
    r.string(*x, "path", "xdagger", cfg.xdagger.path);
    r.unsigned_integer(*x, "seed", "xdagger", cfg.xdagger.seed);
    r.integer(*x, "support", "xdagger", cfg.xdagger.support);
  }

  if (const json* s = r.object(doc, "sweep", "config")) {
    r.check_keys(*s, "sweep", {"n", "m"});
    r.levels(*s, "n", "sweep", cfg.sweep.n);
    r.levels(*s, "m", "sweep", cfg.sweep.m);
  }

  if (const json* d = r.object(doc, "diagnostics", "config")) {
    r.check_keys(*d, "diagnostics",
                 {"ubc", "ubc_k", "angles", "ratios", "natterer", "luecke_hickey",
                  "space_condition", "weak_proxy", "weak_functionals", "oblique", "limits"});
    auto& dc = cfg.diagnostics;
    r.boolean(*d, "ubc", "diagnostics", dc.ubc);
    r.integer(*d, "ubc_k", "diagnostics", dc.ubc_k);
    r.boolean(*d, "angles", "diagnostics", dc.angles);
    r.boolean(*d, "ratios", "diagnostics", dc.ratios);
    r.boolean(*d, "natterer", "diagnostics", dc.natterer);
    r.boolean(*d, "luecke_hickey", "diagnostics", dc.luecke_hickey);
    r.boolean(*d, "space_condition", "diagnostics", dc.space_condition);
    r.boolean(*d, "weak_proxy", "diagnostics", dc.weak_proxy);
    r.integer(*d, "weak_functionals", "diagnostics", dc.weak_functionals);
    r.boolean(*d, "oblique", "diagnostics", dc.oblique);
    r.boolean(*d, "limits", "diagnostics", dc.limits);
  }

  if (const json* o = r.object(doc, "output", "config")) {
    r.check_keys(*o, "output", {"path", "format"});
    r.string(*o, "path", "output", cfg.output.path);
    r.string(*o, "format", "output", cfg.output.format);
  }

  if (const json* t = r.object(doc, "tolerances", "config")) {
    r.check_keys(*t, "tolerances", {"rank_tol", "consistency", "strong", "space", "growth_factor"});
    if (t->contains("rank_tol")) {
      const json& v = t->at("rank_tol");
      if (v.is_string() && v.get<std::string>() == "auto") {
        cfg.tolerances.rank_tol.reset();
      } else if (v.is_number()) {
        cfg.tolerances.rank_tol = v.get<double>();
      } else {
        r.fail("tolerances.rank_tol", "expected a number or \"auto\"");
      }
    }
    r.number(*t, "consistency", "tolerances", cfg.tolerances.consistency);
    r.number(*t, "strong", "tolerances", cfg.tolerances.strong);
    r.number(*t, "space", "tolerances", cfg.tolerances.space);
    r.number(*t, "growth_factor", "tolerances", cfg.tolerances.growth_factor);
  }

  validate(r, cfg);
  if (!r.problems.empty()) throw ConfigError(r.problems);
  return cfg;
}

// ---------------------------------------------------------------------------
// Emission

namespace {

json sequence_json(const SequenceSpec& s) {
  switch (s.kind) {
    case SequenceSpec::Kind::kExplicit:
      return json{{"kind", "explicit"}, {"values", s.values}};
    case SequenceSpec::Kind::kGeometric:
      return json{{"kind", "geometric"}, {"scale", s.scale}, {"ratio", s.ratio}, {"count", s.count}};
    case SequenceSpec::Kind::kPower:
      return json{{"kind", "power"}, {"scale", s.scale}, {"exponent", s.exponent}, {"count", s.count}};
  }
  return json{};
}

json levels_json(const std::vector<Index>& levels) {
  json out = json::array();
  for (Index l : levels) {
    if (l == kInfinity) {
      out.push_back("inf");
    } else {
      out.push_back(l);
    }
  }
  return out;
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string emit_config(const ScenarioConfig& cfg) {
  json op{{"kind", cfg.op.kind}};
  if (cfg.op.kind == "dense-file") {
    op["path"] = cfg.op.path;
  } else if (cfg.op.kind == "seidman") {
    op["truncation"] = cfg.op.truncation;
    op["gamma"] = sequence_json(cfg.op.gamma);
    op["beta"] = sequence_json(cfg.op.beta);
    op["gamma_tail"] = optional_json(cfg.op.gamma_tail);
    op["beta_tail"] = optional_json(cfg.op.beta_tail);
    op["transpose_rank_one"] = cfg.op.transpose_rank_one;
  } else if (cfg.op.kind == "du") {
    op["truncation"] = cfg.op.truncation;
    op["e"] = sequence_json(cfg.op.e);
  } else if (cfg.op.kind == "neubauer") {
    op["q"] = cfg.op.q;
    op["side"] = cfg.op.side;
    op["c"] = sequence_json(cfg.op.c);
  }

  auto family = [](const FamilyConfig& f) { return json{{"kind", f.kind}, {"step", f.step}}; };
  const auto& d = cfg.diagnostics;
  json doc{
      {"name", cfg.name},
      {"operator", op},
      {"discretization", {{"x", family(cfg.discretization.x)}, {"y", family(cfg.discretization.y)}}},
      {"xdagger",
       {{"kind", cfg.xdagger.kind},
        {"path", cfg.xdagger.path},
        {"seed", cfg.xdagger.seed},
        {"support", cfg.xdagger.support}}},
      {"sweep", {{"n", levels_json(cfg.sweep.n)}, {"m", levels_json(cfg.sweep.m)}}},
      {"diagnostics",
       {{"ubc", d.ubc},
        {"ubc_k", d.ubc_k},
        {"angles", d.angles},
        {"ratios", d.ratios},
        {"natterer", d.natterer},
        {"luecke_hickey", d.luecke_hickey},
        {"space_condition", d.space_condition},
        {"weak_proxy", d.weak_proxy},
        {"weak_functionals", d.weak_functionals},
        {"oblique", d.oblique},
        {"limits", d.limits}}},
      {"output", {{"path", cfg.output.path}, {"format", cfg.output.format}}},
      {"tolerances",
       {{"rank_tol", cfg.tolerances.rank_tol ? json(*cfg.tolerances.rank_tol) : json("auto")},
        {"consistency", cfg.tolerances.consistency},
        {"strong", cfg.tolerances.strong},
        {"space", cfg.tolerances.space},
        {"growth_factor", cfg.tolerances.growth_factor}}},
  };
  return doc.dump(2) + "\n";
}

void apply_tolerance_override(Tolerances& tol, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos) throw ConfigError({fmt::format("--tol '{}': expected NAME=VALUE", assignment)});
  const std::string name = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  if (name == "rank_tol" && value == "auto") {
    tol.rank_tol.reset();
    return;
  }
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(value, &used);
    if (used != value.size()) throw std::invalid_argument(value);
  } catch (const std::exception&) {
    throw ConfigError({fmt::format("--tol {}: '{}' is not a number", name, value)});
  }
  if (name == "rank_tol") {
    tol.rank_tol = v;
  } else if (name == "consistency") {
    tol.consistency = v;
  } else if (name == "strong") {
    tol.strong = v;
  } else if (name == "space") {
    tol.space = v;
  } else if (name == "growth_factor") {
    tol.growth_factor = v;
  } else {
    throw ConfigError({fmt::format("--tol: unknown tolerance '{}' (rank_tol, consistency, strong, space, "
                                   "growth_factor)", name)});
  }
}

}  // namespace projreg
