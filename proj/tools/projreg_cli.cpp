#include "projreg/gallery.hpp"
#include "projreg/sweep.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace {

constexpr int kExitInconsistent = 1;
constexpr int kExitUsage = 2;

struct Common {
  std::string config_path;
  std::string out;
  std::string format;
  unsigned jobs = 0;
  std::optional<std::uint64_t> seed;
  std::vector<std::string> tol;
};

void add_common(CLI::App* cmd, Common& c, bool config_required) {
  auto* opt = cmd->add_option("--config", c.config_path, "scenario config (JSON)")->check(CLI::ExistingFile);
  if (config_required) opt->required();
  cmd->add_option("--out", c.out, "output path (default: config output.path, else stdout)");
  cmd->add_option("--format", c.format, "csv or json (default: config output.format)")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--jobs", c.jobs, "worker threads (default: number of cores)")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", c.seed, "seed for random reference solutions");
  cmd->add_option("--tol", c.tol, "tolerance override NAME=VALUE (repeatable)");
}

projreg::ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw projreg::ConfigError({"cannot read config '" + path + "'"});
  std::stringstream buf;
  buf << in.rdbuf();
  return projreg::parse_config(buf.str());
}

projreg::Index parse_level(const std::string& text, const char* flag) {
  if (text == "inf") return projreg::kInfinity;
  try {
    std::size_t used = 0;
    const long long v = std::stoll(text, &used);
    if (used == text.size() && v >= 1) return static_cast<projreg::Index>(v);
  } catch (const std::exception&) {
  }
  throw projreg::ConfigError({std::string(flag) + ": '" + text + "' is neither a positive integer nor inf"});
}

void print_summary(const projreg::SweepTable& table) {
  const auto& s = table.summary;
  auto flag = [](const std::optional<bool>& b) { return b ? (*b ? "yes" : "no") : "n/a"; };
  std::cerr << "scenario " << table.metadata.scenario << " (config " << table.metadata.config_hash << "), "
            << table.rows.size() << " points, tail bound " << table.metadata.tail_bound << "\n";
  std::cerr << "  bounded over window: " << flag(s.bounded) << "\n";
  std::cerr << "  strong criterion met: " << flag(s.strong_criterion_met);
  if (s.limsup_norm && s.reference_norm) {
    std::cerr << " (limsup " << *s.limsup_norm << " vs reference " << *s.reference_norm << ")";
  }
  std::cerr << "\n";
  if (s.space_verdict) std::cerr << "  space condition: " << *s.space_verdict << "\n";
  std::cerr << "  consistent: " << (s.consistent ? "yes" : "no") << "\n";
  for (const auto& w : table.metadata.warnings) std::cerr << "  warning: " << w << "\n";
  for (const auto& p : s.problems) std::cerr << "  inconsistency: " << p << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Regularization by projection: projected least-squares sweeps and convergence diagnostics"};
  app.require_subcommand(1);

  Common solve_opts, sweep_opts, diagnose_opts, gallery_opts;
  std::string solve_n, solve_m, gallery_key;

  auto* solve = app.add_subcommand("solve", "solve a single (n, m) point");
  add_common(solve, solve_opts, true);
  solve->add_option("--n", solve_n, "trial level (integer or inf; default: last sweep.n)");
  solve->add_option("--m", solve_m, "test level (integer or inf; default: last sweep.m)");

  auto* sweep = app.add_subcommand("sweep", "run the full (n, m) grid with all enabled diagnostics");
  add_common(sweep, sweep_opts, true);

  auto* diagnose = app.add_subcommand("diagnose", "evaluate the convergence conditions only");
  add_common(diagnose, diagnose_opts, true);

  auto* gallery = app.add_subcommand("gallery", "run a named scenario");
  gallery->add_option("scenario", gallery_key, "neubauer | seidman | du")->required();
  add_common(gallery, gallery_opts, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  Common* opts = nullptr;
  projreg::RunOptions run;
  projreg::ScenarioConfig cfg;
  try {
    if (*gallery) {
      opts = &gallery_opts;
      cfg = opts->config_path.empty() ? projreg::scenario_by_key(gallery_key) : load_config(opts->config_path);
    } else {
      opts = *solve ? &solve_opts : *sweep ? &sweep_opts : &diagnose_opts;
      cfg = load_config(opts->config_path);
    }
    if (!opts->config_path.empty()) {
      run.base_dir = std::filesystem::path(opts->config_path).parent_path().string();
      if (run.base_dir.empty()) run.base_dir = ".";
    }
    for (const auto& t : opts->tol) projreg::apply_tolerance_override(cfg.tolerances, t);
    if (opts->seed) cfg.xdagger.seed = *opts->seed;
    if (*solve) {
      run.mode = projreg::RunMode::kSolve;
      const projreg::Index n = solve_n.empty() ? (cfg.sweep.n.empty() ? 1 : cfg.sweep.n.back())
                                               : parse_level(solve_n, "--n");
      const projreg::Index m = solve_m.empty() ? cfg.sweep.m.back() : parse_level(solve_m, "--m");
      cfg.sweep.n = {n};
      cfg.sweep.m = {m};
    } else if (*diagnose) {
      run.mode = projreg::RunMode::kDiagnose;
    }
  } catch (const projreg::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  }

  run.jobs = opts->jobs > 0 ? opts->jobs : std::max(1u, std::thread::hardware_concurrency());
  const std::string format = opts->format.empty() ? cfg.output.format : opts->format;
  const std::string out = opts->out.empty() ? cfg.output.path : opts->out;

  try {
    const projreg::SweepTable table = projreg::run_scenario(cfg, run);
    projreg::emit(table, format, out);
    print_summary(table);
    return table.summary.consistent ? 0 : kExitInconsistent;
  } catch (const projreg::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInconsistent;
  }
}
