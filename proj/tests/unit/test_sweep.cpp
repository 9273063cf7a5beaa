#include "projreg/sweep.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

namespace projreg {
namespace {

namespace fs = std::filesystem;

ScenarioConfig small_neubauer() {
  ScenarioConfig cfg = scenario_neubauer(0.5, 10);
  cfg.op.c.count = 4;
  cfg.sweep.n = {1, 2, 3, 4, 5, 6};
  cfg.sweep.m = {8, kInfinity};
  return cfg;
}

class TempDir {
 public:
  TempDir() {
    const auto* info = ::testing::UnitTest::GetInstance()->current_test_info();
    path_ = fs::temp_directory_path() / (std::string("projreg_sweep_") + info->name());
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path_ / name) << text; }

 private:
  fs::path path_;
};

std::vector<std::string> split_lines(const std::string& text, const std::string& eol) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (begin < text.size()) {
    const std::size_t end = text.find(eol, begin);
    if (end == std::string::npos) {
      out.push_back(text.substr(begin));
      break;
    }
    out.push_back(text.substr(begin, end - begin));
    begin = end + eol.size();
  }
  return out;
}

std::vector<std::string> split_cells(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

TEST(RunScenario, DeterministicAcrossJobCounts) {
  const ScenarioConfig cfg = small_neubauer();
  RunOptions one;
  RunOptions three;
  three.jobs = 3;
  const std::string a = to_csv(run_scenario(cfg, one));
  const std::string b = to_csv(run_scenario(cfg, three));
  EXPECT_EQ(a, b);
  EXPECT_EQ(to_json(run_scenario(cfg, one)), to_json(run_scenario(cfg, three)));
}

TEST(RunScenario, RowOrderAndColumns) {
  const SweepTable t = run_scenario(small_neubauer());
  ASSERT_EQ(t.rows.size(), 12u);
  EXPECT_EQ(t.rows[0].n, 1);
  EXPECT_EQ(t.rows[0].m, 8);
  EXPECT_EQ(t.rows[1].m, kInfinity);
  EXPECT_EQ(t.rows[11].n, 6);
  for (const auto& row : t.rows) {
    EXPECT_TRUE(row.consistent);
    for (const char* col : {"norm_x", "err_to_xdagger", "err_to_u", "err_to_v", "sigma_min", "kappa", "ubc_proxy",
                            "rho_primal", "space_dist_max", "weak_proxy_max"}) {
      EXPECT_TRUE(row.at(col).has_value()) << col;
    }
  }
  EXPECT_THROW(t.rows[0].at("nope"), std::invalid_argument);
  EXPECT_EQ(t.metadata.x_dim, 100);
  EXPECT_EQ(t.metadata.config_hash.size(), 16u);
  EXPECT_EQ(t.metadata.config_hash, config_hash(small_neubauer()));
  EXPECT_EQ(t.summary.space_verdict, "FAILS-at-truncation");
  EXPECT_EQ(t.summary.nullspace_dim, 10);
  EXPECT_TRUE(t.summary.consistent);
}

TEST(RunScenario, ModesSelectColumns) {
  const ScenarioConfig cfg = small_neubauer();
  RunOptions solve;
  solve.mode = RunMode::kSolve;
  const SweepTable s = run_scenario(cfg, solve);
  EXPECT_TRUE(s.rows[0].at("norm_x").has_value());
  EXPECT_FALSE(s.rows[0].at("ubc_proxy").has_value());
  EXPECT_TRUE(s.summary.bounded.has_value());

  RunOptions diagnose;
  diagnose.mode = RunMode::kDiagnose;
  const SweepTable d = run_scenario(cfg, diagnose);
  EXPECT_FALSE(d.rows[0].at("norm_x").has_value());
  EXPECT_TRUE(d.rows[0].at("ubc_proxy").has_value());
  EXPECT_TRUE(d.rows[0].at("kappa").has_value());
}

TEST(ToCsv, HeaderEmptyCellsAndLineEndings) {
  ScenarioConfig cfg = small_neubauer();
  RunOptions solve;
  solve.mode = RunMode::kSolve;
  const std::string csv = to_csv(run_scenario(cfg, solve));
  EXPECT_EQ(csv.substr(csv.size() - 2), "\r\n");
  const auto lines = split_lines(csv, "\r\n");
  ASSERT_EQ(lines.size(), 13u);
  const auto header = split_cells(lines[0]);
  ASSERT_EQ(header.size(), kSweepColumns.size());
  for (std::size_t k = 0; k < header.size(); ++k) EXPECT_EQ(header[k], kSweepColumns[k]);
  const auto row = split_cells(lines[2]);
  ASSERT_EQ(row.size(), kSweepColumns.size());
  EXPECT_EQ(row[0], "1");
  EXPECT_EQ(row[1], "inf");
  EXPECT_FALSE(row[2].empty());
  EXPECT_TRUE(row[8].empty());  // ubc_proxy is not computed when solving
}

TEST(ToJson, MetadataRowsAndSummary) {
  const SweepTable t = run_scenario(small_neubauer());
  const auto doc = nlohmann::json::parse(to_json(t));
  EXPECT_EQ(doc["metadata"]["scenario"], "neubauer");
  EXPECT_EQ(doc["metadata"]["truncation"]["x_dim"], 100);
  EXPECT_EQ(doc["metadata"]["config_hash"], t.metadata.config_hash);
  EXPECT_EQ(doc["columns"].size(), kSweepColumns.size());
  EXPECT_EQ(doc["rows"].size(), 12u);
  EXPECT_EQ(doc["rows"][1]["m"], "inf");
  EXPECT_TRUE(doc["rows"][1]["natterer"].is_number());
  EXPECT_EQ(doc["summary"]["space_condition"], "FAILS-at-truncation");
  EXPECT_TRUE(doc["summary"]["consistent"].get<bool>());
  EXPECT_TRUE(doc["summary"].contains("bounded"));
  EXPECT_TRUE(doc["summary"].contains("strong_criterion_met"));
  EXPECT_TRUE(doc["summary"].contains("weak_proxy_min"));
}

TEST(BuildInstance, DenseFileAndCoefficientFile) {
  TempDir dir;
  dir.write("a.txt", "2 0 0\n0 1 0\n\n0 0 0.5\n");
  dir.write("x.txt", "1 2\n3\n");
  ScenarioConfig cfg = default_config("dense-file");
  cfg.op.path = "a.txt";
  cfg.xdagger.kind = "coeff-file";
  cfg.xdagger.path = "x.txt";
  cfg.sweep.n = {1, 2, 3};
  const Instance inst = build_instance(cfg, dir.path().string());
  EXPECT_EQ(inst.op.matrix.rows(), 3);
  EXPECT_EQ(inst.op.matrix(2, 2), 0.5);
  EXPECT_EQ(inst.xdagger, (Vector(3) << 1, 2, 3).finished());
  RunOptions opts;
  opts.base_dir = dir.path().string();
  const SweepTable t = run_scenario(cfg, opts);
  ASSERT_EQ(t.rows.size(), 3u);
  EXPECT_NEAR(*t.rows[2].at("err_to_xdagger"), 0.0, 1e-15);
  EXPECT_NEAR(*t.rows[0].at("norm_x"), 1.0, 1e-15);
  EXPECT_EQ(t.summary.space_verdict, "HOLDS-at-truncation");
  EXPECT_EQ(t.summary.strong_criterion_met, true);

  dir.write("bad.txt", "1 2\n3\n");
  EXPECT_THROW(read_matrix_file((dir.path() / "bad.txt").string()), std::runtime_error);
  EXPECT_THROW(read_vector_file((dir.path() / "missing.txt").string()), std::runtime_error);
  dir.write("short.txt", "1 2\n");
  cfg.xdagger.path = "short.txt";
  EXPECT_ANY_THROW(build_instance(cfg, dir.path().string()));
}

TEST(BuildInstance, RandomReferenceDependsOnSeed) {
  ScenarioConfig cfg = scenario_seidman(10);
  const Instance a = build_instance(cfg);
  const Instance b = build_instance(cfg);
  EXPECT_EQ(a.xdagger, b.xdagger);
  EXPECT_NEAR(a.xdagger.norm(), 1.0, 1e-14);
  cfg.xdagger.seed = 2;
  EXPECT_NE(build_instance(cfg).xdagger, a.xdagger);
  EXPECT_FALSE(a.oracle.has_value());
}

}  // namespace
}  // namespace projreg
