#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "camis/cost_model.hpp"
#include "camis/hex_terrain.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kSource = CAMIS_SOURCE_DIR;

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct CliRun {
  int code;
  std::string err;
};

CliRun cli(const std::string& args, const fs::path& dir) {
  const fs::path err = dir / "stderr.txt";
  const std::string cmd = std::string(CAMIS_CLI) + " " + args + " >" + (dir / "stdout.txt").string() + " 2>" + err.string();
  const int status = std::system(cmd.c_str());
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, slurp(err)};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir = fs::temp_directory_path() / ("camis_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  void TearDown() override { fs::remove_all(dir); }
  fs::path dir;
};

std::string config(const char* name) { return (kSource / "configs" / name).string(); }

}  // namespace

TEST_F(Cli, FlatPlanCostAndRowCount) {
  const CliRun r = cli("plan --config " + config("flat.json") + " --out " + (dir / "o").string(), dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto summary = nlohmann::json::parse(slurp(dir / "o" / "summary.json"));
  const auto& p = summary["plans"]["anisotropic"];
  const double total = p["total_cost"].get<double>();
  EXPECT_GE(total, 9.0 * (1 - 1e-9));
  EXPECT_LE(total, 9.0 * 1.05);
  EXPECT_TRUE(summary.contains("config"));
  EXPECT_TRUE(p.contains("regime_counts"));
  EXPECT_TRUE(p.contains("nodes_expanded"));
  EXPECT_TRUE(p.contains("wall_time_s"));

  std::istringstream csv(slurp(dir / "o" / "path.csv"));
  std::string line;
  std::getline(csv, line);
  EXPECT_EQ(line, "s,x,y,z,heading_rad,alpha_rad,beta_rad,pitch_rad,roll_rad,cost_per_m,cum_cost");
  std::size_t rows = 0;
  std::string last;
  while (std::getline(csv, line)) {
    ++rows;
    last = line;
  }
  const double length = std::stod(last.substr(0, last.find(',')));
  const double step = p["path_step"].get<double>();
  const auto expected = static_cast<long>(std::ceil(length / step)) + 1;
  EXPECT_LE(std::labs(static_cast<long>(rows) - expected), 1);
  EXPECT_EQ(slurp(dir / "o" / "path.csv").back(), '\n');
}

TEST_F(Cli, ModeBothWritesComparison) {
  const CliRun r = cli("plan --config " + config("high_slip.json") + " --mode both --out " + (dir / "o").string(), dir);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(fs::exists(dir / "o" / "path_anisotropic.csv"));
  EXPECT_TRUE(fs::exists(dir / "o" / "path_isotropic-equivalent.csv"));
  const auto summary = nlohmann::json::parse(slurp(dir / "o" / "summary.json"));
  EXPECT_GT(summary["comparison"]["saving_percent"].get<double>(), 0.0);
}

TEST_F(Cli, ProcessDemRampIsDeterministic) {
  ASSERT_EQ(cli("process-dem --config " + config("ramp_sample.json") + " --out " + (dir / "a").string(), dir).code, 0);
  ASSERT_EQ(cli("process-dem --config " + config("ramp_sample.json") + " --out " + (dir / "b").string(), dir).code, 0);
  const std::string a = slurp(dir / "a" / "terrain.hex");
  EXPECT_EQ(a, slurp(dir / "b" / "terrain.hex"));
  const camis::HexTerrain t = camis::parse_artifact(a);
  for (const auto& n : t.nodes()) EXPECT_NEAR(n.steepness, camis::deg2rad(10.0), 1e-4);

  // planning on the stored artifact
  const CliRun r = cli("plan --config " + config("ramp_sample.json") + " --mode anisotropic --terrain " +
                          (dir / "a" / "terrain.hex").string() + " --out " + (dir / "p").string(),
                      dir);
  EXPECT_EQ(r.code, 0) << r.err;
}

TEST_F(Cli, ProfileCostTable) {
  const CliRun r = cli("profile-cost --config " + config("flat.json") + " --alpha 0,10 --out " + (dir / "o").string(), dir);
  ASSERT_EQ(r.code, 0) << r.err;
  std::istringstream csv(slurp(dir / "o" / "cost_table.csv"));
  std::string line;
  std::getline(csv, line);
  std::size_t rows = 0;
  while (std::getline(csv, line)) {
    ++rows;
    if (line.rfind("0,", 0) == 0) {
      // alpha, beta, cost, four anchors, anisotropy, equal-area cost, status
      std::istringstream fields(line);
      std::vector<std::string> f;
      for (std::string v; std::getline(fields, v, ',');) f.push_back(v);
      ASSERT_EQ(f.size(), 10u) << line;
      for (int k = 2; k < 9; ++k) EXPECT_NEAR(std::stod(f[k]), k == 7 ? 1.0 : 0.45, 1e-12) << line;
      EXPECT_EQ(f[9], "ok");
    }
  }
  EXPECT_EQ(rows, 2u * 361u);
}

TEST_F(Cli, ProfileCostFlagsClampedSlip) {
  std::ofstream(dir / "slip.json") << R"({"terrain": {"generator": "flat"},
    "model": {"slip": {"family": "linear", "c_r": 2.0}}})";
  const CliRun r = cli("profile-cost --config " + (dir / "slip.json").string() + " --alpha 5,40 --out " +
                          (dir / "o").string(),
                      dir);
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(slurp(dir / "o" / "cost_table.csv").find("40,,,,,,,,,slip_clamped"), std::string::npos);
}

TEST_F(Cli, ProfileCostRhoSweep) {
  for (const char* rho : {"0.3", "0.6", "0.9"}) {
    std::ofstream(dir / "m.json") << "{\"terrain\": {\"generator\": \"flat\"}, \"model\": {\"rho\": " << rho << "}}";
    EXPECT_EQ(cli("profile-cost --config " + (dir / "m.json").string() + " --out " + (dir / "o").string(), dir).code, 0);
  }
}

TEST_F(Cli, ExitCodes) {
  // config errors
  EXPECT_EQ(cli("plan --config /nonexistent.json", dir).code, 2);
  std::ofstream(dir / "bad.json") << R"({"terrain": {"generator": "flat"}, "colour": "red"})";
  EXPECT_EQ(cli("plan --config " + (dir / "bad.json").string(), dir).code, 2);
  EXPECT_EQ(cli("plan --config " + config("flat.json") + " --start 1 --out " + dir.string(), dir).code, 2);
  EXPECT_EQ(cli("plan --config " + config("flat.json") + " --start 500,500 --out " + dir.string(), dir).code, 2);
  EXPECT_EQ(cli("plan --bogus-flag", dir).code, 2);

  // data errors
  std::ofstream(dir / "dem.asc") << "ncols 3\nnrows 2\ncellsize 0.5\n1 2 3\n4 5\n";
  std::ofstream(dir / "dem.json") << R"({"terrain": {"path": "dem.asc"}})";
  const CliRun d = cli("process-dem --config " + (dir / "dem.json").string() + " --out " + dir.string(), dir);
  EXPECT_EQ(d.code, 3);
  EXPECT_NE(d.err.find("expected 6 values, got 5"), std::string::npos);
  std::ofstream(dir / "missing.json") << R"({"terrain": {"path": "nowhere.asc"}})";
  const CliRun m = cli("process-dem --config " + (dir / "missing.json").string() + " --out " + dir.string(), dir);
  EXPECT_EQ(m.code, 3);
  EXPECT_NE(m.err.find("nowhere.asc"), std::string::npos);

  // planning failure: a nodata wall splits the raster
  std::ostringstream wall;
  wall << "ncols 60\nnrows 40\ncellsize 0.1\nNODATA_value -9999\n";
  for (int r = 0; r < 40; ++r) {
    for (int c = 0; c < 60; ++c) wall << (c >= 28 && c < 34 ? "-9999" : "0") << (c + 1 < 60 ? " " : "\n");
  }
  std::ofstream(dir / "wall.asc") << wall.str();
  std::ofstream(dir / "wall.json") << R"({"terrain": {"path": "wall.asc"}, "start": [0.5, 2.0], "goal": [5.5, 2.0]})";
  const CliRun u = cli("plan --config " + (dir / "wall.json").string() + " --out " + dir.string(), dir);
  EXPECT_EQ(u.code, 4) << u.err;
}

TEST_F(Cli, FlagsOverrideConfig) {
  const CliRun r = cli("plan --config " + config("flat.json") + " --start 5,5 --goal 15,5 --hex-res 1 --out " +
                          (dir / "o").string(),
                      dir);
  ASSERT_EQ(r.code, 0) << r.err;
  const auto s = nlohmann::json::parse(slurp(dir / "o" / "summary.json"));
  EXPECT_EQ(s["config"]["hex_resolution"].get<double>(), 1.0);
  EXPECT_EQ(s["config"]["start"][0].get<double>(), 5.0);
  EXPECT_NEAR(s["plans"]["anisotropic"]["total_cost"].get<double>(), 4.5, 0.05 * 4.5);
}

TEST_F(Cli, SeedChangesSyntheticTerrain) {
  const std::string base = "process-dem --config " + config("hills_suite.json") + " --out ";
  ASSERT_EQ(cli(base + (dir / "a").string() + " --seed 1", dir).code, 0);
  ASSERT_EQ(cli(base + (dir / "b").string() + " --seed 2", dir).code, 0);
  ASSERT_EQ(cli(base + (dir / "c").string() + " --seed 2", dir).code, 0);
  EXPECT_NE(slurp(dir / "a" / "terrain.hex"), slurp(dir / "b" / "terrain.hex"));
  EXPECT_EQ(slurp(dir / "b" / "terrain.hex"), slurp(dir / "c" / "terrain.hex"));
}

TEST_F(Cli, PlanOutputsAreBitIdentical) {
  ASSERT_EQ(cli("plan --config " + config("default.json") + " --mode both --out " + (dir / "a").string(), dir).code, 0);
  ASSERT_EQ(cli("plan --config " + config("default.json") + " --mode both --out " + (dir / "b").string(), dir).code, 0);
  for (const char* f : {"path_anisotropic.csv", "path_isotropic-equivalent.csv"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}
