#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "infbern/errors.hpp"
#include "infbern_cli/cli.hpp"

namespace infbern::cli {
namespace {

namespace fs = std::filesystem;

struct CsvData {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::runtime_error("no column " + name);
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CsvData read_csv(const fs::path& p) {
  std::istringstream in(slurp(p));
  CsvData d;
  std::string line;
  std::getline(in, line);
  std::stringstream hs(line);
  for (std::string cell; std::getline(hs, cell, ',');) d.header.push_back(cell);
  while (std::getline(in, line)) {
    std::stringstream ls(line);
    std::vector<double> row;
    for (std::string cell; std::getline(ls, cell, ',');) row.push_back(std::stod(cell));
    d.rows.push_back(std::move(row));
  }
  return d;
}

std::map<std::string, std::string> parse_report(const std::string& text) {
  std::map<std::string, std::string> kv;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    const auto eq = line.find('=');
    if (eq != std::string::npos) kv[line.substr(0, eq)] = line.substr(eq + 1);
  }
  return kv;
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("infbern_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    write("disk.json", R"({"type":"ball","n":2,"radius":1})");
    write("ball3.json", R"({"type":"ball","n":3,"radius":1})");
    write("square.json", R"({"type":"polygon","vertices":[[0,0],[1,0],[1,1],[0,1]]})");
    write("rect.json", R"({"type":"polygon","vertices":[[0,0],[2,0],[2,1],[0,1]]})");
    write("broken.json", R"({"type":"polygon","vertices":)");
  }
  void TearDown() override { fs::remove_all(dir_); }

  void write(const std::string& name, const std::string& text) { std::ofstream(dir_ / name) << text; }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  int run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), {"infbern", "--out-dir", dir_.string()});
    std::ostringstream out_s, err_s;
    const int code = run(args, out_s, err_s);
    out = out_s.str();
    err = err_s.str();
    return code;
  }

  fs::path dir_;
  std::string out;
  std::string err;
};

TEST_F(Cli, AnalyzeDisk) {
  ASSERT_EQ(run_cli({"analyze", path("disk.json")}), 0) << err;
  const auto kv = parse_report(slurp(dir_ / "analyze.txt"));
  EXPECT_NEAR(std::stod(kv.at("lambda_infinity")), 27.0 / (4.0 * M_PI), 1e-6);
  EXPECT_NEAR(std::stod(kv.at("r_star")), 1.0 / 3.0, 1e-8);
  EXPECT_EQ(kv.at("R_Omega"), "1");
  EXPECT_EQ(kv.at("r_sing"), "1");
  EXPECT_TRUE(kv.count("lambda_prime"));
  EXPECT_TRUE(kv.count("phi_max"));
  EXPECT_EQ(parse_report(out), kv);
}

TEST_F(Cli, AnalyzeSquareAndRectangle) {
  ASSERT_EQ(run_cli({"analyze", path("square.json")}), 0) << err;
  EXPECT_NEAR(std::stod(parse_report(out).at("lambda_infinity")), 13.5, 1e-6);
  ASSERT_EQ(run_cli({"analyze", path("rect.json"), "--out", "rect.txt"}), 0) << err;
  EXPECT_NEAR(std::stod(parse_report(slurp(dir_ / "rect.txt")).at("r_star")), (3.0 - std::sqrt(3.0)) / 6.0,
              1e-6);
}

TEST_F(Cli, InputErrors) {
  EXPECT_EQ(run_cli({"analyze", path("broken.json")}), 2);
  EXPECT_FALSE(err.empty());
  EXPECT_EQ(run_cli({"analyze", path("missing.json")}), 2);
  EXPECT_EQ(run_cli({}), 2);
  EXPECT_EQ(run_cli({"analyze"}), 2);
  EXPECT_EQ(run_cli({"frobnicate"}), 2);
  EXPECT_EQ(run_cli({"--samples", "3", "analyze", path("disk.json")}), 2);
}

TEST_F(Cli, FigureFDefaults) {
  ASSERT_EQ(run_cli({"figure-f", path("disk.json")}), 0) << err;
  ASSERT_TRUE(fs::exists(dir_ / "figure_f.svg"));
  const auto csv = read_csv(dir_ / "figure_f.csv");
  ASSERT_EQ(csv.header.size(), 4u);
  EXPECT_EQ(csv.header[0], "r");
  EXPECT_EQ(csv.rows.size(), 512u);
  auto column_min = [&](std::size_t c) {
    std::pair<double, double> best{1e300, 0.0};
    for (const auto& row : csv.rows) {
      if (row[c] < best.first) best = {row[c], row[0]};
    }
    return best;
  };
  const auto top = column_min(1);
  EXPECT_GT(top.first, 0.0);
  const auto mid = column_min(2);
  EXPECT_GE(mid.first, -1e-9);
  EXPECT_LT(mid.first, 1e-4);
  EXPECT_NEAR(mid.second, 1.0 / 3.0, 2.0 / 512.0);
  const auto bottom = column_min(3);
  EXPECT_LT(bottom.first, 0.0);
  EXPECT_NEAR(bottom.second, 0.269485, 2.0 / 512.0);
}

TEST_F(Cli, FigureFCustomWeights) {
  ASSERT_EQ(run_cli({"figure-f", path("disk.json"), "--lambdas", "1,2", "--points", "16", "--csv", "f.csv",
                     "--svg", "f.svg"}),
            0)
      << err;
  const auto csv = read_csv(dir_ / "f.csv");
  EXPECT_EQ(csv.header, (std::vector<std::string>{"r", "f_1", "f_2"}));
  EXPECT_EQ(csv.rows.size(), 16u);
  EXPECT_TRUE(fs::exists(dir_ / "f.svg"));
  EXPECT_EQ(run_cli({"figure-f", path("disk.json"), "--lambdas", "-1"}), 2);
}

TEST_F(Cli, FigureMinJ) {
  ASSERT_EQ(run_cli({"figure-minj", path("disk.json"), "--Lambda", "2.14859173174058703,3"}), 0) << err;
  const auto kv = parse_report(out);
  EXPECT_NEAR(std::stod(kv.at("min_J_2.14859173")), 6.75, 1e-6);
  const auto m3 = kv.at("min_J_3");
  EXPECT_NEAR(std::stod(m3), 8.10600647, 1e-6);
  EXPECT_NEAR(std::stod(m3.substr(m3.find("lambda=") + 7)), 3.7108, 1e-3);
  ASSERT_TRUE(fs::exists(dir_ / "figure_minj.svg"));
  const auto csv = read_csv(dir_ / "figure_minj.csv");
  const auto c3 = csv.column("J_3");
  for (const auto& row : csv.rows) {
    // Below 1/R the curve is the line lambda + Lambda |Omega|.
    if (row[0] < 1.0) EXPECT_NEAR(row[c3] - row[0], 3.0 * M_PI, 1e-6);
  }
}

TEST_F(Cli, Papprox) {
  ASSERT_EQ(run_cli({"papprox", path("disk.json")}), 0) << err;
  const auto csv = read_csv(dir_ / "papprox.csv");
  ASSERT_EQ(csv.rows.size(), 5u);
  const auto e = csv.column("energy");
  for (std::size_t i = 1; i < csv.rows.size(); ++i) EXPECT_GE(csv.rows[i][e], csv.rows[i - 1][e]);
  EXPECT_LE(csv.rows.back()[csv.column("relative_gap")], 0.02);
  EXPECT_EQ(run_cli({"papprox", path("square.json")}), 4);
  EXPECT_NE(err.find("balls only"), std::string::npos);
  EXPECT_EQ(run_cli({"papprox", path("disk.json"), "--Lambda", "1"}), 5);
}

TEST_F(Cli, PotentialSquare) {
  ASSERT_EQ(run_cli({"potential", path("square.json"), "--r", "0.1666666666666667", "--h", "0.015625"}), 0)
      << err;
  const auto kv = parse_report(slurp(dir_ / "potential.csv.report.txt"));
  const double tol = std::stod(kv.at("tolerance"));
  EXPECT_NEAR(tol, 24.0 * 0.015625, 1e-7);
  EXPECT_LE(std::stod(kv.at("lower_bound_violation")), tol);
  EXPECT_LE(std::stod(kv.at("upper_bound_violation")), tol);
  EXPECT_LE(std::stod(kv.at("d_hat_deviation")), tol);
  EXPECT_EQ(kv.at("certified"), "true");
  EXPECT_TRUE(fs::exists(dir_ / "potential.csv.hdr"));
}

TEST_F(Cli, PotentialErrors) {
  EXPECT_EQ(run_cli({"potential", path("square.json"), "--r", "0.6"}), 2);
  EXPECT_EQ(run_cli({"potential", path("ball3.json"), "--r", "0.3"}), 4);
  EXPECT_EQ(run_cli({"potential", path("square.json")}), 2);
}

TEST_F(Cli, IsoperDeterministic) {
  ASSERT_EQ(run_cli({"isoper", "--seed", "7", "--count", "50", "--csv", "a.csv"}), 0) << err;
  ASSERT_EQ(run_cli({"isoper", "--seed", "7", "--count", "50", "--csv", "b.csv"}), 0) << err;
  EXPECT_EQ(slurp(dir_ / "a.csv"), slurp(dir_ / "b.csv"));
  const auto csv = read_csv(dir_ / "a.csv");
  ASSERT_EQ(csv.rows.size(), 50u);
  for (const auto& row : csv.rows) EXPECT_GE(row[csv.column("gap")], 0.0);
}

TEST_F(Cli, IsoperWithBall) {
  ASSERT_EQ(run_cli({"isoper", "--count", "3", "--with-ball"}), 0) << err;
  const auto csv = read_csv(dir_ / "isoper.csv");
  ASSERT_EQ(csv.rows.size(), 4u);
  EXPECT_EQ(csv.rows.back()[csv.column("gap")], 0.0);
  EXPECT_LT(csv.rows.back()[csv.column("deficit")], 1e-12);
}

TEST(CliExitCodes, Mapping) {
  EXPECT_EQ(exit_code_for(ParseError("x")), 2);
  EXPECT_EQ(exit_code_for(InvalidDomain("x")), 2);
  EXPECT_EQ(exit_code_for(EmptyInterior("x")), 2);
  EXPECT_EQ(exit_code_for(GeometryInconsistency("x")), 3);
  EXPECT_EQ(exit_code_for(ProfileResolutionError("x")), 3);
  EXPECT_EQ(exit_code_for(UnsupportedDomain("x")), 4);
  EXPECT_EQ(exit_code_for(HypothesisViolation("x")), 5);
  EXPECT_EQ(exit_code_for(SolverDivergence("x")), 6);
  EXPECT_EQ(exit_code_for(std::runtime_error("x")), 1);
}

}  // namespace
}  // namespace infbern::cli
