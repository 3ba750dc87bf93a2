#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "infbern/errors.hpp"
#include "infbern/grid_field.hpp"
#include "infbern/solutions.hpp"
#include "truth_table.hpp"

namespace infbern {
namespace {

using testing::unit_disk;
using testing::unit_square_polygon;

TEST(GridField, CoveringAndLabels) {
  const auto g = GridGeometry::covering({0, 0, 1, 1}, 0.25);
  EXPECT_EQ(g.nx, 5u);
  EXPECT_EQ(g.ny, 5u);
  const auto labels = label_nodes(unit_square_polygon(), 0.25, g);
  EXPECT_EQ(labels[g.index(0, 0)], NodeLabel::OuterBoundary);
  EXPECT_EQ(labels[g.index(2, 2)], NodeLabel::Core);
  EXPECT_EQ(labels[g.index(1, 1)], NodeLabel::Core);  // on the core boundary
  const auto disk_labels = label_nodes(unit_disk(), 0.5, GridGeometry::covering({-1, -1, 1, 1}, 0.25));
  EXPECT_EQ(disk_labels[0], NodeLabel::Exterior);
}

TEST(Solutions, ConeSolutionValues) {
  const auto f = cone_solution(unit_square_polygon(), 0.25, 1.0 / 16.0);
  // Node (2, 8) sits at x = 1/8, y = 1/2: distance 1/8, value 1/2.
  EXPECT_NEAR(f.value(2, 8), 0.5, 1e-14);
  EXPECT_NEAR(f.value(0, 8), 1.0, 1e-14);
  EXPECT_NEAR(f.value(8, 8), 0.0, 1e-14);
  EXPECT_THROW(cone_solution(unit_square_polygon(), 0.6, 0.1), DomainError);
  EXPECT_THROW(cone_solution(ConvexDomain::ball(3, 1.0), 0.5, 0.1), UnsupportedDomain);
}

TEST(Solutions, DHatIsWholeRingForTheDisk) {
  const double h = 1.0 / 32.0;
  const auto mask = d_hat_mask(unit_disk(), 1.0 / 3.0, h);
  const auto labels = label_nodes(unit_disk(), 1.0 / 3.0, mask.grid);
  std::size_t ring = 0;
  for (auto l : labels) ring += l == NodeLabel::Interior;
  EXPECT_EQ(mask.count(), ring);
}

TEST(Solutions, DHatExcludesSquareCorners) {
  const double h = 1.0 / 64.0;
  const auto mask = d_hat_mask(unit_square_polygon(), 0.25, h);
  // Corner node (1/64, 1/64) projects onto nothing that reaches the core.
  EXPECT_FALSE(mask.contains(1, 1));
  // Mid-edge node above the core edge is on a normal segment.
  EXPECT_TRUE(mask.contains(32, 5));
}

TEST(Solutions, DiskPotentialEqualsCone) {
  const double r = 1.0 / 3.0;
  const double h = 1.0 / 64.0;
  PotentialStats stats;
  const auto w = infinity_potential(unit_disk(), r, h, {}, &stats);
  EXPECT_GT(stats.sweeps, 0u);
  EXPECT_LT(stats.last_update, 1e-8);
  const auto rep = sandwich_report(unit_disk(), r, w);
  EXPECT_DOUBLE_EQ(rep.constant, 4.0 / r);
  EXPECT_DOUBLE_EQ(rep.tolerance, 4.0 / r * h);
  EXPECT_TRUE(rep.certified());
  EXPECT_LE(rep.ring_deviation, rep.tolerance);
}

TEST(Solutions, SquarePotentialSandwich) {
  const double r = 1.0 / 6.0;
  const double h = 1.0 / 64.0;
  const auto w = infinity_potential(unit_square_polygon(), r, h);
  for (std::size_t k = 0; k < w.values.size(); ++k) {
    if (w.labels[k] == NodeLabel::Exterior) continue;
    EXPECT_GE(w.values[k], -1e-12);
    EXPECT_LE(w.values[k], 1.0 + 1e-12);
    if (w.labels[k] == NodeLabel::Core) EXPECT_EQ(w.values[k], 0.0);
    if (w.labels[k] == NodeLabel::OuterBoundary) EXPECT_EQ(w.values[k], 1.0);
  }
  const auto rep = sandwich_report(unit_square_polygon(), r, w);
  EXPECT_TRUE(rep.certified()) << rep.lower_violation << " " << rep.upper_violation << " "
                               << rep.d_hat_deviation;
  // Away from D_hat the potential differs from the cone near the corners.
  EXPECT_GT(rep.ring_deviation, rep.d_hat_deviation);
}

TEST(Solutions, PotentialPreconditions) {
  EXPECT_THROW(infinity_potential(unit_square_polygon(), 0.6, 0.01), DomainError);
  EXPECT_THROW(infinity_potential(unit_square_polygon(), 0.05, 0.01), DomainError);
  EXPECT_THROW(infinity_potential(ConvexDomain::ball(3, 1.0), 0.3, 0.01), UnsupportedDomain);
  PotentialOptions opts;
  opts.max_sweeps = 2;
  opts.tol = 1e-14;
  EXPECT_THROW(infinity_potential(unit_square_polygon(), 0.25, 1.0 / 32.0, opts), SolverDivergence);
}

TEST(Solutions, DiscreteLipschitzOfCone) {
  const auto f = cone_solution(unit_square_polygon(), 0.25, 1.0 / 64.0);
  EXPECT_NEAR(discrete_lipschitz(f), 4.0, 1e-9);
  // Positive set is the ring of area 1 - 1/4 up to lattice counting error.
  EXPECT_NEAR(positive_area(f), 0.75, 0.05);
}

TEST(Solutions, GridCsvAndSidecar) {
  const auto dir = std::filesystem::temp_directory_path() / "infbern_grid_csv_test";
  std::filesystem::create_directories(dir);
  const auto path = dir / "cone.csv";
  const auto f = cone_solution(unit_disk(), 0.5, 0.25);
  write_grid_csv(f, path);
  std::ifstream in(path);
  std::string first;
  std::getline(in, first);
  EXPECT_EQ(first.substr(0, 3), "NaN");
  std::ifstream hdr(path.string() + ".hdr");
  std::stringstream ss;
  ss << hdr.rdbuf();
  EXPECT_EQ(ss.str(), "h=0.25 bbox=-1,-1,1,1\n");
  std::filesystem::remove_all(dir);
}

TEST(Solutions, Q1Examples) {
  const auto disk = testing::analysis_of(unit_disk());
  const auto a = q1_answer(disk, 3.0);
  EXPECT_NEAR(a.slope, 3.71077881723665554953857674277, 1e-10);
  EXPECT_TRUE(a.w_equals_v);
  EXPECT_TRUE(a.unique);
  EXPECT_THROW(q1_answer(disk, 2.0), NotApplicable);
  const auto sq = q1_answer(testing::analysis_of(unit_square_polygon()), 13.5);
  EXPECT_NEAR(sq.slope, 6.0, 1e-6);
  EXPECT_FALSE(sq.w_equals_v);
}

TEST(Solutions, Q2Examples) {
  const auto disk = testing::analysis_of(unit_disk());
  const auto a = q2_answer(disk, 4.0);
  EXPECT_TRUE(a.exists);
  EXPECT_TRUE(a.v_equals_w);
  // rho = 1/4: 1 / (rho^2 2 pi (1 - rho)) = 32 / (3 pi).
  EXPECT_NEAR(a.weight, 32.0 / (3.0 * std::numbers::pi), 1e-12);
  const auto sq = q2_answer(testing::analysis_of(unit_square_polygon()), 100.0);
  EXPECT_TRUE(sq.exists);
  EXPECT_FALSE(sq.v_equals_w);
}

TEST(Solutions, Q1Q2RoundTrip) {
  // The weight returned for slope lambda selects r_Lambda = 1/lambda again.
  const auto disk = testing::analysis_of(unit_disk());
  for (double slope : {3.0, 3.5, 5.0, 12.0}) {
    const auto q2 = q2_answer(disk, slope);
    ASSERT_TRUE(q2.exists);
    EXPECT_NEAR(q1_answer(disk, q2.weight).slope, slope, 1e-9 * slope);
  }
}

class TruthTable : public ::testing::TestWithParam<int> {};

TEST_P(TruthTable, AgreesWithHandDerivedCases) {
  const auto d = GetParam() == 0 ? testing::disk_truth() : testing::square_truth();
  for (const auto& row : testing::evaluate_truth_table(d)) {
    EXPECT_TRUE(row.agrees) << row.label << ": " << row.detail;
  }
}

INSTANTIATE_TEST_SUITE_P(DiskAndSquare, TruthTable, ::testing::Values(0, 1));

}  // namespace
}  // namespace infbern
