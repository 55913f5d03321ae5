// Copyright 2026 The StyleBias Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <filesystem>
#include <vector>

#include <gtest/gtest.h>

#include "stylebias/errors.h"
#include "stylebias/expharness/analysis.h"
#include "stylebias/expharness/dataset.h"
#include "stylebias/expharness/experiments.h"
#include "stylebias/expharness/normalization.h"
#include "stylebias/expharness/report.h"
#include "test_util.h"

namespace stylebias {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

MatrixXd RandomPoints(int n, int d, std::uint64_t seed) {
  const CounterRng rng(seed, 77);
  MatrixXd m(n, d);
  std::uint64_t c = 0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < d; ++j) m(i, j) = rng.Uniform(c++, -1, 1) * (j + 1);
  }
  return m;
}

// Top eigenvector of a symmetric PSD matrix by power iteration with
// deflation against `previous`.
VectorXd PowerIteration(const MatrixXd& a, const std::vector<VectorXd>& previous) {
  VectorXd v = VectorXd::LinSpaced(a.rows(), 1, 2).normalized();
  for (int it = 0; it < 20000; ++it) {
    VectorXd next = a * v;
    for (const VectorXd& u : previous) next -= u.dot(next) * u;
    v = next.normalized();
  }
  return v;
}

Demonstration ConstantDemo(int id, const VectorXd& s, const VectorXd& u, int n) {
  Demonstration d;
  d.id = id;
  for (int t = 0; t < n; ++t) d.steps.push_back({s, u});
  return d;
}

// ---------------------------------------------------------- normalization

TEST(NormalizationTest, RoundTripsAndCentersTheDataset) {
  const StateLayout layout = testing_util::TinyLayout();
  std::vector<Demonstration> data;
  for (int k = 0; k < 3; ++k) {
    data.push_back({k, testing_util::RandomTrajectory(layout, 7 + k, 40 + k), {}});
  }
  const NormStats stats = ComputeNormStats(data);
  VectorXd mean = VectorXd::Zero(layout.x_dim());
  VectorXd sq = VectorXd::Zero(layout.x_dim());
  int n = 0;
  for (const Demonstration& d : data) {
    for (const Sample& s : d.steps) {
      const VectorXd x = Concat(s);
      EXPECT_LT((stats.Invert(stats.Apply(x)) - x).norm(), 1e-12);
      mean += stats.Apply(x);
      sq += stats.Apply(x).cwiseAbs2();
      ++n;
    }
  }
  EXPECT_LT((mean / n).norm(), 1e-12);
  EXPECT_LT((sq / n - VectorXd::Ones(layout.x_dim())).norm(), 1e-12);
}

TEST(NormalizationTest, ConstantChannelUsesFloor) {
  VectorXd s(2), u(1);
  s << 1.0, 4.0;
  u << 2.0;
  std::vector<Demonstration> data{ConstantDemo(0, s, u, 5)};
  s[0] = 3.0;
  data.push_back(ConstantDemo(1, s, u, 5));
  const NormStats stats = ComputeNormStats(data);
  EXPECT_DOUBLE_EQ(stats.mean[0], 2.0);
  EXPECT_DOUBLE_EQ(stats.std[0], 1.0);
  EXPECT_EQ(stats.std[1], NormStats::kStdFloor);
  EXPECT_EQ(stats.std[2], NormStats::kStdFloor);
  const VectorXd z = stats.Apply(Concat(data[0].steps[0]));
  EXPECT_TRUE(z.allFinite());
  EXPECT_EQ(z[1], 0.0);
}

TEST(NormalizationTest, EmptyDatasetRejected) {
  EXPECT_THROW(ComputeNormStats(std::vector<Demonstration>{}), SpecificationError);
}

// ---------------------------------------------------------------- dataset

TEST(DatasetTest, DefaultGridShape) {
  const GridConfig grid;
  const std::vector<Demonstration> data = GenerateDataset(grid, SimConfig{});
  ASSERT_EQ(data.size(), 9u);
  const StateLayout layout = StateLayout::TendonArm();
  for (std::size_t k = 0; k < data.size(); ++k) {
    EXPECT_EQ(data[k].id, static_cast<int>(k));
    ASSERT_EQ(data[k].steps.size(), 30u);
    EXPECT_NO_THROW(ValidateTrajectory(data[k].steps, layout, 2));
  }
  // r varies slowest
  EXPECT_EQ(data[0].meta.r, 0.03);
  EXPECT_EQ(data[2].meta.f_style, 200);
  EXPECT_EQ(data[3].meta.r, 0.035);
}

TEST(DatasetTest, FifteenCellGridAndRepeats) {
  GridConfig grid;
  grid.f_style_values = {10, 50, 100, 150, 200};
  grid.steps_per_demo = 4;
  EXPECT_EQ(GenerateDataset(grid, SimConfig{}).size(), 15u);
  grid.repeats = 2;
  const std::vector<Demonstration> data = GenerateDataset(grid, SimConfig{});
  ASSERT_EQ(data.size(), 30u);
  EXPECT_EQ(data[0].steps, data[1].steps);
  EXPECT_EQ(data[0].meta, data[1].meta);
}

TEST(DatasetTest, Deterministic) {
  GridConfig grid;
  grid.steps_per_demo = 10;
  EXPECT_EQ(GenerateDataset(grid, SimConfig{}), GenerateDataset(grid, SimConfig{}));
}

TEST(DatasetTest, StartsAtRestWithRestCommand) {
  const Demonstration d =
      RecordDemonstration(0, {0.03, 100, 0.1}, 5, WithRadius(SimConfig{}, 0.03));
  EXPECT_EQ(d.steps.front().s.norm(), 0.0);
  for (Eigen::Index i = 0; i < d.steps.front().u.size(); ++i) {
    EXPECT_DOUBLE_EQ(d.steps.front().u[i], SimConfig{}.geometry.rest_path_lengths[i]);
  }
}

TEST(DatasetTest, InvalidGridRejected) {
  GridConfig grid;
  grid.r_values.clear();
  EXPECT_THROW(grid.Validate(), SpecificationError);
  grid = GridConfig{};
  grid.steps_per_demo = 1;
  EXPECT_THROW(grid.Validate(), SpecificationError);
  grid = GridConfig{};
  grid.r_values = {-0.01};
  EXPECT_THROW(grid.Validate(), SpecificationError);
}

// -------------------------------------------------------------------- PCA

TEST(PcaTest, MatchesPowerIteration) {
  for (int d : {2, 3, 5}) {
    const MatrixXd pts = RandomPoints(12, d, 100 + d);
    const PcaResult pca = PcaProject(pts, 2);
    const VectorXd mean = pts.colwise().mean().transpose();
    const MatrixXd c = pts.rowwise() - mean.transpose();
    const MatrixXd cov = c.transpose() * c / 11.0;
    std::vector<VectorXd> found;
    for (int j = 0; j < 2; ++j) {
      const VectorXd v = PowerIteration(cov, found);
      found.push_back(v);
      const double align = std::abs(v.dot(pca.components.col(j)));
      EXPECT_NEAR(align, 1.0, 1e-8) << "d=" << d << " j=" << j;
      EXPECT_NEAR(pca.explained_variance_ratio[j],
                  v.dot(cov * v) / cov.trace(), 1e-8);
    }
    EXPECT_LT((pca.components.transpose() * pca.components -
               MatrixXd::Identity(2, 2)).norm(), 1e-12);
    EXPECT_LT(pca.coordinates.colwise().mean().norm(), 1e-12);
  }
}

TEST(PcaTest, CollinearPointsHaveOneComponent) {
  MatrixXd pts(5, 2);
  for (int i = 0; i < 5; ++i) pts.row(i) << i, -2.0 * i;
  const PcaResult pca = PcaProject(pts, 2);
  EXPECT_NEAR(pca.explained_variance_ratio[0], 1.0, 1e-12);
  EXPECT_NEAR(pca.explained_variance_ratio[1], 0.0, 1e-12);
  // sign convention: the largest-magnitude loading is positive
  EXPECT_NEAR(pca.components(1, 0), 2 / std::sqrt(5.0), 1e-12);
  EXPECT_NEAR(pca.components(0, 0), -1 / std::sqrt(5.0), 1e-12);
}

TEST(PcaTest, ArgumentChecks) {
  const MatrixXd pts = RandomPoints(4, 2, 1);
  EXPECT_THROW(PcaProject(pts, 3), SpecificationError);
  EXPECT_THROW(PcaProject(pts, 0), SpecificationError);
  EXPECT_THROW(PcaProject(pts.topRows(1), 1), SpecificationError);
}

// ------------------------------------------------------------------ probe

TEST(ProbeTest, ExactLinearTargetGivesOne) {
  const MatrixXd pts = RandomPoints(9, 2, 3);
  const VectorXd y = 0.5 + 2.0 * pts.col(0).array() - pts.col(1).array();
  const ProbeResult r = LinearProbe(pts, y);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.r2, 1.0, 1e-12);
}

TEST(ProbeTest, MatchesNormalEquations) {
  const MatrixXd pts = RandomPoints(15, 3, 4);
  const VectorXd y = RandomPoints(15, 1, 5).col(0);
  MatrixXd design(15, 4);
  design << VectorXd::Ones(15), pts;
  const VectorXd coef =
      (design.transpose() * design).ldlt().solve(design.transpose() * y);
  const double ss_res = (y - design * coef).squaredNorm();
  const double ss_tot = (y.array() - y.mean()).matrix().squaredNorm();
  const ProbeResult r = LinearProbe(pts, y);
  EXPECT_FALSE(r.degenerate);
  EXPECT_NEAR(r.r2, 1 - ss_res / ss_tot, 1e-10);
}

TEST(ProbeTest, DegenerateCases) {
  const MatrixXd pts = RandomPoints(6, 2, 6);
  EXPECT_TRUE(LinearProbe(pts, VectorXd::Constant(6, 0.1)).degenerate);
  MatrixXd dup(6, 2);
  dup << pts.col(0), pts.col(0);
  EXPECT_TRUE(LinearProbe(dup, pts.col(1)).degenerate);
  EXPECT_TRUE(LinearProbe(pts.topRows(2), pts.col(1).head(2)).degenerate);
}

// ----------------------------------------------------------------- report

TEST(ReportTest, CsvQuotingAndLineEndings) {
  EXPECT_EQ(EscapeCsvField("plain"), "plain");
  EXPECT_EQ(EscapeCsvField("a,b"), "\"a,b\"");
  EXPECT_EQ(EscapeCsvField("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(EscapeCsvField("two\nlines"), "\"two\nlines\"");
  CsvTable t({"name", "value"});
  t.AddRow(std::vector<std::string>{"x,y", "1"});
  t.AddRow(std::vector<double>{0.1, -2});
  EXPECT_EQ(t.ToString(), "name,value\r\n\"x,y\",1\r\n0.10000000000000001,-2\r\n");
  EXPECT_THROW(t.AddRow(std::vector<std::string>{"only one"}), SpecificationError);
}

TEST(ReportTest, NumbersRoundTrip) {
  for (double v : {0.1, 1.0 / 3, -1e-300, 6.02214076e23, 0.0}) {
    EXPECT_EQ(std::stod(FormatNumber(v)), v);
  }
  EXPECT_EQ(FormatNumber(std::nan("")), "nan");
  EXPECT_EQ(FormatNumber(-INFINITY), "-inf");
}

TEST(ReportTest, FilesAndArtifactPaths) {
  const std::filesystem::path root =
      std::filesystem::temp_directory_path() / "stylebias_report_test";
  std::filesystem::remove_all(root);
  const std::filesystem::path p = ArtifactPath(root, "adapt", "B-min", "trace");
  EXPECT_EQ(p, root / "adapt" / "B-min" / "trace.csv");
  WriteTextFile(p, "a\r\nb");
  EXPECT_EQ(ReadTextFile(p), "a\r\nb");
  EXPECT_THROW(ReadTextFile(root / "missing.csv"), IoError);
  const std::string svg = SvgLineChart("t", "y", {{"s", {1, 2, 3}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::filesystem::remove_all(root);
}

// ------------------------------------------------------------- experiments

RnnpbModel MeanModel(const std::vector<Demonstration>& data) {
  RnnpbModel model;
  model.layout = StateLayout::TendonArm();
  model.net = Network<double>::Zeros(
      StackLayers(UnitsForLayout(model.layout, {{4, false}, {3, true}})));
  model.norm = ComputeNormStats(data);
  return model;
}

TEST(ExperimentTest, RolloutShapeAndDeterminism) {
  GridConfig grid;
  grid.steps_per_demo = 8;
  const RnnpbModel model = MeanModel(GenerateDataset(grid, SimConfig{}));
  const SimConfig sim = WithRadius(SimConfig{}, 0.03);
  const MetricTrace a = EvaluateRollout(model, model.ZeroPb(), sim, 12);
  const MetricTrace b = EvaluateRollout(model, model.ZeroPb(), sim, 12);
  ASSERT_EQ(a.samples.size(), 12u);
  ASSERT_EQ(a.theta_error.size(), 12u);
  ASSERT_EQ(a.tension_norm.size(), 12u);
  EXPECT_EQ(a.samples, b.samples);
  EXPECT_EQ(a.theta_error, b.theta_error);
  for (std::size_t t = 0; t < 12; ++t) {
    EXPECT_NEAR(a.theta_error[t], std::abs(kThetaTask - a.samples[t].s[0]), 1e-15);
    EXPECT_NEAR(a.tension_norm[t], a.samples[t].s.tail(kNumMuscles).norm(), 1e-12);
  }
  EXPECT_THROW(EvaluateRollout(model, model.ZeroPb(), sim, 1), SpecificationError);
}

TEST(ExperimentTest, WithRadiusSetsSignedMomentArms) {
  const SimConfig sim = WithRadius(SimConfig{}, 0.04);
  EXPECT_EQ(sim.geometry.moment_arms[0], 0.04);
  EXPECT_EQ(sim.geometry.moment_arms[1], -0.04);
  EXPECT_EQ(sim.geometry.moment_arms[2], 0.04);
}

TEST(ExperimentTest, VariantSets) {
  const std::vector<AdaptVariant> v = StandardVariants(0.1);
  ASSERT_EQ(v.size(), 5u);
  EXPECT_EQ(v[0].name, "A");
  EXPECT_TRUE(v[0].constraints.empty());
  EXPECT_FALSE(v[1].use_matching_term);
  EXPECT_EQ(v[1].constraints.at(0).weight, 0.1);
  EXPECT_EQ(v[2].constraints.at(0).weight, -0.1);
  for (const AdaptVariant& x : OnlineVariants(0.1)) {
    EXPECT_TRUE(x.use_matching_term);
    EXPECT_EQ(x.constraints.at(0).kind, ConstraintKind::kJointVelocity);
  }
}

}  // namespace
}  // namespace stylebias
