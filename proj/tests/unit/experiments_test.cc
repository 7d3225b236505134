//
// Copyright 2026 The mipnoise Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"

#include "core/error.h"
#include "core/rng.h"
#include "experiments/config.h"
#include "experiments/emit.h"
#include "experiments/fig1.h"
#include "experiments/psd_sqrt.h"
#include "experiments/runner.h"
#include "experiments/synth.h"
#include "noise/noise.h"

namespace mipnoise {
namespace {

using ::testing::HasSubstr;
namespace fs = std::filesystem;

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("mipnoise_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(ScaleCurvesTest, WorkedValues) {
  EXPECT_NEAR(DpNoiseScale(0.25, 1.0), 1.0 / std::log(3.0), 1e-15);
  EXPECT_NEAR(DpNoiseScale(0.25, 1.0), 0.9102, 1e-4);
  EXPECT_NEAR(MipNoiseScale(0.1, 2.0), 2 * 61.6 * 61.6, 1e-9);
}

TEST(Fig1Test, MipCurveIsOneLineAndCrossoverIsEarly) {
  ExperimentConfig config = ParseConfig("n_values = 4, 12, 20, 36\nhybrid_samples = 5000\n");
  config.name = "fig1";
  ApplyDefaults(config);
  ASSERT_EQ(config.eta_grid.size(), 50u);
  const Fig1Result result = RunFig1(config);
  ASSERT_EQ(result.inputs.size(), 4u);
  EXPECT_TRUE(result.inputs[2].exact);
  EXPECT_FALSE(result.inputs[3].exact);

  // The MIP scale depends on n only through sigma.
  for (const ResultRow& row : result.rows) {
    if (row.method != "mip") continue;
    const Fig1Inputs* in = nullptr;
    for (const auto& candidate : result.inputs) {
      if (candidate.n == row.n) in = &candidate;
    }
    ASSERT_NE(in, nullptr);
    EXPECT_NEAR(row.value, std::pow(6.16 / row.eta, 2) * in->sigma, 1e-9 * row.value);
  }
  for (const ResultRow& row : result.rows) {
    if (row.method == "dp" && row.n == 36) {
      const double mip = MipNoiseScale(row.eta, result.inputs[3].sigma);
      EXPECT_GT(row.value, mip) << row.eta;
    }
  }
  ASSERT_TRUE(result.crossover_n.has_value());
  EXPECT_LE(*result.crossover_n, 36u);
}

TEST(Fig1Test, ExactInputsMatchClosedFormAtFour) {
  const Fig1Inputs in = ComputeFig1Inputs(4, 100, 1);
  EXPECT_TRUE(in.exact);
  EXPECT_NEAR(in.sensitivity, std::sqrt(6.0) - 0.2, 1e-12);
  const std::vector<double> outs = {std::sqrt(6.0),
                                    1.0 / 3,
                                    1.0 / 5,
                                    1.0 / 6,
                                    1.0 / (1 + std::sqrt(1.0 / 6)),
                                    1.0 / (3 + std::sqrt(1.0 / 6))};
  double mean = 0.0, var = 0.0;
  for (double v : outs) mean += v / 6;
  for (double v : outs) var += (v - mean) * (v - mean) / 6;
  EXPECT_NEAR(in.sigma, std::sqrt(var), 1e-12);
}

TEST(PsdSqrtTest, Examples) {
  const Eigen::MatrixXd w = GeneratorWeights(Eigen::MatrixXd::Identity(3, 3));
  EXPECT_TRUE(w.isApprox(std::sqrt(2.0) * Eigen::MatrixXd::Identity(3, 3), 1e-14));

  Eigen::MatrixXd a(2, 2);
  a << 4, 0, 0, 9;
  Eigen::MatrixXd expected(2, 2);
  expected << std::sqrt(8.0), 0, 0, std::sqrt(18.0);
  EXPECT_TRUE(GeneratorWeights(a).isApprox(expected, 1e-14));

  Eigen::MatrixXd indefinite(2, 2);
  indefinite << 1, 3, 0, -2;  // A + A^T = [[2, 3], [3, -4]]
  const Eigen::MatrixXd clamped = GeneratorWeights(indefinite);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(clamped);
  EXPECT_GE(solver.eigenvalues().minCoeff(), -1e-12);
  EXPECT_NEAR(solver.eigenvalues().minCoeff(), 0.0, 1e-7);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> sym(indefinite + indefinite.transpose());
  const Eigen::VectorXd kept = sym.eigenvalues().cwiseMax(0.0);
  const Eigen::MatrixXd target =
      sym.eigenvectors() * kept.asDiagonal() * sym.eigenvectors().transpose();
  EXPECT_LT((clamped * clamped - target).norm(), 1e-10 * target.norm());
}

TEST(PsdSqrtTest, SquareRootOfSquareIsIdentityMap) {
  Rng rng(1);
  for (int trial = 0; trial < 20; ++trial) {
    Eigen::MatrixXd g(4, 4);
    for (int i = 0; i < 16; ++i) g(i / 4, i % 4) = SampleStandardNormal(rng);
    const Eigen::MatrixXd w = g * g.transpose();  // symmetric PSD
    EXPECT_LT((ClampedSymmetricSqrt(w * w) - w).norm(), 1e-8 * w.norm());
  }
}

std::vector<ResultRow> SmallTable() {
  return {{"mip-M4", 0.1, 50, 0, 0.25}, {"mip-M4", 0.1, 50, 1, 0.35},
          {"dpsgd", 0.1, 50, 0, 1.0 / 3}, {"dpsgd", 0.2, 50, 0, 0.5}};
}

TEST(EmitTest, CsvShapeAndSummary) {
  const std::string one = CsvText({{"raw", 0.05, 10, 0, 0.5}});
  EXPECT_EQ(one, "method,eta,n,run,value\nraw,0.050000000000000003,10,0,0.5\n");

  const auto cells = Summarize(SmallTable());
  ASSERT_EQ(cells.size(), 3u);
  EXPECT_EQ(cells[0].method, "mip-M4");
  EXPECT_EQ(cells[0].count, 2u);
  EXPECT_NEAR(cells[0].mean, 0.3, 1e-15);
  EXPECT_NEAR(cells[0].std_error, std::sqrt(0.005) / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(cells[1].std_error, 0.0);

  const nlohmann::json summary = SummaryJson(SmallTable());
  EXPECT_EQ(summary["rows"], 4);
  EXPECT_EQ(summary["cells"].size(), 3u);
}

TEST(EmitTest, WritesReproducibleFiles) {
  const fs::path dir = FreshDir("emit");
  const EmittedFiles first = EmitResults(SmallTable(), dir, "t", "title", "error", true);
  const std::string csv = ReadFile(first.csv);
  const std::string svg = ReadFile(first.svg);
  EXPECT_THAT(svg, HasSubstr("<svg"));
  EXPECT_TRUE(fs::exists(first.json));
  EmitResults(SmallTable(), dir, "t", "title", "error", true);
  EXPECT_EQ(ReadFile(first.csv), csv);
  EXPECT_EQ(ReadFile(first.svg), svg);
}

TEST(EmitTest, Errors) {
  const fs::path dir = FreshDir("emit_errors");
  try {
    EmitResults({}, dir, "t", "title", "y", false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  std::vector<ResultRow> bad = SmallTable();
  bad[0].value = std::nan("");
  EXPECT_THROW(EmitResults(bad, dir, "t", "title", "y", false), Error);

  fs::create_directories(dir);
  std::ofstream(dir / "blocker") << "x";
  try {
    EmitResults(SmallTable(), dir / "blocker" / "sub", "t", "title", "y", false);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kIo);
  }
}

TEST(ConfigTest, ParsesListsOverridesAndComments) {
  const ExperimentConfig c = ParseConfig(
      "# comment\n"
      "eta_grid = linspace(0.1, 0.3, 3)\n"
      "M_set = 4, 6  # trailing\n"
      "seed = 7\n"
      "seed = 9\n"
      "runs=2\n"
      "color = blue\n");
  ASSERT_EQ(c.eta_grid.size(), 3u);
  EXPECT_NEAR(c.eta_grid[1], 0.2, 1e-15);
  EXPECT_EQ(c.m_set, (std::vector<int>{4, 6}));
  EXPECT_EQ(c.seed, 9u);
  EXPECT_EQ(c.runs, 2u);
  EXPECT_EQ(c.ExtraOr("color", ""), "blue");
  EXPECT_EQ(c.ExtraInt("missing", 5), 5);
}

TEST(ConfigTest, MalformedInputNamesTheLine) {
  try {
    ParseConfig("runs = 2\nthis line has no equals\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kMalformedInput);
    EXPECT_THAT(e.what(), HasSubstr("line 2"));
  }
  EXPECT_THROW(ParseConfig("eta_grid = 0.1, abc"), Error);
  EXPECT_THROW(ParseConfig("seed = -4"), Error);

  ExperimentConfig odd = ParseConfig("M_set = 3");
  EXPECT_THROW(ApplyDefaults(odd), Error);
  ExperimentConfig eta = ParseConfig("eta_grid = 0.7");
  EXPECT_THROW(ApplyDefaults(eta), Error);
}

TEST(ConfigTest, HashIgnoresOrderAndOutputDir) {
  ExperimentConfig a = ParseConfig("seed = 3\nruns = 2\nout = here\n");
  ExperimentConfig b = ParseConfig("runs = 2\nseed = 3\nout = there\n");
  EXPECT_EQ(ConfigHash(a), ConfigHash(b));
  EXPECT_EQ(ConfigHash(a).size(), 16u);
  b.seed = 4;
  EXPECT_NE(ConfigHash(a), ConfigHash(b));
}

TEST(SynthTest, GroundTruthHasRequestedSpectrum) {
  const Eigen::MatrixXd sigma = SynthGroundTruth({1, 2, 5}, 3);
  EXPECT_TRUE(sigma.isApprox(sigma.transpose(), 1e-14));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(sigma);
  EXPECT_NEAR(solver.eigenvalues()[0], 1, 1e-12);
  EXPECT_NEAR(solver.eigenvalues()[2], 5, 1e-12);
  EXPECT_GT((sigma - sigma.diagonal().asDiagonal().toDenseMatrix()).norm(), 0.1);
  EXPECT_THROW(SynthGroundTruth({1, 0, 2}, 3), Error);
}

TEST(SynthTest, SampledCovarianceAndRelativeError) {
  const Eigen::MatrixXd sigma = SynthGroundTruth({1, 2, 5}, 3);
  Rng rng(4);
  const DatasetTable table = SampleGaussianTable(sigma, 200000, rng);
  std::vector<double> s(9, 0.0);
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) s[3 * i + j] += table.at(r, i) * table.at(r, j) / 200000;
    }
  }
  EXPECT_LT(RelativeError(s, sigma), 0.01);
  std::vector<double> zero(9, 0.0);
  EXPECT_DOUBLE_EQ(RelativeError(zero, sigma), 1.0);
}

TEST(SynthTest, SmallRunIsDeterministicAndRawErrorShrinks) {
  const std::string text =
      "name = synth\neta_grid = 0.1, 0.3\nM_set = 4\nruns = 3\nsteps = 60\nB = 16\n";
  ExperimentConfig small = ParseConfig(text + "n_samples = 1000\n");
  ApplyDefaults(small);
  const SynthResult a = RunSynth(small);
  const SynthResult b = RunSynth(small);
  ASSERT_EQ(a.rows.size(), b.rows.size());
  std::set<std::string> methods;
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].value, b.rows[i].value);
    methods.insert(a.rows[i].method);
  }
  EXPECT_EQ(methods, (std::set<std::string>{"raw", "mip-M4", "dpsgd"}));

  ExperimentConfig large = ParseConfig(text + "n_samples = 40000\ndpsgd = 0\n");
  ApplyDefaults(large);
  const SynthResult c = RunSynth(large);
  auto raw_mean = [](const SynthResult& r) {
    double acc = 0.0;
    int count = 0;
    for (const ResultRow& row : r.rows) {
      if (row.method == "raw") acc += row.value, ++count;
    }
    return acc / count;
  };
  EXPECT_LT(raw_mean(c), raw_mean(a));

  ExperimentConfig tiny = ParseConfig("name = synth\nn_samples = 100\n");
  ApplyDefaults(tiny);
  EXPECT_THROW(RunSynth(tiny), Error);
}

TEST(RunnerTest, MomentsAndPrivatizeManifests) {
  const fs::path dir = FreshDir("runner");
  const nlohmann::json moments = RunSubcommand(
      "moments", "data = grid:8\nestimator = exact\nM = 2\nout = " + dir.string() + "\n");
  EXPECT_EQ(moments["subcommand"], "moments");
  EXPECT_EQ(moments["versions"]["mipnoise"], kMipnoiseVersion);
  EXPECT_EQ(moments["config_hash"].get<std::string>().size(), 16u);
  const nlohmann::json written = nlohmann::json::parse(ReadFile(dir / "moments.json"));
  EXPECT_EQ(written["estimator"], "exact");
  EXPECT_EQ(written["M"], 2);
  EXPECT_EQ(written["sigma"].size(), 1u);

  const nlohmann::json a = RunSubcommand(
      "privatize", "data = grid:8\nmethod = laplace-dp\nepsilon = 1\nsensitivity = 0.25\n"
                   "seed = 5\nout = " + dir.string() + "\n");
  const nlohmann::json b = RunSubcommand(
      "privatize", "data = grid:8\nmethod = laplace-dp\nepsilon = 1\nsensitivity = 0.25\n"
                   "seed = 5\nout = " + dir.string() + "\n");
  EXPECT_EQ(a["result"], b["result"]);

  try {
    RunSubcommand("nope", "");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kInvalidArgument);
  }
  EXPECT_THROW(RunSubcommand("moments", "estimator = exact\n"), Error);
}

TEST(RunnerTest, AttackEvalReportsExactAccuracy) {
  const fs::path dir = FreshDir("attack_eval");
  const nlohmann::json manifest = RunSubcommand(
      "attack-eval", "mechanism = binary-tight-dp\nrounds = 20000\nout = " + dir.string() + "\n");
  const std::string csv = ReadFile(dir / "attack.csv");
  EXPECT_THAT(csv, HasSubstr("target_id,accuracy,stderr"));
  EXPECT_THAT(manifest.dump(), HasSubstr("exact_accuracy"));
}

}  // namespace
}  // namespace mipnoise
