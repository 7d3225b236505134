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
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include <boost/math/special_functions/gamma.hpp>

#include "gtest/gtest.h"

#include "core/error.h"
#include "core/rng.h"
#include "noise/noise.h"
#include "stats.h"

namespace mipnoise {
namespace {

constexpr std::size_t kDraws = 1000000;

// Oracle for the weighted norm, written out directly.
double NormOracle(const std::vector<double>& x, const std::vector<double>& sigma,
                  int m) {
  double acc = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += std::pow(std::abs(x[i]), m) / (x.size() * std::pow(sigma[i], m));
  }
  return std::pow(acc, 1.0 / m);
}

TEST(SigmaNormTest, WorkedExamples) {
  EXPECT_EQ(SigmaNorm(std::vector<double>{0.0, 0.0}, MomentProfile({1.0, 3.0}, 2)), 0.0);
  EXPECT_DOUBLE_EQ(SigmaNorm(std::vector<double>{2.0}, MomentProfile({2.0}, 2)), 1.0);
  EXPECT_DOUBLE_EQ(SigmaNorm(std::vector<double>{1.0, 1.0}, MomentProfile({1.0, 1.0}, 2)),
                   1.0);
}

TEST(SigmaNormTest, DimensionMismatchIsRejected) {
  EXPECT_THROW(SigmaNorm(std::vector<double>{1.0}, MomentProfile({1.0, 1.0}, 2)), Error);
}

TEST(SigmaNormTest, AgreesWithOracleAndStaysFiniteForHugeInputs) {
  Rng rng(1);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 1 + rng.UniformIndex(8);
    const int m = 2 * (1 + static_cast<int>(rng.UniformIndex(3)));
    std::vector<double> x(d), sigma(d);
    for (std::size_t i = 0; i < d; ++i) {
      x[i] = 10 * rng.Uniform() - 5;
      sigma[i] = 0.1 + 3 * rng.Uniform();
    }
    EXPECT_NEAR(SigmaNorm(x, MomentProfile(sigma, m)), NormOracle(x, sigma, m),
                1e-12 * NormOracle(x, sigma, m));
  }
  const double big = SigmaNorm(std::vector<double>{1e200, 1e200}, MomentProfile({1.0, 1.0}, 6));
  EXPECT_TRUE(std::isfinite(big));
  EXPECT_NEAR(big / 1e200, 1.0, 1e-12);
}

TEST(SigmaNormTest, NormAxiomsOnRandomTriples) {
  Rng rng(2);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t d = 1 + rng.UniformIndex(8);
    const int m = 2 * (1 + static_cast<int>(rng.UniformIndex(3)));
    std::vector<double> sigma(d), x(d), y(d), sum(d), scaled(d);
    const double a = 6 * rng.Uniform() - 3;
    for (std::size_t i = 0; i < d; ++i) {
      sigma[i] = 0.2 + rng.Uniform();
      x[i] = 4 * rng.Uniform() - 2;
      y[i] = 4 * rng.Uniform() - 2;
      sum[i] = x[i] + y[i];
      scaled[i] = a * x[i];
    }
    const MomentProfile p(sigma, m);
    EXPECT_LE(SigmaNorm(sum, p), SigmaNorm(x, p) + SigmaNorm(y, p) + 1e-12);
    EXPECT_NEAR(SigmaNorm(scaled, p), std::abs(a) * SigmaNorm(x, p), 1e-12);
    EXPECT_GT(SigmaNorm(x, p), 0.0);
  }
}

TEST(GenNormalTest, SecondMomentAtBetaTwo) {
  Rng rng(3);
  const double alpha = 1.7;
  double acc = 0.0;
  for (std::size_t i = 0; i < kDraws; ++i) {
    const double y = SampleGenNormal(alpha, 2.0, rng);
    acc += y * y;
  }
  EXPECT_NEAR(acc / kDraws / (alpha * alpha / 2), 1.0, 0.02);
}

TEST(GenNormalTest, BetaOneIsLaplace) {
  Rng rng(4);
  const double alpha = 0.8;
  std::vector<double> draws(kDraws);
  for (double& y : draws) y = SampleGenNormal(alpha, 1.0, rng);
  EXPECT_LT(testing::KsDistance(draws, [&](double x) { return testing::LaplaceCdf(x, alpha); }),
            0.005);
}

TEST(GenNormalTest, SymmetricAndAbsoluteMomentsMatchGammaRatio) {
  for (double beta : {1.0, 2.0, 4.0, 6.0}) {
    Rng rng(static_cast<std::uint64_t>(10 * beta));
    std::vector<double> draws(kDraws);
    double abs_m = 0.0;
    for (double& y : draws) {
      y = SampleGenNormal(1.3, beta, rng);
      abs_m += std::pow(std::abs(y), beta);
    }
    EXPECT_LE(std::abs(testing::Mean(draws)), 4 * testing::StdError(draws)) << beta;
    EXPECT_NEAR(abs_m / kDraws / testing::GenNormalAbsMoment(1.3, beta, beta), 1.0, 0.02)
        << beta;
  }
}

TEST(GenNormalTest, RejectsBadParameters) {
  Rng rng(5);
  EXPECT_THROW(SampleGenNormal(0.0, 2.0, rng), Error);
  EXPECT_THROW(SampleGenNormal(1.0, 0.5, rng), Error);
}

TEST(LaplaceTest, VarianceAndMedianOfMagnitude) {
  Rng rng(6);
  const double b = 2.5;
  std::vector<double> draws(kDraws), mags(kDraws);
  for (std::size_t i = 0; i < kDraws; ++i) {
    draws[i] = SampleLaplace(b, rng);
    mags[i] = std::abs(draws[i]);
  }
  EXPECT_NEAR(testing::SampleVariance(draws) / (2 * b * b), 1.0, 0.02);
  std::nth_element(mags.begin(), mags.begin() + kDraws / 2, mags.end());
  EXPECT_NEAR(mags[kDraws / 2] / (b * std::log(2.0)), 1.0, 0.02);
  EXPECT_THROW(SampleLaplace(0.0, rng), Error);
}

TEST(ScaleConstantTest, ClosedFormValues) {
  EXPECT_NEAR(MipScaleConstant(0.1, 2, ScaleConstant::kWeighted), 3794.56, 1e-9);
  EXPECT_NEAR(MipScaleConstant(0.1, 2, ScaleConstant::kIsotropic), 75.0 * 75.0, 1e-9);
  EXPECT_NEAR(MipScaleConstant(0.1, 2000000, ScaleConstant::kWeighted), 61.6, 1e-3);
  // The unchecked formula with a unit base.
  EXPECT_DOUBLE_EQ(ScaleFormula(6.16 / 6.16, 2), 1.0);
}

TEST(ScaleConstantTest, RejectsOutOfRangeEta) {
  EXPECT_THROW(MipScaleConstant(0.0, 2, ScaleConstant::kWeighted), Error);
  EXPECT_THROW(MipScaleConstant(0.51, 2, ScaleConstant::kWeighted), Error);
  EXPECT_THROW(MipScaleConstant(6.16, 2, ScaleConstant::kWeighted), Error);
  EXPECT_THROW(MipScaleConstant(0.1, 1, ScaleConstant::kWeighted), Error);
  EXPECT_NO_THROW(MipScaleConstant(0.5, 2, ScaleConstant::kWeighted));
}

TEST(MipNoiseTest, DirectionHasUnitNorm) {
  Rng rng(7);
  const MomentProfile profile({0.3, 2.0, 1e-6, 50.0}, 4);
  for (int i = 0; i < 100000; ++i) {
    const auto u = SampleDirection(profile, rng);
    ASSERT_NEAR(SigmaNorm(u, profile), 1.0, 1e-12);
  }
}

TEST(MipNoiseTest, LaplaceRadiusNormIsFoldedLaplace) {
  Rng rng(8);
  const NoiseSpec spec =
      MakeNoiseSpec(0.3, MomentProfile({0.5, 1.0, 2.0}, 4), NoiseVariant::kLaplaceRadius);
  std::vector<double> norms(kDraws);
  for (double& r : norms) r = SigmaNorm(SampleMipNoise(spec, rng), spec.profile);
  const double c = spec.scale;
  EXPECT_LT(testing::KsDistance(norms, [c](double r) { return 1.0 - std::exp(-r / c); }),
            0.005);
}

TEST(MipNoiseTest, DensityExactScalarIsLaplace) {
  Rng rng(9);
  const NoiseSpec spec =
      MakeNoiseSpec(0.2, MomentProfile({1.0}, 2), NoiseVariant::kDensityExact);
  std::vector<double> draws(kDraws);
  for (double& x : draws) x = SampleMipNoise(spec, rng)[0];
  EXPECT_NEAR(testing::SampleVariance(draws) / (2 * spec.scale * spec.scale), 1.0, 0.02);
}

TEST(MipNoiseTest, DensityExactRadiusIsGammaOfDimension) {
  Rng rng(10);
  const NoiseSpec spec =
      MakeNoiseSpec(0.4, MomentProfile({1.0, 0.5}, 2), NoiseVariant::kDensityExact);
  std::vector<double> norms(200000);
  for (double& r : norms) r = SigmaNorm(SampleMipNoise(spec, rng), spec.profile);
  const double c = spec.scale;
  EXPECT_LT(testing::KsDistance(norms,
                                [c](double r) { return boost::math::gamma_p(2.0, r / c); }),
            0.01);
}

TEST(MipNoiseTest, LaplaceRadiusMissesGammaRadiusAboveOneDimension) {
  Rng rng(16);
  const NoiseSpec spec =
      MakeNoiseSpec(0.4, MomentProfile({1.0, 0.5}, 2), NoiseVariant::kLaplaceRadius);
  std::vector<double> norms(200000);
  for (double& r : norms) r = SigmaNorm(SampleMipNoise(spec, rng), spec.profile);
  const double c = spec.scale;
  EXPECT_GT(testing::KsDistance(norms,
                                [c](double r) { return boost::math::gamma_p(2.0, r / c); }),
            0.1);
}

TEST(MipNoiseTest, EqualSigmasGiveIsotropicDirectionsInTheEuclideanCase) {
  Rng rng(11);
  const MomentProfile profile({1.0, 1.0}, 2);
  std::vector<double> angles(200000);
  for (double& a : angles) {
    const auto u = SampleDirection(profile, rng);
    a = std::atan2(u[1], u[0]);
  }
  const double pi = std::numbers::pi;
  EXPECT_LT(testing::KsDistance(angles, [pi](double a) { return (a + pi) / (2 * pi); }),
            0.005);
}

TEST(MipNoiseTest, ChebyshevTailHolds) {
  for (int m : {2, 4}) {
    Rng rng(12 + m);
    const NoiseSpec spec =
        MakeNoiseSpec(0.25, MomentProfile({1.0}, m), NoiseVariant::kLaplaceRadius);
    std::vector<double> draws(kDraws);
    for (double& x : draws) x = SampleMipNoise(spec, rng)[0];
    const double mean = testing::Mean(draws);
    double moment = 0.0;
    for (double x : draws) moment += std::pow(std::abs(x - mean), m);
    const double sigma = std::pow(moment / kDraws, 1.0 / m);
    for (double t : {2.0, 4.0, 8.0}) {
      std::size_t over = 0;
      for (double x : draws) over += std::abs(x - mean) > t * sigma;
      const double freq = static_cast<double>(over) / kDraws;
      const double bound = 1.0 / std::pow(t, m);
      EXPECT_LE(freq, bound + 4 * testing::BinomialStdError(bound, kDraws))
          << "M=" << m << " t=" << t;
    }
  }
}

TEST(MipNoiseTest, LogDensitiesOfBothVariants) {
  const MomentProfile profile({1.0, 2.0}, 2);
  const NoiseSpec exact = MakeNoiseSpec(0.3, profile, NoiseVariant::kDensityExact);
  const NoiseSpec radius = MakeNoiseSpec(0.3, profile, NoiseVariant::kLaplaceRadius);
  const std::vector<double> x = {30.0, -70.0};
  const double norm = NormOracle(x, profile.sigma(), 2);
  EXPECT_NEAR(NoiseLogDensity(exact, x), -norm / exact.scale, 1e-12);
  EXPECT_NEAR(NoiseLogDensity(radius, x), -norm / radius.scale - std::log(norm), 1e-12);
}

TEST(MipNoiseTest, IsotropicSpecSpreadsScalarSigma) {
  const NoiseSpec spec = MakeIsotropicNoiseSpec(4, 2.0, 0.2, 4);
  EXPECT_EQ(spec.variant, NoiseVariant::kDensityExact);
  EXPECT_DOUBLE_EQ(spec.scale, MipScaleConstant(0.2, 4, ScaleConstant::kIsotropic));
  for (double s : spec.profile.sigma()) EXPECT_NEAR(s, 2.0 * std::pow(4.0, -0.25), 1e-15);
}

TEST(MipNoiseTest, VariantNames) {
  EXPECT_EQ(ParseNoiseVariant("density-exact"), NoiseVariant::kDensityExact);
  EXPECT_EQ(ParseNoiseVariant("laplace_radius"), NoiseVariant::kLaplaceRadius);
  EXPECT_THROW(ParseNoiseVariant("paper"), Error);
}

}  // namespace
}  // namespace mipnoise
