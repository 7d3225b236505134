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
#include "noise/noise.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/policies/policy.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include "core/error.h"

namespace mipnoise {
namespace {

using NoPromotePolicy = boost::math::policies::policy<
    boost::math::policies::promote_double<false>>;

void CheckDims(std::size_t got, const MomentProfile& profile) {
  if (got != profile.dim()) {
    ThrowInvalid("dimension mismatch: vector has " + std::to_string(got) +
                 " entries, profile has " + std::to_string(profile.dim()));
  }
}

}  // namespace

double ScaleConstantValue(ScaleConstant constant) {
  return constant == ScaleConstant::kWeighted ? 6.16 : 7.5;
}

double SigmaNorm(std::span<const double> x, const MomentProfile& profile) {
  CheckDims(x.size(), profile);
  const auto& sigma = profile.sigma();
  const double m = profile.order();
  // Factor out the largest ratio so |x_i/sigma_i|^M cannot overflow.
  double peak = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    peak = std::max(peak, std::abs(x[i]) / sigma[i]);
  }
  if (peak == 0.0) return 0.0;
  if (!std::isfinite(peak)) return peak;
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sum += std::pow(std::abs(x[i]) / sigma[i] / peak, m);
  }
  return peak * std::pow(sum / static_cast<double>(x.size()), 1.0 / m);
}

double ScaleFormula(double ratio, double moment_order) {
  return std::pow(ratio, 1.0 + 2.0 / moment_order);
}

double MipScaleConstant(double eta, int moment_order, ScaleConstant constant) {
  if (!(eta > 0.0 && eta <= 0.5)) ThrowInvalid("eta must lie in (0, 1/2]");
  if (moment_order < 2) ThrowInvalid("moment order M must be >= 2");
  return ScaleFormula(ScaleConstantValue(constant) / eta, moment_order);
}

NoiseVariant ParseNoiseVariant(std::string_view name) {
  if (name == "laplace-radius" || name == "laplace_radius") {
    return NoiseVariant::kLaplaceRadius;
  }
  if (name == "density-exact" || name == "density_exact") {
    return NoiseVariant::kDensityExact;
  }
  ThrowInvalid("unknown noise variant '" + std::string(name) +
               "' (expected laplace-radius or density-exact)");
}

const char* NoiseVariantName(NoiseVariant variant) {
  return variant == NoiseVariant::kDensityExact ? "density-exact"
                                                : "laplace-radius";
}

NoiseSpec MakeNoiseSpec(double eta, MomentProfile profile, NoiseVariant variant,
                        ScaleConstant constant) {
  const double c = MipScaleConstant(eta, profile.order(), constant);
  return NoiseSpec{eta, c, std::move(profile), variant, constant};
}

NoiseSpec MakeIsotropicNoiseSpec(std::size_t dim, double sigma, double eta,
                                 int moment_order) {
  if (dim == 0) ThrowInvalid("isotropic noise needs dim > 0");
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    ThrowInvalid("sigma must be positive and finite");
  }
  const double per_coord =
      sigma * std::pow(static_cast<double>(dim), -1.0 / moment_order);
  return MakeNoiseSpec(eta,
                       MomentProfile(std::vector<double>(dim, per_coord),
                                     moment_order),
                       NoiseVariant::kDensityExact, ScaleConstant::kIsotropic);
}

double SampleGenNormal(double alpha, double beta, Rng& rng) {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) {
    ThrowInvalid("GenNormal: alpha must be positive");
  }
  if (!(beta >= 1.0) || !std::isfinite(beta)) {
    ThrowInvalid("GenNormal: beta must be >= 1");
  }
  // (|x|/alpha)^beta ~ Gamma(1/beta, 1).
  const double g =
      boost::math::gamma_p_inv(1.0 / beta, rng.Uniform(), NoPromotePolicy());
  const double magnitude = alpha * std::pow(g, 1.0 / beta);
  return rng.FairCoin() ? magnitude : -magnitude;
}

double SampleLaplace(double scale, Rng& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    ThrowInvalid("Laplace: scale must be positive");
  }
  const double u = rng.Uniform() - 0.5;
  return u < 0 ? scale * std::log1p(2.0 * u) : -scale * std::log1p(-2.0 * u);
}

double SampleGamma(double shape, double scale, Rng& rng) {
  if (!(shape > 0.0) || !(scale > 0.0)) {
    ThrowInvalid("Gamma: shape and scale must be positive");
  }
  return scale *
         boost::math::gamma_p_inv(shape, rng.Uniform(), NoPromotePolicy());
}

double SampleStandardNormal(Rng& rng) {
  const double u1 = rng.Uniform();
  const double u2 = rng.Uniform();
  return std::sqrt(-2.0 * std::log(u1)) *
         std::cos(2.0 * std::numbers::pi * u2);
}

std::vector<double> SampleDirection(const MomentProfile& profile, Rng& rng) {
  std::vector<double> y(profile.dim());
  double norm = 0.0;
  // A zero draw has probability zero but is retried rather than divided by.
  while (norm == 0.0) {
    for (std::size_t i = 0; i < y.size(); ++i) {
      y[i] = SampleGenNormal(profile.sigma()[i], profile.order(), rng);
    }
    norm = SigmaNorm(y, profile);
  }
  for (double& v : y) v /= norm;
  return y;
}

std::vector<double> SampleMipNoise(const NoiseSpec& spec, Rng& rng) {
  std::vector<double> u = SampleDirection(spec.profile, rng);
  const double r =
      spec.variant == NoiseVariant::kLaplaceRadius
          ? SampleLaplace(spec.scale, rng)
          : SampleGamma(static_cast<double>(spec.profile.dim()), spec.scale,
                        rng);
  for (double& v : u) v *= r;
  return u;
}

double NoiseLogDensity(const NoiseSpec& spec, std::span<const double> x) {
  const double norm = SigmaNorm(x, spec.profile);
  double log_density = -norm / spec.scale;
  if (spec.variant == NoiseVariant::kLaplaceRadius && x.size() > 1) {
    log_density -= static_cast<double>(x.size() - 1) * std::log(norm);
  }
  return log_density;
}

}  // namespace mipnoise
