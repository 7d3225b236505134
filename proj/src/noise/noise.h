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
#ifndef MIPNOISE_NOISE_NOISE_H_
#define MIPNOISE_NOISE_NOISE_H_

#include <span>
#include <string_view>
#include <vector>

#include "core/rng.h"
#include "core/types.h"

namespace mipnoise {

// How the radius of X = r U is drawn.
enum class NoiseVariant {
  // r ~ Laplace(c), signed; U carries the direction. Marginal law of
  // ||X||_{sigma,M} is |Laplace(c)|.
  kLaplaceRadius,
  // r ~ Gamma(shape d, scale c), so X has density proportional to
  // exp(-||x||_{sigma,M} / c) on R^d.
  kDensityExact,
};

// "laplace-radius" / "density-exact" (underscores accepted).
NoiseVariant ParseNoiseVariant(std::string_view name);
const char* NoiseVariantName(NoiseVariant variant);

// Numerator of the scale constant: 6.16 (weighted-norm sampler, M >= 2) or
// 7.5 (isotropic bound).
enum class ScaleConstant { kWeighted, kIsotropic };

double ScaleConstantValue(ScaleConstant constant);

struct NoiseSpec {
  double eta;
  double scale;  // c = (constant / eta)^{1 + 2/M}
  MomentProfile profile;
  NoiseVariant variant = NoiseVariant::kLaplaceRadius;
  ScaleConstant constant = ScaleConstant::kWeighted;
};

// ||x||_{sigma,M} = (sum_i |x_i|^M / (d sigma_i^M))^{1/M}.
double SigmaNorm(std::span<const double> x, const MomentProfile& profile);

// (ratio)^{1 + 2/M}; the unchecked arithmetic behind MipScaleConstant.
double ScaleFormula(double ratio, double moment_order);

// c = (constant / eta)^{1 + 2/M}; eta in (0, 1/2], M >= 2.
double MipScaleConstant(double eta, int moment_order, ScaleConstant constant);

NoiseSpec MakeNoiseSpec(double eta, MomentProfile profile, NoiseVariant variant,
                        ScaleConstant constant = ScaleConstant::kWeighted);

// Isotropic noise with density proportional to exp(-||x||_M / (c sigma)) for
// a scalar moment bound sigma: a profile with every sigma_i equal to
// sigma * d^{-1/M}, the density-exact radius and the 7.5 constant.
NoiseSpec MakeIsotropicNoiseSpec(std::size_t dim, double sigma, double eta,
                                 int moment_order);

// Symmetric generalized normal, density proportional to exp(-(|x|/alpha)^beta).
// Inverse transform: |x| = alpha * P^{-1}(1/beta, u)^{1/beta}, fair-coin sign.
double SampleGenNormal(double alpha, double beta, Rng& rng);

// Density (1/2b) exp(-|x|/b).
double SampleLaplace(double scale, Rng& rng);

// Gamma(shape, scale) by inverting the regularized lower incomplete gamma.
double SampleGamma(double shape, double scale, Rng& rng);

// Standard normal (Box-Muller, one output per call).
double SampleStandardNormal(Rng& rng);

// Y_i ~ GenNormal(0, sigma_i, M), U = Y / ||Y||_{sigma,M}; ||U||_{sigma,M} = 1.
std::vector<double> SampleDirection(const MomentProfile& profile, Rng& rng);

// X = r U with r drawn according to spec.variant.
std::vector<double> SampleMipNoise(const NoiseSpec& spec, Rng& rng);

// Log-density of X at x up to an additive constant independent of x:
//   kDensityExact:  -||x||/c
//   kLaplaceRadius: -||x||/c - (d-1) log||x||
// (the second follows from the r^{d-1} surface factor of the norm's sphere).
double NoiseLogDensity(const NoiseSpec& spec, std::span<const double> x);

}  // namespace mipnoise

#endif  // MIPNOISE_NOISE_NOISE_H_
