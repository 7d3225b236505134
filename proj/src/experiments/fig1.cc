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
#include "experiments/fig1.h"

#include <cmath>

#include "attack/conversion.h"
#include "core/base_algorithm.h"
#include "core/error.h"
#include "core/rng.h"
#include "moments/moments.h"
#include "moments/pathological.h"
#include "noise/noise.h"

namespace mipnoise {

Fig1Inputs ComputeFig1Inputs(std::size_t n, std::size_t hybrid_samples,
                             std::uint64_t seed) {
  if (n < 4 || n % 2 != 0) {
    ThrowInvalid("fig1 needs even n >= 4, got " + std::to_string(n));
  }
  Fig1Inputs in;
  in.n = n;
  if (n <= kFig1ExactLimit) {
    in.sigma = std::sqrt(ExactPathologicalVariance(n).variance);
    in.sensitivity = SensitivityExact(BuildPathologicalDataset(n), ReciprocalSum(),
                                      n / 2, SensitivityNorm::kAbs);
    in.exact = true;
  } else {
    Rng rng = Rng(seed).Child("fig1-variance").Child(n);
    in.sigma = std::sqrt(HybridPathologicalVariance(n, hybrid_samples, rng).variance);
    in.sensitivity = PathologicalSensitivityLowerBound(n);
  }
  return in;
}

double MipNoiseScale(double eta, double sigma) {
  return MipScaleConstant(eta, 2, ScaleConstant::kWeighted) * sigma;
}

double DpNoiseScale(double eta, double sensitivity) {
  if (eta >= 0.5) return 0.0;  // epsilon -> infinity
  return sensitivity / DpEpsilonFromEta(eta);
}

Fig1Result RunFig1(const ExperimentConfig& config) {
  const long long samples = config.ExtraInt("hybrid_samples", 20000);
  if (samples < 2) ThrowInvalid("hybrid_samples must be >= 2");
  Fig1Result result;
  for (std::size_t n : config.n_values) {
    const Fig1Inputs in =
        ComputeFig1Inputs(n, static_cast<std::size_t>(samples), config.seed);
    result.inputs.push_back(in);
    bool dp_above = true;
    for (double eta : config.eta_grid) {
      const double mip = MipNoiseScale(eta, in.sigma);
      const double dp = DpNoiseScale(eta, in.sensitivity);
      result.rows.push_back({"mip", eta, n, 0, mip});
      result.rows.push_back({"dp", eta, n, 0, dp});
      dp_above = dp_above && dp > mip;
    }
    if (dp_above && (!result.crossover_n || n < *result.crossover_n)) {
      result.crossover_n = n;
    }
  }
  return result;
}

}  // namespace mipnoise
