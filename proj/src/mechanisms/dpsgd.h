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
#ifndef MIPNOISE_MECHANISMS_DPSGD_H_
#define MIPNOISE_MECHANISMS_DPSGD_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "core/dataset.h"
#include "core/types.h"

namespace mipnoise {

enum class DpsgdObjective { kCovarianceFit };

struct DpsgdOptions {
  DpsgdObjective objective = DpsgdObjective::kCovarianceFit;
  int steps = 500;
  double learning_rate = 0.4;
  // Fixed per-sample clip norm (may be +infinity); nullopt selects the
  // median heuristic.
  std::optional<double> clip_norm;
  double noise_multiplier = 1.0;
};

// zCDP composition of `steps` Gaussian steps (rho = steps / (2 z^2)),
// converted to (epsilon, delta = 1/n), then mapped to eta with the pure-DP
// formula. The eta value is an unproven extension when delta > 0.
struct DpsgdAccounting {
  double rho = 0.0;
  double epsilon = 0.0;
  double delta = 0.0;
  double eta = 0.0;
};

DpsgdAccounting AccountDpsgd(int steps, double noise_multiplier,
                             std::size_t dataset_size);

// Smallest noise multiplier whose accounted epsilon (at delta = 1/n) equals
// the target.
double NoiseMultiplierForEpsilon(double epsilon, int steps,
                                 std::size_t dataset_size);

// Median of all per-sample gradient norms recorded over a non-private,
// unclipped pilot run with the same steps and learning rate (lower median).
// Once the iterate is stationary (||A_{t+1} - A_t||_F <= 1e-15 ||A_t||_F)
// the remaining steps repeat the last step's norms and are counted by weight.
double MedianGradientNorm(const DatasetTable& train, int steps,
                          double learning_rate);

// Full-batch DP-SGD on the covariance objective over a random training half
// of `data`. Each step clips per-sample gradients 2(A - x x^T) to norm C,
// averages them, and adds N(0, (z C / k)^2) per coordinate.
MechanismOutput DpsgdTrain(const DatasetTable& data,
                           const DpsgdOptions& options, std::uint64_t seed);

// Same, on an explicit training table (no split).
MechanismOutput DpsgdTrainOn(const DatasetTable& train,
                             std::size_t dataset_size,
                             const DpsgdOptions& options, std::uint64_t seed);

}  // namespace mipnoise

#endif  // MIPNOISE_MECHANISMS_DPSGD_H_
