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
#ifndef MIPNOISE_MOMENTS_MOMENTS_H_
#define MIPNOISE_MOMENTS_MOMENTS_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "core/base_algorithm.h"
#include "core/dataset.h"
#include "core/rng.h"
#include "core/subset.h"
#include "core/types.h"

namespace mipnoise {

inline constexpr double kDefaultSigmaFloor = 1e-12;

struct MomentEstimateOptions {
  // 1/(B-1) instead of 1/B; only defined for M = 2.
  bool unbiased_variance = false;
  double sigma_floor = kDefaultSigmaFloor;
};

struct MomentEstimate {
  MomentProfile profile;
  std::size_t replicates = 0;
  // Coordinates whose plug-in moment was zero and were raised to the floor.
  std::vector<std::size_t> floored;
  std::vector<std::string> warnings;
};

// Plug-in estimator over B random half-splits of `data`:
//   sigma_j = ((1/B) sum_i (theta^(i)_j - mean_j)^M)^{1/M}.
// M must be even and >= 2; B >= 2. Replicates use child streams of rng by
// index, so the result does not depend on evaluation order.
MomentEstimate EstimateMoments(const DatasetTable& data,
                               const BaseAlgorithm& alg, std::size_t replicates,
                               int moment_order, Rng& rng,
                               const MomentEstimateOptions& options = {});

// Exact per-coordinate moments over all size-k subsets with uniform weight:
// E|theta_j - E theta_j|^M when central, E theta_j^M otherwise.
std::vector<double> ExactMoments(const DatasetTable& data,
                                 const BaseAlgorithm& alg, std::size_t k,
                                 int moment_order, bool central,
                                 std::uint64_t cap = kDefaultEnumerationCap);

// Profile sigma_j = (E|theta_j - E theta_j|^M)^{1/M} from ExactMoments, with
// zero moments raised to the floor.
MomentProfile ExactMomentProfile(const DatasetTable& data,
                                 const BaseAlgorithm& alg, std::size_t k,
                                 int moment_order,
                                 double sigma_floor = kDefaultSigmaFloor,
                                 std::uint64_t cap = kDefaultEnumerationCap);

enum class SensitivityNorm {
  kAbs,        // L1 norm of the output difference (|.| for scalars)
  kSigmaNorm,  // ||.||_{sigma,M} under a supplied profile
};

// max over adjacent D ~ D' (|D| = |D'| = k, |D n D'| = k-1) of
// ||alg(D) - alg(D')||.
double SensitivityExact(const DatasetTable& data, const BaseAlgorithm& alg,
                        std::size_t k, SensitivityNorm norm,
                        const MomentProfile* profile = nullptr,
                        std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mipnoise

#endif  // MIPNOISE_MOMENTS_MOMENTS_H_
