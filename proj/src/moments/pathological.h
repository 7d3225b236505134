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
#ifndef MIPNOISE_MOMENTS_PATHOLOGICAL_H_
#define MIPNOISE_MOMENTS_PATHOLOGICAL_H_

#include <cstddef>

#include "core/dataset.h"
#include "core/rng.h"

namespace mipnoise {

// Scalar dataset {2^0, ..., 2^{n-2}} u {A} with
// A = sqrt(p) - sum_{i=0}^{n/2-2} 2^i and p = 1/C(n, n/2). Under the
// reciprocal-sum algorithm the special half {2^0, ..., 2^{n/2-2}, A} maps to
// 1/sqrt(p) (probability p) while every other half maps into [0, 1], so the
// variance stays O(1) while the sensitivity grows like sqrt(C(n, n/2)).
// n must be even and >= 4.
DatasetTable BuildPathologicalDataset(std::size_t n);

// 1 / C(n, n/2).
double PathologicalSpecialProbability(std::size_t n);

// Lower bound on the sensitivity: p^{-1/2} - 1 (special value minus the
// largest ordinary value).
double PathologicalSensitivityLowerBound(std::size_t n);

struct PathologicalVariance {
  double mean = 0.0;
  double variance = 0.0;
  // Standard error of the variance estimate (0 when exact).
  double std_error = 0.0;
  // Upper envelope from ordinary outputs lying in [0, 1].
  double variance_upper_bound = 0.0;
  bool exact = false;
};

// Variance of the reciprocal-sum output over uniformly random halves.
// The special half contributes exactly; the remainder is estimated by
// sampling `samples` halves in each of the two strata (A in / A out), each
// stratum having known probability.
PathologicalVariance HybridPathologicalVariance(std::size_t n,
                                                std::size_t samples, Rng& rng);

// Full enumeration; n <= 20 under the default cap.
PathologicalVariance ExactPathologicalVariance(std::size_t n);

}  // namespace mipnoise

#endif  // MIPNOISE_MOMENTS_PATHOLOGICAL_H_
