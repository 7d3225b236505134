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
#ifndef MIPNOISE_EXPERIMENTS_FIG1_H_
#define MIPNOISE_EXPERIMENTS_FIG1_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "experiments/config.h"
#include "experiments/emit.h"

namespace mipnoise {

// Moment bound and sensitivity of the pathological dataset at one n.
struct Fig1Inputs {
  std::size_t n = 0;
  double sigma = 0.0;        // sqrt of the output variance
  double sensitivity = 0.0;  // exact, or the analytic lower bound
  bool exact = false;        // both computed by enumeration (n <= 20)
};

inline constexpr std::size_t kFig1ExactLimit = 20;

Fig1Inputs ComputeFig1Inputs(std::size_t n, std::size_t hybrid_samples,
                             std::uint64_t seed);

// (6.16/eta)^2 sigma: the M = 2 scale constant times the moment bound.
double MipNoiseScale(double eta, double sigma);

// sensitivity / log((1+2 eta)/(1-2 eta)): Laplace scale at the epsilon whose
// optimal-attacker advantage is eta.
double DpNoiseScale(double eta, double sensitivity);

struct Fig1Result {
  std::vector<ResultRow> rows;  // methods "mip" and "dp", run 0
  std::vector<Fig1Inputs> inputs;
  // Smallest n whose DP scale exceeds the MIP scale at every eta of the grid.
  std::optional<std::size_t> crossover_n;
};

// Extras: hybrid_samples (default 20000).
Fig1Result RunFig1(const ExperimentConfig& config);

}  // namespace mipnoise

#endif  // MIPNOISE_EXPERIMENTS_FIG1_H_
