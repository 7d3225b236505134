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
#ifndef MIPNOISE_EXPERIMENTS_SYNTH_H_
#define MIPNOISE_EXPERIMENTS_SYNTH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core/dataset.h"
#include "core/rng.h"
#include "experiments/config.h"
#include "experiments/emit.h"

namespace mipnoise {

// Q diag(eigenvalues) Q^T with Q a rotation drawn from rotation_seed (QR of a
// Gaussian matrix, signs fixed so that det Q = +1). Throws when an
// eigenvalue is not positive.
Eigen::MatrixXd SynthGroundTruth(const std::vector<double>& eigenvalues,
                                 std::uint64_t rotation_seed);

// n draws of N(0, sigma) as an n x d table.
DatasetTable SampleGaussianTable(const Eigen::MatrixXd& sigma, std::size_t n,
                                 Rng& rng);

// ||A - sigma||_F / ||sigma||_F with A given row-major.
double RelativeError(std::span<const double> a, const Eigen::MatrixXd& sigma);

struct SynthResult {
  std::vector<ResultRow> rows;  // methods raw, mip-M<M>, dpsgd
  Eigen::MatrixXd sigma;
  std::vector<std::string> notes;
};

// Extras: sigma_eigenvalues (default 1,2,5 for d = 3), rotation_seed (3),
// B (128), steps (500), lr (0.4), variant (laplace-radius),
// moment_subsets (half-of-dataset), dpsgd (1 to include DP-SGD).
SynthResult RunSynth(const ExperimentConfig& config);

}  // namespace mipnoise

#endif  // MIPNOISE_EXPERIMENTS_SYNTH_H_
