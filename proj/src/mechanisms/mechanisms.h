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
#ifndef MIPNOISE_MECHANISMS_MECHANISMS_H_
#define MIPNOISE_MECHANISMS_MECHANISMS_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/base_algorithm.h"
#include "core/dataset.h"
#include "core/rng.h"
#include "core/subset.h"
#include "core/types.h"
#include "noise/noise.h"

namespace mipnoise {

// A release mechanism bound to a dataset of n records with training sets of
// size k. Everything the attack module needs is expressed per training mask.
struct MechanismDescriptor {
  std::string id;
  std::optional<PrivacyBudget> budget;
  std::size_t n = 0;
  std::size_t k = 0;

  // Runs the mechanism on the given training set, drawing randomness from rng
  // only.
  std::function<std::vector<double>(const SubsetMask&, Rng&)> release;

  // log P(output | training set), up to an additive constant that is the same
  // for every mask; -infinity for impossible outputs. Empty when the
  // mechanism has no closed-form output law (e.g. DP-SGD).
  std::function<double(std::span<const double>, const SubsetMask&)>
      log_density;

  // Every possible output, for mechanisms with a finite output space.
  std::vector<std::vector<double>> support;

  // Additive-noise structure, when present: output = center(mask) + X with X
  // independent of the mask and log-density noise_log_density.
  std::function<std::vector<double>(const SubsetMask&)> center;
  std::function<double(std::span<const double>)> noise_log_density;
  std::shared_ptr<const NoiseSpec> noise;  // MIP mechanisms only

  bool has_density() const { return static_cast<bool>(log_density); }
};

// Which subsets the moment bound is estimated over.
enum class MomentSubsets {
  // Resplit the training half, i.e. subsets of size n/4 (Algorithm-1 order of
  // operations: split first, estimate on the training half).
  kResplitTrain,
  // Half-splits of the whole dataset, subsets of size n/2, matching the
  // distribution of the released training half.
  kHalfOfDataset,
};

struct MipOptions {
  double eta = 0.1;
  int moment_order = 2;
  std::size_t replicates = 128;  // B
  NoiseVariant variant = NoiseVariant::kLaplaceRadius;
  MomentSubsets moment_subsets = MomentSubsets::kResplitTrain;
  bool unbiased_variance = false;
  double sigma_floor = 1e-12;
  // Skips estimation when a bound is already known.
  std::optional<MomentProfile> known_profile;
};

// theta_hat = alg(D_train) + X, X ~ SampleMipNoise at c = (6.16/eta)^{1+2/M}.
MechanismOutput PrivatizeMip(const DatasetTable& data, const BaseAlgorithm& alg,
                             const MipOptions& options, std::uint64_t seed);

// Fixed-profile MIP mechanism as a descriptor for attacks.
MechanismDescriptor MakeMipDescriptor(std::shared_ptr<const DatasetTable> data,
                                      std::shared_ptr<const BaseAlgorithm> alg,
                                      NoiseSpec spec);

// theta_hat = alg(D_train) + L, L_i ~ Laplace(sensitivity / epsilon).
MechanismOutput PrivatizeLaplaceDp(const DatasetTable& data,
                                   const BaseAlgorithm& alg, double epsilon,
                                   double sensitivity, std::uint64_t seed);

MechanismDescriptor MakeLaplaceDpDescriptor(
    std::shared_ptr<const DatasetTable> data,
    std::shared_ptr<const BaseAlgorithm> alg, double epsilon,
    double sensitivity);

// Publishes each training record independently with probability p.
struct PublishedSubset {
  SubsetMask train;
  std::vector<std::size_t> released;  // record ids
};

PublishedSubset PublishSubset(const DatasetTable& data, double p,
                              std::uint64_t seed);

// Output encoding: indicator vector over the n records. The support (all 2^n
// indicators) is listed for n <= 20.
MechanismDescriptor MakeSubsetPublisherDescriptor(std::size_t n, double p);

// Two-record dataset {0, 1}, training sets of size 1. Releases the training
// record with probability 1/(1+e^{-epsilon}) and the other one otherwise.
struct TightDpRelease {
  SubsetMask train;
  std::size_t released = 0;
};

double TightDpReleaseProbability(double epsilon);

TightDpRelease BinaryTightDp(double epsilon, std::uint64_t seed);

// Output encoding: indicator vector of length 2 naming the released record.
MechanismDescriptor MakeBinaryTightDpDescriptor(double epsilon);

// Constant output; a data-independent baseline for attack tests.
MechanismDescriptor MakeConstantDescriptor(std::size_t n, std::size_t k);

}  // namespace mipnoise

#endif  // MIPNOISE_MECHANISMS_MECHANISMS_H_
