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
#include <cmath>

#include "core/error.h"
#include "mechanisms/mechanisms.h"

namespace mipnoise {
namespace {

double CheckedScale(double epsilon, double sensitivity) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    ThrowInvalid("epsilon must be positive and finite");
  }
  if (!(sensitivity > 0.0) || !std::isfinite(sensitivity)) {
    ThrowInvalid("sensitivity must be positive and finite");
  }
  return sensitivity / epsilon;
}

}  // namespace

MechanismOutput PrivatizeLaplaceDp(const DatasetTable& data,
                                   const BaseAlgorithm& alg, double epsilon,
                                   double sensitivity, std::uint64_t seed) {
  const double scale = CheckedScale(epsilon, sensitivity);
  Rng root(seed);
  Rng split_rng = root.Child("split");
  auto [train, holdout] = RandomHalfSplit(data.rows(), split_rng);
  std::vector<double> theta = alg.Evaluate(data, train);
  Rng noise_rng = root.Child("noise");
  for (double& v : theta) v += SampleLaplace(scale, noise_rng);

  MechanismOutput out;
  out.theta_hat = std::move(theta);
  out.mechanism_id = "laplace-dp";
  out.seed = seed;
  out.noise_scale = scale;
  out.diagnostics.emplace_back("epsilon", epsilon);
  out.diagnostics.emplace_back("sensitivity", sensitivity);
  out.diagnostics.emplace_back("train_size", static_cast<double>(train.count()));
  ValidateOutput(out);
  return out;
}

MechanismDescriptor MakeLaplaceDpDescriptor(
    std::shared_ptr<const DatasetTable> data,
    std::shared_ptr<const BaseAlgorithm> alg, double epsilon,
    double sensitivity) {
  const double scale = CheckedScale(epsilon, sensitivity);
  MechanismDescriptor mech;
  mech.id = "laplace-dp";
  mech.budget = PrivacyBudget::Dp(epsilon);
  mech.n = data->rows();
  mech.k = data->rows() / 2;
  mech.center = [data, alg](const SubsetMask& mask) {
    return alg->Evaluate(*data, mask);
  };
  mech.noise_log_density = [scale](std::span<const double> x) {
    double acc = 0.0;
    for (double v : x) acc += std::abs(v);
    return -acc / scale;
  };
  mech.release = [data, alg, scale](const SubsetMask& mask, Rng& rng) {
    std::vector<double> theta = alg->Evaluate(*data, mask);
    for (double& v : theta) v += SampleLaplace(scale, rng);
    return theta;
  };
  mech.log_density = [data, alg, scale](std::span<const double> out,
                                        const SubsetMask& mask) {
    const std::vector<double> center = alg->Evaluate(*data, mask);
    double acc = 0.0;
    for (std::size_t i = 0; i < center.size(); ++i) {
      acc += std::abs(out[i] - center[i]);
    }
    return -acc / scale;
  };
  return mech;
}

}  // namespace mipnoise
