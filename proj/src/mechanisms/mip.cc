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
#include "moments/moments.h"

namespace mipnoise {

MechanismOutput PrivatizeMip(const DatasetTable& data, const BaseAlgorithm& alg,
                             const MipOptions& options, std::uint64_t seed) {
  if (options.moment_order < 2 || options.moment_order % 2 != 0) {
    ThrowInvalid("moment order M must be an even integer >= 2");
  }
  if (!(options.eta > 0.0 && options.eta <= 0.5)) {
    ThrowInvalid("eta must lie in (0, 1/2]");
  }
  Rng root(seed);
  Rng split_rng = root.Child("split");
  auto [train, holdout] = RandomHalfSplit(data.rows(), split_rng);

  MechanismOutput out;
  std::optional<MomentProfile> profile = options.known_profile;
  if (!profile) {
    if (options.replicates < 2) ThrowInvalid("moment estimation needs B >= 2");
    Rng moment_rng = root.Child("moments");
    MomentEstimateOptions est;
    est.unbiased_variance = options.unbiased_variance;
    est.sigma_floor = options.sigma_floor;
    MomentEstimate estimate =
        options.moment_subsets == MomentSubsets::kResplitTrain
            ? EstimateMoments(data.Select(train), alg, options.replicates,
                              options.moment_order, moment_rng, est)
            : EstimateMoments(data, alg, options.replicates,
                              options.moment_order, moment_rng, est);
    for (auto& w : estimate.warnings) out.notes.push_back(std::move(w));
    profile = std::move(estimate.profile);
  } else if (profile->order() != options.moment_order) {
    ThrowInvalid("known profile order differs from the requested M");
  }

  NoiseSpec spec = MakeNoiseSpec(options.eta, *profile, options.variant);
  std::vector<double> theta = alg.Evaluate(data, train);
  if (theta.size() != spec.profile.dim()) {
    ThrowInvalid("profile dimension differs from the base algorithm output");
  }
  Rng noise_rng = root.Child("noise");
  const std::vector<double> x = SampleMipNoise(spec, noise_rng);
  for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += x[i];

  out.theta_hat = std::move(theta);
  out.mechanism_id = "mip";
  out.seed = seed;
  out.noise_scale = spec.scale;
  out.profile = spec.profile;
  out.diagnostics.emplace_back("eta", options.eta);
  out.diagnostics.emplace_back("M", options.moment_order);
  out.diagnostics.emplace_back(
      "B", options.known_profile ? 0.0 : static_cast<double>(options.replicates));
  out.diagnostics.emplace_back("train_size", static_cast<double>(train.count()));
  ValidateOutput(out);
  return out;
}

MechanismDescriptor MakeMipDescriptor(std::shared_ptr<const DatasetTable> data,
                                      std::shared_ptr<const BaseAlgorithm> alg,
                                      NoiseSpec spec) {
  if (alg->OutputDim(*data) != spec.profile.dim()) {
    ThrowInvalid("profile dimension differs from the base algorithm output");
  }
  auto noise = std::make_shared<const NoiseSpec>(std::move(spec));
  MechanismDescriptor mech;
  mech.id = noise->variant == NoiseVariant::kDensityExact
                ? "mip-density-exact"
                : "mip-laplace-radius";
  mech.budget = PrivacyBudget::Mip(noise->eta, noise->profile.order());
  mech.n = data->rows();
  mech.k = data->rows() / 2;
  mech.noise = noise;
  mech.center = [data, alg](const SubsetMask& mask) {
    return alg->Evaluate(*data, mask);
  };
  mech.noise_log_density = [noise](std::span<const double> x) {
    return NoiseLogDensity(*noise, x);
  };
  mech.release = [data, alg, noise](const SubsetMask& mask, Rng& rng) {
    std::vector<double> theta = alg->Evaluate(*data, mask);
    const std::vector<double> x = SampleMipNoise(*noise, rng);
    for (std::size_t i = 0; i < theta.size(); ++i) theta[i] += x[i];
    return theta;
  };
  mech.log_density = [data, alg, noise](std::span<const double> out,
                                        const SubsetMask& mask) {
    std::vector<double> diff = alg->Evaluate(*data, mask);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = out[i] - diff[i];
    return NoiseLogDensity(*noise, diff);
  };
  return mech;
}

}  // namespace mipnoise
