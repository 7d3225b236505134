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
#include "moments/moments.h"

#include <algorithm>
#include <cmath>
#include <unordered_map>

#include "core/error.h"
#include "core/parallel.h"
#include "noise/noise.h"

namespace mipnoise {
namespace {

void CheckEvenOrder(int moment_order) {
  if (moment_order < 2 || moment_order % 2 != 0) {
    ThrowInvalid("moment order M must be an even integer >= 2, got " +
                 std::to_string(moment_order));
  }
}

double Distance(std::span<const double> a, std::span<const double> b,
                SensitivityNorm norm, const MomentProfile* profile) {
  std::vector<double> diff(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) diff[i] = a[i] - b[i];
  if (norm == SensitivityNorm::kSigmaNorm) return SigmaNorm(diff, *profile);
  double total = 0.0;
  for (double v : diff) total += std::abs(v);
  return total;
}

}  // namespace

MomentEstimate EstimateMoments(const DatasetTable& data,
                               const BaseAlgorithm& alg, std::size_t replicates,
                               int moment_order, Rng& rng,
                               const MomentEstimateOptions& options) {
  CheckEvenOrder(moment_order);
  if (replicates < 2) ThrowInvalid("moment estimation needs B >= 2");
  if (options.unbiased_variance && moment_order != 2) {
    ThrowInvalid("the 1/(B-1) correction is only defined for M = 2");
  }
  if (!(options.sigma_floor > 0.0)) ThrowInvalid("sigma floor must be positive");

  const Rng base = rng.Child("estimate-moments");
  std::vector<std::vector<double>> thetas(replicates);
  ParallelFor(replicates, [&](std::size_t i) {
    Rng stream = base.Child(i);
    auto [train, holdout] = RandomHalfSplit(data.rows(), stream);
    thetas[i] = alg.Evaluate(data, train);
  });
  // Advance the caller's stream so repeated calls draw fresh splits.
  rng.Next();

  const std::size_t dim = thetas.front().size();
  std::vector<double> mean(dim, 0.0);
  for (const auto& t : thetas) {
    if (t.size() != dim) ThrowInvalid("base algorithm output size varies");
    for (std::size_t j = 0; j < dim; ++j) mean[j] += t[j];
  }
  for (double& m : mean) m /= static_cast<double>(replicates);

  const double denom = options.unbiased_variance
                           ? static_cast<double>(replicates - 1)
                           : static_cast<double>(replicates);
  std::vector<double> sigma(dim, 0.0);
  MomentEstimate result{MomentProfile({1.0}, moment_order), replicates, {}, {}};
  for (std::size_t j = 0; j < dim; ++j) {
    double acc = 0.0;
    for (const auto& t : thetas) acc += std::pow(t[j] - mean[j], moment_order);
    sigma[j] = std::pow(acc / denom, 1.0 / moment_order);
    if (!(sigma[j] > options.sigma_floor)) {
      if (sigma[j] == 0.0) {
        result.warnings.push_back("degenerate moment: coordinate " +
                                  std::to_string(j) +
                                  " has zero central moment; using floor");
      }
      result.floored.push_back(j);
      sigma[j] = options.sigma_floor;
    }
  }
  result.profile = MomentProfile(std::move(sigma), moment_order);
  return result;
}

std::vector<double> ExactMoments(const DatasetTable& data,
                                 const BaseAlgorithm& alg, std::size_t k,
                                 int moment_order, bool central,
                                 std::uint64_t cap) {
  if (moment_order < 1) ThrowInvalid("moment order must be >= 1");
  const std::vector<SubsetMask> masks =
      EnumerateSubsets(data.rows(), k, cap);
  std::vector<std::vector<double>> outputs(masks.size());
  ParallelFor(masks.size(),
              [&](std::size_t i) { outputs[i] = alg.Evaluate(data, masks[i]); });

  const std::size_t dim = outputs.front().size();
  const double count = static_cast<double>(outputs.size());
  std::vector<double> mean(dim, 0.0);
  for (const auto& o : outputs) {
    for (std::size_t j = 0; j < dim; ++j) mean[j] += o[j];
  }
  for (double& m : mean) m /= count;
  if (!central && moment_order == 1) return mean;

  std::vector<double> moments(dim, 0.0);
  for (const auto& o : outputs) {
    for (std::size_t j = 0; j < dim; ++j) {
      moments[j] += central ? std::pow(std::abs(o[j] - mean[j]), moment_order)
                            : std::pow(o[j], moment_order);
    }
  }
  for (double& m : moments) m /= count;
  return moments;
}

MomentProfile ExactMomentProfile(const DatasetTable& data,
                                 const BaseAlgorithm& alg, std::size_t k,
                                 int moment_order, double sigma_floor,
                                 std::uint64_t cap) {
  if (moment_order < 2) ThrowInvalid("moment order M must be >= 2");
  std::vector<double> sigma =
      ExactMoments(data, alg, k, moment_order, /*central=*/true, cap);
  for (double& s : sigma) {
    s = std::max(std::pow(s, 1.0 / moment_order), sigma_floor);
  }
  return MomentProfile(std::move(sigma), moment_order);
}

double SensitivityExact(const DatasetTable& data, const BaseAlgorithm& alg,
                        std::size_t k, SensitivityNorm norm,
                        const MomentProfile* profile, std::uint64_t cap) {
  const std::size_t n = data.rows();
  if (norm == SensitivityNorm::kSigmaNorm && profile == nullptr) {
    ThrowInvalid("sigma-norm sensitivity needs a moment profile");
  }
  if (n > 64) ThrowInvalid("exact sensitivity supports at most 64 records");
  if (k == 0 || k >= n) return 0.0;

  const std::vector<SubsetMask> masks = EnumerateSubsets(n, k, cap);
  std::vector<std::vector<double>> outputs(masks.size());
  ParallelFor(masks.size(),
              [&](std::size_t i) { outputs[i] = alg.Evaluate(data, masks[i]); });
  std::unordered_map<std::uint64_t, std::size_t> index;
  index.reserve(masks.size() * 2);
  for (std::size_t i = 0; i < masks.size(); ++i) index[masks[i].low_word()] = i;

  std::vector<double> best(masks.size(), 0.0);
  ParallelFor(masks.size(), [&](std::size_t a) {
    const std::uint64_t word = masks[a].low_word();
    for (std::size_t in = 0; in < n; ++in) {
      if (!((word >> in) & 1U)) continue;
      for (std::size_t out = 0; out < n; ++out) {
        if ((word >> out) & 1U) continue;
        const std::uint64_t neighbour =
            (word & ~(std::uint64_t{1} << in)) | (std::uint64_t{1} << out);
        const std::size_t b = index.at(neighbour);
        // Each unordered pair is seen from both ends; keep one.
        if (b < a) continue;
        best[a] = std::max(best[a],
                           Distance(outputs[a], outputs[b], norm, profile));
      }
    }
  });
  return *std::max_element(best.begin(), best.end());
}

}  // namespace mipnoise
