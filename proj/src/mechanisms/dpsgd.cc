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
#include "mechanisms/dpsgd.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "attack/conversion.h"
#include "core/covariance_objective.h"
#include "core/error.h"
#include "core/rng.h"
#include "core/subset.h"
#include "noise/noise.h"

namespace mipnoise {
namespace {

// Per-sample outer products x x^T, row-major, one block of d*d per record.
std::vector<double> OuterProducts(const DatasetTable& train) {
  const std::size_t d = train.cols();
  std::vector<double> out(train.rows() * d * d);
  for (std::size_t r = 0; r < train.rows(); ++r) {
    auto x = train.row(r);
    double* block = out.data() + r * d * d;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) block[i * d + j] = x[i] * x[j];
    }
  }
  return out;
}

void CheckOptions(const DpsgdOptions& options) {
  if (options.steps < 1) ThrowInvalid("DP-SGD needs steps >= 1");
  if (!(options.learning_rate > 0.0)) ThrowInvalid("learning rate must be positive");
  if (!(options.noise_multiplier >= 0.0)) {
    ThrowInvalid("noise multiplier must be non-negative");
  }
  if (options.clip_norm && !(*options.clip_norm > 0.0)) {
    ThrowInvalid("clip norm must be positive");
  }
}

}  // namespace

DpsgdAccounting AccountDpsgd(int steps, double noise_multiplier,
                             std::size_t dataset_size) {
  if (dataset_size < 2) ThrowInvalid("accounting needs n >= 2");
  DpsgdAccounting acc;
  acc.delta = 1.0 / static_cast<double>(dataset_size);
  if (noise_multiplier == 0.0) {
    acc.rho = acc.epsilon = std::numeric_limits<double>::infinity();
    acc.eta = 0.5;
    return acc;
  }
  acc.rho = steps / (2.0 * noise_multiplier * noise_multiplier);
  acc.epsilon = acc.rho + 2.0 * std::sqrt(acc.rho * std::log(1.0 / acc.delta));
  acc.eta = MipEtaFromDp(acc.epsilon);
  return acc;
}

double NoiseMultiplierForEpsilon(double epsilon, int steps,
                                 std::size_t dataset_size) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    ThrowInvalid("target epsilon must be positive and finite");
  }
  if (steps < 1) ThrowInvalid("DP-SGD needs steps >= 1");
  const double log_inv_delta = std::log(static_cast<double>(dataset_size));
  // Invert epsilon = rho + 2 sqrt(rho L): sqrt(rho) = sqrt(L + eps) - sqrt(L).
  const double root_rho =
      std::sqrt(log_inv_delta + epsilon) - std::sqrt(log_inv_delta);
  const double rho = root_rho * root_rho;
  return std::sqrt(steps / (2.0 * rho));
}

double MedianGradientNorm(const DatasetTable& train, int steps,
                          double learning_rate) {
  const std::size_t d = train.cols();
  const std::size_t dd = d * d;
  const std::size_t m = train.rows();
  const std::vector<double> xx = OuterProducts(train);
  std::vector<double> s(dd, 0.0);
  for (std::size_t r = 0; r < m; ++r) {
    for (std::size_t e = 0; e < dd; ++e) s[e] += xx[r * dd + e];
  }
  for (double& v : s) v /= static_cast<double>(m);

  std::vector<double> a(dd, 0.0);
  std::vector<std::pair<double, double>> weighted;  // (norm, weight)
  for (int step = 0; step < steps; ++step) {
    const std::size_t first_new = weighted.size();
    for (std::size_t r = 0; r < m; ++r) {
      double sq = 0.0;
      for (std::size_t e = 0; e < dd; ++e) {
        const double g = 2.0 * (a[e] - xx[r * dd + e]);
        sq += g * g;
      }
      weighted.emplace_back(std::sqrt(sq), 1.0);
    }
    double change = 0.0, size = 0.0;
    for (std::size_t e = 0; e < dd; ++e) {
      const double next = a[e] - learning_rate * 2.0 * (a[e] - s[e]);
      change += (next - a[e]) * (next - a[e]);
      size += a[e] * a[e];
      a[e] = next;
    }
    if (step + 1 < steps && change <= 1e-30 * size) {
      const double remaining = static_cast<double>(steps - step - 1);
      for (std::size_t i = first_new; i < weighted.size(); ++i) {
        weighted[i].second += remaining;
      }
      break;
    }
  }
  std::sort(weighted.begin(), weighted.end());
  double total = 0.0;
  for (const auto& w : weighted) total += w.second;
  // Lower median: the element at rank floor((N-1)/2), 0-based.
  const double target = std::floor((total - 1.0) / 2.0) + 1.0;
  double cumulative = 0.0;
  for (const auto& [value, weight] : weighted) {
    cumulative += weight;
    if (cumulative >= target) return value;
  }
  return weighted.back().first;
}

MechanismOutput DpsgdTrainOn(const DatasetTable& train,
                             std::size_t dataset_size,
                             const DpsgdOptions& options, std::uint64_t seed) {
  CheckOptions(options);
  const std::size_t d = train.cols();
  const std::size_t dd = d * d;
  const std::size_t m = train.rows();
  const double clip =
      options.clip_norm
          ? *options.clip_norm
          : MedianGradientNorm(train, options.steps, options.learning_rate);
  const std::vector<double> xx = OuterProducts(train);
  // z = 0 means no noise even with an unbounded clip norm.
  const double noise_std =
      options.noise_multiplier == 0.0
          ? 0.0
          : options.noise_multiplier * clip / static_cast<double>(m);
  if (options.noise_multiplier > 0.0 && !std::isfinite(noise_std)) {
    ThrowInvalid("an unbounded clip norm needs noise_multiplier = 0");
  }

  Rng noise_rng = Rng(seed).Child("dpsgd-noise");
  std::vector<double> a(dd, 0.0), sum(dd), g(dd);
  for (int step = 0; step < options.steps; ++step) {
    std::fill(sum.begin(), sum.end(), 0.0);
    for (std::size_t r = 0; r < m; ++r) {
      double sq = 0.0;
      for (std::size_t e = 0; e < dd; ++e) {
        g[e] = 2.0 * (a[e] - xx[r * dd + e]);
        sq += g[e] * g[e];
      }
      const double norm = std::sqrt(sq);
      const double factor = norm > clip ? clip / norm : 1.0;
      for (std::size_t e = 0; e < dd; ++e) sum[e] += factor * g[e];
    }
    double norm_a = 0.0;
    for (std::size_t e = 0; e < dd; ++e) {
      double grad = sum[e] / static_cast<double>(m);
      if (noise_std > 0.0) grad += noise_std * SampleStandardNormal(noise_rng);
      a[e] -= options.learning_rate * grad;
      norm_a += a[e] * a[e];
    }
    norm_a = std::sqrt(norm_a);
    if (!std::isfinite(norm_a) || norm_a > kDivergenceNorm) {
      throw Error(ErrorCode::kRuntime,
                  "DP-SGD diverged at step " + std::to_string(step));
    }
  }

  const DpsgdAccounting acc =
      AccountDpsgd(options.steps, options.noise_multiplier, dataset_size);
  MechanismOutput out;
  out.theta_hat = std::move(a);
  out.mechanism_id = "dpsgd";
  out.seed = seed;
  out.noise_scale = noise_std;
  out.diagnostics = {{"clip_norm", clip},
                     {"noise_multiplier", options.noise_multiplier},
                     {"steps", options.steps},
                     {"learning_rate", options.learning_rate},
                     {"rho", acc.rho},
                     {"epsilon", acc.epsilon},
                     {"delta", acc.delta},
                     {"eta", acc.eta}};
  out.notes.push_back(
      "eta derived from (epsilon, delta) via zCDP and the pure-DP conversion; "
      "delta > 0 is not covered by the conversion bound");
  ValidateOutput(out);
  return out;
}

MechanismOutput DpsgdTrain(const DatasetTable& data,
                           const DpsgdOptions& options, std::uint64_t seed) {
  Rng split_rng = Rng(seed).Child("split");
  auto [train, holdout] = RandomHalfSplit(data.rows(), split_rng);
  return DpsgdTrainOn(data.Select(train), data.rows(), options, seed);
}

}  // namespace mipnoise
