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
#include "moments/pathological.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "core/base_algorithm.h"
#include "core/error.h"
#include "core/subset.h"
#include "moments/moments.h"

namespace mipnoise {
namespace {

void CheckEven(std::size_t n) {
  if (n < 4 || n % 2 != 0) {
    ThrowInvalid("pathological dataset needs an even n >= 4, got " +
                 std::to_string(n));
  }
}

}  // namespace

double PathologicalSpecialProbability(std::size_t n) {
  CheckEven(n);
  // lgamma keeps this finite well past the range where C(n, n/2) fits in
  // 64 bits.
  const double log_binom = std::lgamma(n + 1.0) - 2.0 * std::lgamma(n / 2.0 + 1.0);
  return std::exp(-log_binom);
}

DatasetTable BuildPathologicalDataset(std::size_t n) {
  CheckEven(n);
  const std::size_t half = n / 2;
  std::vector<double> values;
  values.reserve(n);
  for (std::size_t i = 0; i + 1 < n; ++i) values.push_back(std::ldexp(1.0, static_cast<int>(i)));
  // sum_{i=0}^{half-2} 2^i = 2^{half-1} - 1.
  const double head = std::ldexp(1.0, static_cast<int>(half) - 1) - 1.0;
  values.push_back(std::sqrt(PathologicalSpecialProbability(n)) - head);
  return DatasetTable::FromColumn(values);
}

double PathologicalSensitivityLowerBound(std::size_t n) {
  return 1.0 / std::sqrt(PathologicalSpecialProbability(n)) - 1.0;
}

PathologicalVariance ExactPathologicalVariance(std::size_t n) {
  const DatasetTable data = BuildPathologicalDataset(n);
  const ReciprocalSum alg;
  const std::size_t k = n / 2;
  const double mean =
      ExactMoments(data, alg, k, 1, /*central=*/false).front();
  const double variance =
      ExactMoments(data, alg, k, 2, /*central=*/true).front();
  PathologicalVariance out;
  out.mean = mean;
  out.variance = variance;
  out.variance_upper_bound = variance;
  out.exact = true;
  return out;
}

PathologicalVariance HybridPathologicalVariance(std::size_t n,
                                                std::size_t samples, Rng& rng) {
  CheckEven(n);
  if (samples < 2) ThrowInvalid("hybrid variance needs at least 2 samples");
  const std::size_t k = n / 2;
  const DatasetTable data = BuildPathologicalDataset(n);
  const double p = PathologicalSpecialProbability(n);
  const double special_value = 1.0 / std::sqrt(p);
  const std::size_t powers = n - 1;
  const std::size_t a_index = n - 1;

  // Stratum weights: P(A in D, D not special) = 1/2 - p, P(A not in D) = 1/2.
  const double w_in = 0.5 - p;
  const double w_out = 0.5;

  struct Stratum {
    std::vector<double> values;
  };
  Stratum in, out;
  Rng in_rng = rng.Child("stratum-in");
  Rng out_rng = rng.Child("stratum-out");
  rng.Next();

  auto value_of = [&](const SubsetMask& powers_mask, bool with_a) {
    double sum = with_a ? data.at(a_index, 0) : 0.0;
    for (std::size_t i : powers_mask.Indices()) sum += data.at(i, 0);
    return 1.0 / sum;
  };
  while (in.values.size() < samples) {
    SubsetMask m = RandomSubset(powers, k - 1, in_rng);
    bool special = true;
    for (std::size_t i = 0; i + 1 < k; ++i) special = special && m.contains(i);
    if (special) continue;
    in.values.push_back(value_of(m, true));
  }
  while (out.values.size() < samples) {
    out.values.push_back(value_of(RandomSubset(powers, k, out_rng), false));
  }

  auto mean_of = [](const std::vector<double>& v, auto f) {
    double acc = 0.0;
    for (double x : v) acc += f(x);
    return acc / static_cast<double>(v.size());
  };
  auto identity = [](double x) { return x; };
  auto square = [](double x) { return x * x; };
  const double m_in = mean_of(in.values, identity);
  const double m_out = mean_of(out.values, identity);
  const double s_in = mean_of(in.values, square);
  const double s_out = mean_of(out.values, square);

  PathologicalVariance result;
  result.mean = p * special_value + w_in * m_in + w_out * m_out;
  const double second = p * special_value * special_value + w_in * s_in +
                        w_out * s_out;
  result.variance = second - result.mean * result.mean;

  // Delta method: sigma^2 = E[theta^2] - mu^2 is linear in the stratum means
  // of g(x) = x^2 - 2 mu x to first order.
  auto stratum_var = [&](const std::vector<double>& v) {
    const double mu = result.mean;
    const double g_mean = mean_of(v, [&](double x) { return x * x - 2 * mu * x; });
    double acc = 0.0;
    for (double x : v) {
      const double g = x * x - 2 * mu * x - g_mean;
      acc += g * g;
    }
    return acc / static_cast<double>(v.size() - 1) /
           static_cast<double>(v.size());
  };
  result.std_error = std::sqrt(w_in * w_in * stratum_var(in.values) +
                               w_out * w_out * stratum_var(out.values));
  // Ordinary outputs lie in [0, 1]: E[theta^2] <= p * (1/p) + (1 - p).
  result.variance_upper_bound = 1.0 + (1.0 - p);
  result.exact = false;
  return result;
}

}  // namespace mipnoise
