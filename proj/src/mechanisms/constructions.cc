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
#include <limits>

#include "core/error.h"
#include "mechanisms/mechanisms.h"

namespace mipnoise {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kMaxPublisherSupport = 20;

void CheckProbability(double p) {
  if (!(p >= 0.0 && p <= 1.0)) ThrowInvalid("p must lie in [0, 1]");
}

// count * log(q) with the convention 0 * log(0) = 0.
double CountLog(std::size_t count, double q) {
  if (count == 0) return 0.0;
  return static_cast<double>(count) * std::log(q);
}

}  // namespace

PublishedSubset PublishSubset(const DatasetTable& data, double p,
                              std::uint64_t seed) {
  CheckProbability(p);
  Rng root(seed);
  Rng split_rng = root.Child("split");
  auto [train, holdout] = RandomHalfSplit(data.rows(), split_rng);
  Rng publish_rng = root.Child("publish");
  PublishedSubset out{train, {}};
  for (std::size_t i : train.Indices()) {
    if (publish_rng.Uniform() < p) out.released.push_back(i);
  }
  return out;
}

MechanismDescriptor MakeSubsetPublisherDescriptor(std::size_t n, double p) {
  CheckProbability(p);
  if (n < 2) ThrowInvalid("subset publisher needs n >= 2");
  MechanismDescriptor mech;
  mech.id = "subset-publisher";
  mech.n = n;
  mech.k = n / 2;
  mech.release = [n, p](const SubsetMask& mask, Rng& rng) {
    std::vector<double> out(n, 0.0);
    for (std::size_t i : mask.Indices()) {
      if (rng.Uniform() < p) out[i] = 1.0;
    }
    return out;
  };
  mech.log_density = [p](std::span<const double> out, const SubsetMask& mask) {
    std::size_t published = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i] == 0.0) continue;
      if (!mask.contains(i)) return kNegInf;
      ++published;
    }
    const std::size_t withheld = mask.count() - published;
    return CountLog(published, p) + CountLog(withheld, 1.0 - p);
  };
  if (n <= kMaxPublisherSupport) {
    mech.support.reserve(std::size_t{1} << n);
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
      std::vector<double> out(n, 0.0);
      for (std::size_t i = 0; i < n; ++i) out[i] = static_cast<double>((bits >> i) & 1U);
      mech.support.push_back(std::move(out));
    }
  }
  return mech;
}

double TightDpReleaseProbability(double epsilon) {
  if (!(epsilon > 0.0)) ThrowInvalid("epsilon must be positive");
  return 1.0 / (1.0 + std::exp(-epsilon));
}

TightDpRelease BinaryTightDp(double epsilon, std::uint64_t seed) {
  const double p = TightDpReleaseProbability(epsilon);
  Rng root(seed);
  Rng split_rng = root.Child("split");
  auto [train, holdout] = RandomHalfSplit(2, split_rng);
  Rng release_rng = root.Child("release");
  const std::size_t member = train.contains(0) ? 0 : 1;
  return {train, release_rng.Uniform() < p ? member : 1 - member};
}

MechanismDescriptor MakeBinaryTightDpDescriptor(double epsilon) {
  const double p = TightDpReleaseProbability(epsilon);
  MechanismDescriptor mech;
  mech.id = "binary-tight-dp";
  mech.budget = PrivacyBudget::Dp(epsilon);
  mech.n = 2;
  mech.k = 1;
  mech.release = [p](const SubsetMask& mask, Rng& rng) {
    const std::size_t member = mask.contains(0) ? 0 : 1;
    const std::size_t released = rng.Uniform() < p ? member : 1 - member;
    std::vector<double> out(2, 0.0);
    out[released] = 1.0;
    return out;
  };
  mech.log_density = [p](std::span<const double> out, const SubsetMask& mask) {
    const std::size_t released = out[0] != 0.0 ? 0 : 1;
    return mask.contains(released) ? std::log(p) : std::log1p(-p);
  };
  mech.support = {{1.0, 0.0}, {0.0, 1.0}};
  return mech;
}

MechanismDescriptor MakeConstantDescriptor(std::size_t n, std::size_t k) {
  MechanismDescriptor mech;
  mech.id = "constant";
  mech.n = n;
  mech.k = k;
  mech.release = [](const SubsetMask&, Rng&) { return std::vector<double>{0.0}; };
  mech.log_density = [](std::span<const double>, const SubsetMask&) {
    return 0.0;
  };
  mech.support = {{0.0}};
  return mech;
}

}  // namespace mipnoise
