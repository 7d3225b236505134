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
#ifndef MIPNOISE_CORE_TYPES_H_
#define MIPNOISE_CORE_TYPES_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace mipnoise {

// Per-coordinate bounds sigma_i on the M-th central moment of a released
// vector, sigma_i^M >= E|theta_i - E theta_i|^M.
class MomentProfile {
 public:
  MomentProfile(std::vector<double> sigma, int order);

  const std::vector<double>& sigma() const { return sigma_; }
  int order() const { return order_; }
  std::size_t dim() const { return sigma_.size(); }

 private:
  std::vector<double> sigma_;
  int order_;
};

// Either an eta-MIP level with its moment order, or an epsilon-DP level.
class PrivacyBudget {
 public:
  enum class Kind { kMip, kDp };

  static PrivacyBudget Mip(double eta, int moment_order);
  static PrivacyBudget Dp(double epsilon);

  Kind kind() const { return kind_; }
  double eta() const;
  double epsilon() const;
  int moment_order() const;

 private:
  PrivacyBudget(Kind kind, double value, int order)
      : kind_(kind), value_(value), order_(order) {}

  Kind kind_;
  double value_;
  int order_;
};

struct MechanismOutput {
  std::vector<double> theta_hat;
  std::string mechanism_id;
  std::uint64_t seed = 0;
  double noise_scale = 0.0;
  std::optional<MomentProfile> profile;
  // Mechanism-specific numbers (clip norm, accounted epsilon, ...) and
  // free-form notes, both in insertion order.
  std::vector<std::pair<std::string, double>> diagnostics;
  std::vector<std::string> notes;
};

// Throws if theta_hat is empty or has a non-finite entry.
void ValidateOutput(const MechanismOutput& output);

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_TYPES_H_
