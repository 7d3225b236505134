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
#include "core/types.h"

#include <cmath>

#include "core/error.h"

namespace mipnoise {

MomentProfile::MomentProfile(std::vector<double> sigma, int order)
    : sigma_(std::move(sigma)), order_(order) {
  if (order_ < 2) ThrowInvalid("moment order M must be >= 2");
  if (sigma_.empty()) ThrowInvalid("moment profile is empty");
  for (double s : sigma_) {
    if (!(s > 0.0) || !std::isfinite(s)) {
      ThrowInvalid("moment profile entries must be positive and finite");
    }
  }
}

PrivacyBudget PrivacyBudget::Mip(double eta, int moment_order) {
  if (!(eta > 0.0 && eta <= 0.5)) ThrowInvalid("eta must lie in (0, 1/2]");
  if (moment_order < 2) ThrowInvalid("moment order M must be >= 2");
  return PrivacyBudget(Kind::kMip, eta, moment_order);
}

PrivacyBudget PrivacyBudget::Dp(double epsilon) {
  if (!(epsilon > 0.0) || std::isnan(epsilon)) {
    ThrowInvalid("epsilon must be positive");
  }
  return PrivacyBudget(Kind::kDp, epsilon, 0);
}

double PrivacyBudget::eta() const {
  if (kind_ != Kind::kMip) ThrowInvalid("budget is not a MIP budget");
  return value_;
}

double PrivacyBudget::epsilon() const {
  if (kind_ != Kind::kDp) ThrowInvalid("budget is not a DP budget");
  return value_;
}

int PrivacyBudget::moment_order() const {
  if (kind_ != Kind::kMip) ThrowInvalid("budget is not a MIP budget");
  return order_;
}

void ValidateOutput(const MechanismOutput& output) {
  if (output.theta_hat.empty()) ThrowInvalid("mechanism output is empty");
  for (double v : output.theta_hat) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kRuntime, "mechanism output is not finite");
    }
  }
}

}  // namespace mipnoise
