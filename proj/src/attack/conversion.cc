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
#include "attack/conversion.h"

#include <cmath>

#include "core/error.h"

namespace mipnoise {

double MipEtaFromDp(double epsilon) {
  if (!(epsilon >= 0.0)) ThrowInvalid("epsilon must be non-negative");
  // 1/(1+e^{-x}) - 1/2 == tanh(x/2)/2.
  return 0.5 * std::tanh(0.5 * epsilon);
}

double DpEpsilonFromEta(double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) ThrowInvalid("eta must lie in [0, 1/2)");
  // log((1+2h)/(1-2h)) == 2 atanh(2h).
  return 2.0 * std::atanh(2.0 * eta);
}

}  // namespace mipnoise
