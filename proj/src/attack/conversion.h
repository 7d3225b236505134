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
#ifndef MIPNOISE_ATTACK_CONVERSION_H_
#define MIPNOISE_ATTACK_CONVERSION_H_

namespace mipnoise {

// eta = 1/(1+e^{-epsilon}) - 1/2, the membership advantage of the optimal
// attacker against a tight epsilon-DP mechanism with k = n/2. Computed as
// tanh(epsilon/2)/2 to keep precision near zero.
double MipEtaFromDp(double epsilon);

// epsilon = log((1+2 eta)/(1-2 eta)); exact inverse of MipEtaFromDp.
double DpEpsilonFromEta(double eta);

}  // namespace mipnoise

#endif  // MIPNOISE_ATTACK_CONVERSION_H_
