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
#ifndef MIPNOISE_EXPERIMENTS_PSD_SQRT_H_
#define MIPNOISE_EXPERIMENTS_PSD_SQRT_H_

#include <Eigen/Dense>

namespace mipnoise {

// Generator weights W = (A + A^T)^{1/2}, taken literally: no halving, so a
// symmetric A yields W with W W = 2A. Negative eigenvalues of A + A^T are
// clamped to zero and the principal square root is returned.
Eigen::MatrixXd GeneratorWeights(const Eigen::MatrixXd& a);

// Principal square root of a symmetric matrix with negative eigenvalues
// clamped to zero.
Eigen::MatrixXd ClampedSymmetricSqrt(const Eigen::MatrixXd& s);

}  // namespace mipnoise

#endif  // MIPNOISE_EXPERIMENTS_PSD_SQRT_H_
