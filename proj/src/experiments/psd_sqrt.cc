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
#include "experiments/psd_sqrt.h"

#include "core/error.h"

namespace mipnoise {

Eigen::MatrixXd ClampedSymmetricSqrt(const Eigen::MatrixXd& s) {
  if (s.rows() != s.cols()) ThrowInvalid("square root needs a square matrix");
  if (!s.allFinite()) ThrowInvalid("square root needs finite entries");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(s);
  const Eigen::VectorXd roots = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return eig.eigenvectors() * roots.asDiagonal() * eig.eigenvectors().transpose();
}

Eigen::MatrixXd GeneratorWeights(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols()) ThrowInvalid("generator weights need a square A");
  return ClampedSymmetricSqrt(a + a.transpose());
}

}  // namespace mipnoise
