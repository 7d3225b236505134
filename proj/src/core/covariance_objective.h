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
#ifndef MIPNOISE_CORE_COVARIANCE_OBJECTIVE_H_
#define MIPNOISE_CORE_COVARIANCE_OBJECTIVE_H_

#include <Eigen/Dense>

#include "core/dataset.h"
#include "core/subset.h"

namespace mipnoise {

// Objective ||A - S||_F^2 where S = (1/k) sum_i x_i x_i^T over the subset.
Eigen::MatrixXd SecondMomentMatrix(const DatasetTable& data,
                                   const SubsetMask& subset);
Eigen::MatrixXd SecondMomentMatrix(const DatasetTable& data);

double CovarianceObjective(const Eigen::MatrixXd& a, const Eigen::MatrixXd& s);
Eigen::MatrixXd CovarianceGradient(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& s);

// Full-batch gradient descent from A = 0. Throws kRuntime naming the step if
// the iterate becomes non-finite or ||A||_F exceeds 1e6.
Eigen::MatrixXd FitCovarianceByGradientDescent(const Eigen::MatrixXd& s,
                                               int steps,
                                               double learning_rate);

inline constexpr double kDivergenceNorm = 1e6;

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_COVARIANCE_OBJECTIVE_H_
