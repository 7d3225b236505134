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
#include "core/covariance_objective.h"

#include <cmath>
#include <string>

#include "core/error.h"

namespace mipnoise {

Eigen::MatrixXd SecondMomentMatrix(const DatasetTable& data,
                                   const SubsetMask& subset) {
  const auto d = static_cast<Eigen::Index>(data.cols());
  Eigen::MatrixXd s = Eigen::MatrixXd::Zero(d, d);
  std::size_t k = 0;
  for (std::size_t i : subset.Indices()) {
    Eigen::Map<const Eigen::VectorXd> x(data.row(i).data(), d);
    s.noalias() += x * x.transpose();
    ++k;
  }
  if (k == 0) ThrowInvalid("second moment of an empty subset");
  return s / static_cast<double>(k);
}

Eigen::MatrixXd SecondMomentMatrix(const DatasetTable& data) {
  const auto d = static_cast<Eigen::Index>(data.cols());
  Eigen::Map<const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic,
                                 Eigen::RowMajor>>
      x(data.values().data(), static_cast<Eigen::Index>(data.rows()), d);
  return (x.transpose() * x) / static_cast<double>(data.rows());
}

double CovarianceObjective(const Eigen::MatrixXd& a, const Eigen::MatrixXd& s) {
  return (a - s).squaredNorm();
}

Eigen::MatrixXd CovarianceGradient(const Eigen::MatrixXd& a,
                                   const Eigen::MatrixXd& s) {
  return 2.0 * (a - s);
}

Eigen::MatrixXd FitCovarianceByGradientDescent(const Eigen::MatrixXd& s,
                                               int steps,
                                               double learning_rate) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(s.rows(), s.cols());
  for (int step = 0; step < steps; ++step) {
    a -= learning_rate * CovarianceGradient(a, s);
    const double norm = a.norm();
    if (!std::isfinite(norm) || norm > kDivergenceNorm) {
      throw Error(ErrorCode::kRuntime,
                  "gradient descent diverged at step " + std::to_string(step));
    }
  }
  return a;
}

}  // namespace mipnoise
