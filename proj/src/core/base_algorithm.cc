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
#include "core/base_algorithm.h"

#include <cmath>
#include <string>

#include "core/covariance_objective.h"
#include "core/error.h"

namespace mipnoise {

std::vector<double> MeanQuery::Evaluate(const DatasetTable& data,
                                        const SubsetMask& subset) const {
  std::vector<double> mean(data.cols(), 0.0);
  std::size_t k = 0;
  for (std::size_t i : subset.Indices()) {
    auto r = data.row(i);
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += r[j];
    ++k;
  }
  if (k == 0) ThrowInvalid("mean of an empty subset");
  for (double& m : mean) m /= static_cast<double>(k);
  return mean;
}

CovarianceFit::CovarianceFit(int steps, double learning_rate)
    : steps_(steps), learning_rate_(learning_rate) {
  if (steps_ < 1) ThrowInvalid("covariance fit needs at least one step");
  if (!(learning_rate_ > 0.0)) ThrowInvalid("learning rate must be positive");
}

std::vector<double> CovarianceFit::Evaluate(const DatasetTable& data,
                                            const SubsetMask& subset) const {
  const Eigen::MatrixXd s = SecondMomentMatrix(data, subset);
  const Eigen::MatrixXd a =
      FitCovarianceByGradientDescent(s, steps_, learning_rate_);
  std::vector<double> out(static_cast<std::size_t>(a.size()));
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out[static_cast<std::size_t>(i * a.cols() + j)] = a(i, j);
    }
  }
  return out;
}

std::vector<double> ReciprocalSum::Evaluate(const DatasetTable& data,
                                            const SubsetMask& subset) const {
  if (data.cols() != 1) ThrowInvalid("reciprocal-sum needs a scalar dataset");
  double sum = 0.0;
  for (std::size_t i : subset.Indices()) sum += data.at(i, 0);
  return {1.0 / sum};
}

std::shared_ptr<const BaseAlgorithm> MakeAlgorithm(std::string_view name) {
  if (name == "mean") return std::make_shared<MeanQuery>();
  if (name == "covariance") return std::make_shared<CovarianceFit>();
  if (name == "reciprocal-sum") return std::make_shared<ReciprocalSum>();
  ThrowInvalid("unknown base algorithm '" + std::string(name) + "'");
}

std::vector<std::vector<double>> EvaluateAll(
    const DatasetTable& data, const BaseAlgorithm& alg,
    const std::vector<SubsetMask>& masks) {
  std::vector<std::vector<double>> out;
  out.reserve(masks.size());
  for (const auto& m : masks) out.push_back(alg.Evaluate(data, m));
  return out;
}

}  // namespace mipnoise
