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
#ifndef MIPNOISE_CORE_BASE_ALGORITHM_H_
#define MIPNOISE_CORE_BASE_ALGORITHM_H_

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "core/dataset.h"
#include "core/subset.h"

namespace mipnoise {

// Deterministic map from a training subset to a vector in R^d. Equal subsets
// must give bit-identical outputs; the exact attacker and the moment
// enumeration rely on it.
class BaseAlgorithm {
 public:
  virtual ~BaseAlgorithm() = default;

  virtual std::string name() const = 0;
  virtual std::size_t OutputDim(const DatasetTable& data) const = 0;
  virtual std::vector<double> Evaluate(const DatasetTable& data,
                                       const SubsetMask& subset) const = 0;
};

// Column means of the selected records.
class MeanQuery final : public BaseAlgorithm {
 public:
  std::string name() const override { return "mean"; }
  std::size_t OutputDim(const DatasetTable& data) const override {
    return data.cols();
  }
  std::vector<double> Evaluate(const DatasetTable& data,
                               const SubsetMask& subset) const override;
};

// Fits A to the empirical second-moment matrix by gradient descent on
// ||A - (1/k) sum x x^T||_F^2; output is A flattened row-major.
class CovarianceFit final : public BaseAlgorithm {
 public:
  explicit CovarianceFit(int steps = 500, double learning_rate = 0.4);

  std::string name() const override { return "covariance"; }
  std::size_t OutputDim(const DatasetTable& data) const override {
    return data.cols() * data.cols();
  }
  std::vector<double> Evaluate(const DatasetTable& data,
                               const SubsetMask& subset) const override;

 private:
  int steps_;
  double learning_rate_;
};

// 1 / sum of the selected (scalar) records.
class ReciprocalSum final : public BaseAlgorithm {
 public:
  std::string name() const override { return "reciprocal-sum"; }
  std::size_t OutputDim(const DatasetTable&) const override { return 1; }
  std::vector<double> Evaluate(const DatasetTable& data,
                               const SubsetMask& subset) const override;
};

// Wraps a callable; used for tests and the C callback interface.
class FunctionAlgorithm final : public BaseAlgorithm {
 public:
  using Fn = std::function<std::vector<double>(const DatasetTable&,
                                               const SubsetMask&)>;

  FunctionAlgorithm(std::string name, std::size_t dim, Fn fn)
      : name_(std::move(name)), dim_(dim), fn_(std::move(fn)) {}

  std::string name() const override { return name_; }
  std::size_t OutputDim(const DatasetTable&) const override { return dim_; }
  std::vector<double> Evaluate(const DatasetTable& data,
                               const SubsetMask& subset) const override {
    return fn_(data, subset);
  }

 private:
  std::string name_;
  std::size_t dim_;
  Fn fn_;
};

// "mean", "covariance" or "reciprocal-sum".
std::shared_ptr<const BaseAlgorithm> MakeAlgorithm(std::string_view name);

// Evaluates alg on every mask, in order.
std::vector<std::vector<double>> EvaluateAll(
    const DatasetTable& data, const BaseAlgorithm& alg,
    const std::vector<SubsetMask>& masks);

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_BASE_ALGORITHM_H_
