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
#ifndef MIPNOISE_TESTS_SUPPORT_FIXTURES_H_
#define MIPNOISE_TESTS_SUPPORT_FIXTURES_H_

#include <memory>
#include <vector>

#include "core/base_algorithm.h"
#include "core/dataset.h"
#include "mechanisms/mechanisms.h"
#include "moments/moments.h"
#include "noise/noise.h"

namespace mipnoise::testing {

// Twelve scalar records in [0, 1], shared by the attack and post-processing
// checks.
inline std::shared_ptr<const DatasetTable> ToyTwelve() {
  static const std::vector<double> values = {0.10, 0.40, 0.35, 0.80, 0.05, 0.90,
                                             0.60, 0.25, 0.70, 0.15, 0.95, 0.50};
  return std::make_shared<const DatasetTable>(DatasetTable::FromColumn(values));
}

// Same twelve records with a second column, for projection checks.
inline std::shared_ptr<const DatasetTable> ToyTwelveWide() {
  const auto base = ToyTwelve();
  std::vector<std::vector<double>> rows;
  for (std::size_t i = 0; i < base->rows(); ++i) {
    const double x = base->at(i, 0);
    rows.push_back({x, 1.0 - x * x});
  }
  return std::make_shared<const DatasetTable>(DatasetTable::FromRows(rows));
}

// Mean query with exact size-n/2 moments and density-exact noise.
inline MechanismDescriptor ExactMeanMip(std::shared_ptr<const DatasetTable> data,
                                        double eta, int moment_order) {
  auto alg = std::make_shared<const MeanQuery>();
  MomentProfile profile =
      ExactMomentProfile(*data, *alg, data->rows() / 2, moment_order);
  return MakeMipDescriptor(
      data, alg, MakeNoiseSpec(eta, std::move(profile), NoiseVariant::kDensityExact));
}

}  // namespace mipnoise::testing

#endif  // MIPNOISE_TESTS_SUPPORT_FIXTURES_H_
