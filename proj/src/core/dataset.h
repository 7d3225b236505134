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
#ifndef MIPNOISE_CORE_DATASET_H_
#define MIPNOISE_CORE_DATASET_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "core/subset.h"

namespace mipnoise {

// Immutable n x d_in table of finite reals; record ids are row indices.
class DatasetTable {
 public:
  // Row-major values; throws on n < 2, size mismatch or non-finite entries.
  DatasetTable(std::size_t rows, std::size_t cols, std::vector<double> values);

  static DatasetTable FromRows(const std::vector<std::vector<double>>& rows);
  static DatasetTable FromColumn(std::span<const double> values);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * cols_, cols_};
  }
  double at(std::size_t i, std::size_t j) const {
    return values_[i * cols_ + j];
  }
  std::span<const double> values() const { return values_; }

  // Materialises the selected records (row order preserved).
  DatasetTable Select(const SubsetMask& mask) const;

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> values_;
};

// Headerless, comma-separated, one record per row.
DatasetTable ParseCsv(std::string_view text);
DatasetTable LoadCsv(const std::filesystem::path& path);

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_DATASET_H_
