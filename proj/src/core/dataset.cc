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
#include "core/dataset.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <string>

#include "core/error.h"

namespace mipnoise {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() &&
         (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::string Position(std::size_t row, std::size_t col) {
  return "row " + std::to_string(row + 1) + ", column " +
         std::to_string(col + 1);
}

}  // namespace

DatasetTable::DatasetTable(std::size_t rows, std::size_t cols,
                           std::vector<double> values)
    : rows_(rows), cols_(cols), values_(std::move(values)) {
  if (rows_ < 2) ThrowInvalid("dataset needs at least 2 records");
  if (cols_ == 0) ThrowInvalid("dataset needs at least 1 column");
  if (values_.size() != rows_ * cols_) {
    ThrowInvalid("dataset values do not match rows x cols");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      ThrowInvalid("dataset entry at " + Position(i / cols_, i % cols_) +
                   " is not finite");
    }
  }
}

DatasetTable DatasetTable::FromRows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) ThrowInvalid("dataset needs at least 2 records");
  const std::size_t cols = rows.front().size();
  std::vector<double> values;
  values.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    if (r.size() != cols) ThrowInvalid("dataset rows are not rectangular");
    values.insert(values.end(), r.begin(), r.end());
  }
  return DatasetTable(rows.size(), cols, std::move(values));
}

DatasetTable DatasetTable::FromColumn(std::span<const double> values) {
  return DatasetTable(values.size(), 1,
                      std::vector<double>(values.begin(), values.end()));
}

DatasetTable DatasetTable::Select(const SubsetMask& mask) const {
  if (mask.size() != rows_) ThrowInvalid("mask length differs from dataset size");
  std::vector<double> out;
  out.reserve(mask.count() * cols_);
  for (std::size_t i : mask.Indices()) {
    auto r = row(i);
    out.insert(out.end(), r.begin(), r.end());
  }
  const std::size_t selected = out.size() / cols_;
  return DatasetTable(selected, cols_, std::move(out));
}

DatasetTable ParseCsv(std::string_view text) {
  std::vector<double> values;
  std::size_t cols = 0;
  std::size_t row = 0;
  while (!text.empty()) {
    const std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (Trim(line).empty()) {
      // Blank lines are only tolerated at the end of the file.
      if (Trim(text).empty()) break;
      throw Error(ErrorCode::kMalformedInput,
                  "csv: empty record at row " + std::to_string(row + 1));
    }
    std::size_t col = 0;
    while (true) {
      const std::size_t comma = line.find(',');
      std::string_view cell = Trim(line.substr(0, comma));
      double v = 0.0;
      const char* end = cell.data() + cell.size();
      auto [ptr, ec] = std::from_chars(cell.data(), end, v);
      if (cell.empty() || ec != std::errc() || ptr != end) {
        throw Error(ErrorCode::kMalformedInput,
                    "csv: cannot parse '" + std::string(cell) + "' at " +
                        Position(row, col));
      }
      if (!std::isfinite(v)) {
        ThrowInvalid("csv: non-finite value at " + Position(row, col));
      }
      values.push_back(v);
      ++col;
      if (comma == std::string_view::npos) break;
      line = line.substr(comma + 1);
    }
    if (row == 0) {
      cols = col;
    } else if (col != cols) {
      throw Error(ErrorCode::kMalformedInput,
                  "csv: row " + std::to_string(row + 1) + " has " +
                      std::to_string(col) + " columns, expected " +
                      std::to_string(cols));
    }
    ++row;
  }
  if (row == 0) throw Error(ErrorCode::kMalformedInput, "csv: empty input");
  return DatasetTable(row, cols, std::move(values));
}

DatasetTable LoadCsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return ParseCsv(buf.str());
}

}  // namespace mipnoise
