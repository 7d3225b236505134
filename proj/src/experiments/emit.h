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
#ifndef MIPNOISE_EXPERIMENTS_EMIT_H_
#define MIPNOISE_EXPERIMENTS_EMIT_H_

#include <cstddef>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

namespace mipnoise {

struct ResultRow {
  std::string method;
  double eta = 0.0;
  std::size_t n = 0;
  std::size_t run = 0;
  double value = 0.0;
};

// Mean and standard error over runs for one (method, n, eta) cell.
struct CellSummary {
  std::string method;
  std::size_t n = 0;
  double eta = 0.0;
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample sd / sqrt(count); 0 for a single run
};

// Cells in first-appearance order of (method, n, eta).
std::vector<CellSummary> Summarize(const std::vector<ResultRow>& table);

// Header "method,eta,n,run,value"; reals printed with %.17g so the bytes are
// a function of the values alone.
std::string CsvText(const std::vector<ResultRow>& table);

nlohmann::json SummaryJson(const std::vector<ResultRow>& table);

// Line chart of the cell means, one series per (method, n), eta on x.
std::string SvgText(const std::vector<ResultRow>& table, const std::string& title,
                    const std::string& y_label, bool log_y);

struct EmittedFiles {
  std::filesystem::path csv, json, svg;
};

// Writes <stem>.csv, <stem>_summary.json and <stem>.svg into dir (created if
// missing). Throws kInvalidArgument on an empty table or a non-finite value,
// kIo when a file cannot be written.
EmittedFiles EmitResults(const std::vector<ResultRow>& table,
                         const std::filesystem::path& dir, const std::string& stem,
                         const std::string& title, const std::string& y_label,
                         bool log_y);

// Writes text to path, throwing kIo on failure.
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace mipnoise

#endif  // MIPNOISE_EXPERIMENTS_EMIT_H_
