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
#include "experiments/emit.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

#include "core/error.h"

namespace mipnoise {
namespace {

std::string Real(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string Short(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

void CheckTable(const std::vector<ResultRow>& table) {
  if (table.empty()) ThrowInvalid("cannot emit an empty result table");
  for (const ResultRow& row : table) {
    if (!std::isfinite(row.value) || !std::isfinite(row.eta)) {
      ThrowInvalid("result row for '" + row.method + "' has a non-finite value");
    }
  }
}

std::string EscapeXml(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::vector<CellSummary> Summarize(const std::vector<ResultRow>& table) {
  std::map<std::tuple<std::string, std::size_t, double>, std::size_t> slot;
  std::vector<CellSummary> cells;
  std::vector<std::vector<double>> values;
  for (const ResultRow& row : table) {
    const auto key = std::make_tuple(row.method, row.n, row.eta);
    auto [it, fresh] = slot.emplace(key, cells.size());
    if (fresh) {
      cells.push_back({row.method, row.n, row.eta, 0, 0.0, 0.0});
      values.emplace_back();
    }
    values[it->second].push_back(row.value);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& v = values[c];
    double mean = 0.0;
    for (double x : v) mean += x;
    mean /= static_cast<double>(v.size());
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    cells[c].count = v.size();
    cells[c].mean = mean;
    cells[c].std_error =
        v.size() > 1 ? std::sqrt(ss / static_cast<double>(v.size() - 1)) /
                           std::sqrt(static_cast<double>(v.size()))
                     : 0.0;
  }
  return cells;
}

std::string CsvText(const std::vector<ResultRow>& table) {
  CheckTable(table);
  std::string out = "method,eta,n,run,value\n";
  for (const ResultRow& row : table) {
    out += row.method + ',' + Real(row.eta) + ',' + std::to_string(row.n) + ',' +
           std::to_string(row.run) + ',' + Real(row.value) + '\n';
  }
  return out;
}

nlohmann::json SummaryJson(const std::vector<ResultRow>& table) {
  CheckTable(table);
  nlohmann::json cells = nlohmann::json::array();
  for (const CellSummary& c : Summarize(table)) {
    cells.push_back({{"method", c.method},
                     {"n", c.n},
                     {"eta", c.eta},
                     {"runs", c.count},
                     {"mean", c.mean},
                     {"std_error", c.std_error}});
  }
  return {{"rows", table.size()}, {"cells", cells}};
}

std::string SvgText(const std::vector<ResultRow>& table, const std::string& title,
                    const std::string& y_label, bool log_y) {
  CheckTable(table);
  const std::vector<CellSummary> cells = Summarize(table);
  // Series keyed by (method, n) in first-appearance order.
  std::vector<std::string> names;
  std::map<std::string, std::vector<std::pair<double, double>>> series;
  for (const CellSummary& c : cells) {
    if (log_y && !(c.mean > 0.0)) continue;
    const std::string name = c.method + " n=" + std::to_string(c.n);
    if (!series.count(name)) names.push_back(name);
    series[name].emplace_back(c.eta, log_y ? std::log10(c.mean) : c.mean);
  }
  double x0 = 1e300, x1 = -1e300, y0 = 1e300, y1 = -1e300;
  for (const auto& [name, pts] : series) {
    for (const auto& [x, y] : pts) {
      x0 = std::min(x0, x), x1 = std::max(x1, x);
      y0 = std::min(y0, y), y1 = std::max(y1, y);
    }
  }
  if (series.empty()) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y1 = y0 + 1;

  const double w = 760, h = 460, left = 80, right = 220, top = 40, bottom = 60;
  auto px = [&](double x) { return left + (x - x0) / (x1 - x0) * (w - left - right); };
  auto py = [&](double y) { return h - bottom - (y - y0) / (y1 - y0) * (h - top - bottom); };
  static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                  "#bcbd22", "#17becf"};
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << w << "\" height=\""
      << h << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << left << "\" y=\"24\" font-size=\"15\">" << EscapeXml(title)
      << "</text>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << h - bottom << "\" x2=\"" << w - right
      << "\" y2=\"" << h - bottom << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left
      << "\" y2=\"" << h - bottom << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double xv = x0 + (x1 - x0) * t / 4.0;
    const double yv = y0 + (y1 - y0) * t / 4.0;
    svg << "<text x=\"" << px(xv) << "\" y=\"" << h - bottom + 18
        << "\" text-anchor=\"middle\">" << Short(xv) << "</text>\n";
    svg << "<text x=\"" << left - 6 << "\" y=\"" << py(yv) + 4
        << "\" text-anchor=\"end\">" << Short(log_y ? std::pow(10.0, yv) : yv)
        << "</text>\n";
  }
  svg << "<text x=\"" << (left + w - right) / 2 << "\" y=\"" << h - 16
      << "\" text-anchor=\"middle\">eta</text>\n";
  svg << "<text x=\"18\" y=\"" << (top + h - bottom) / 2
      << "\" transform=\"rotate(-90 18 " << (top + h - bottom) / 2
      << ")\" text-anchor=\"middle\">" << EscapeXml(y_label)
      << (log_y ? " (log scale)" : "") << "</text>\n";
  for (std::size_t s = 0; s < names.size(); ++s) {
    auto pts = series[names[s]];
    std::sort(pts.begin(), pts.end());
    const char* color = kColors[s % 10];
    svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
    for (const auto& [x, y] : pts) svg << px(x) << ',' << py(y) << ' ';
    svg << "\"/>\n";
    const double ly = top + 14.0 * static_cast<double>(s);
    svg << "<text x=\"" << w - right + 10 << "\" y=\"" << ly + 4 << "\" fill=\""
        << color << "\">" << EscapeXml(names[s]) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::kIo, "cannot open " + path.string() + " for writing");
  out << text;
  out.close();
  if (!out) throw Error(ErrorCode::kIo, "failed writing " + path.string());
}

EmittedFiles EmitResults(const std::vector<ResultRow>& table,
                         const std::filesystem::path& dir, const std::string& stem,
                         const std::string& title, const std::string& y_label,
                         bool log_y) {
  CheckTable(table);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory " + dir.string());
  }
  EmittedFiles files{dir / (stem + ".csv"), dir / (stem + "_summary.json"),
                     dir / (stem + ".svg")};
  WriteTextFile(files.csv, CsvText(table));
  WriteTextFile(files.json, SummaryJson(table).dump(2) + "\n");
  WriteTextFile(files.svg, SvgText(table, title, y_label, log_y));
  return files;
}

}  // namespace mipnoise
