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
#include "experiments/config.h"

#include <charconv>
#include <cstdio>
#include <sstream>

#include "core/error.h"
#include "core/rng.h"

namespace mipnoise {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void Malformed(const std::string& what) {
  throw Error(ErrorCode::kMalformedInput, what);
}

double ParseDouble(std::string_view text, const std::string& context) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Malformed(context + ": '" + std::string(text) + "' is not a number");
  }
  return value;
}

long long ParseInteger(std::string_view text, const std::string& context) {
  text = Trim(text);
  long long value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    Malformed(context + ": '" + std::string(text) + "' is not an integer");
  }
  return value;
}

std::size_t ParseCount(std::string_view text, const std::string& context) {
  const long long v = ParseInteger(text, context);
  if (v < 0) ThrowInvalid(context + " must be non-negative");
  return static_cast<std::size_t>(v);
}

// "a, b, c" or "linspace(lo, hi, count)".
std::vector<double> ParseGrid(std::string_view text, const std::string& context) {
  text = Trim(text);
  if (text.rfind("linspace(", 0) == 0 && text.back() == ')') {
    const std::vector<double> args =
        ParseDoubleList(text.substr(9, text.size() - 10));
    if (args.size() != 3 || args[2] < 2 || args[2] != static_cast<long long>(args[2])) {
      Malformed(context + ": linspace needs (lo, hi, integer count >= 2)");
    }
    return Linspace(args[0], args[1], static_cast<std::size_t>(args[2]));
  }
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t comma = text.find(',', start);
    const std::string_view item =
        text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    out.push_back(ParseDouble(item, context));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string JoinDoubles(const std::vector<double>& values) {
  std::string out;
  char buf[32];
  for (std::size_t i = 0; i < values.size(); ++i) {
    std::snprintf(buf, sizeof(buf), "%.17g", values[i]);
    if (i) out += ',';
    out += buf;
  }
  return out;
}

template <typename T>
std::string JoinIntegers(const std::vector<T>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

std::vector<double> ParseDoubleList(std::string_view text) {
  return ParseGrid(text, "list");
}

std::vector<double> Linspace(double lo, double hi, std::size_t count) {
  if (count < 2) ThrowInvalid("linspace needs at least two points");
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = hi;
  return out;
}

std::optional<std::string> ExperimentConfig::Extra(const std::string& key) const {
  auto it = extras.find(key);
  if (it == extras.end()) return std::nullopt;
  return it->second;
}

std::string ExperimentConfig::ExtraOr(const std::string& key,
                                      const std::string& fallback) const {
  return Extra(key).value_or(fallback);
}

double ExperimentConfig::ExtraDouble(const std::string& key, double fallback) const {
  auto v = Extra(key);
  return v ? ParseDouble(*v, key) : fallback;
}

std::optional<double> ExperimentConfig::ExtraDoubleOpt(const std::string& key) const {
  auto v = Extra(key);
  if (!v) return std::nullopt;
  return ParseDouble(*v, key);
}

long long ExperimentConfig::ExtraInt(const std::string& key, long long fallback) const {
  auto v = Extra(key);
  return v ? ParseInteger(*v, key) : fallback;
}

ExperimentConfig ParseConfig(std::string_view text) {
  ExperimentConfig config;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = text.find('\n', pos);
    std::string_view line =
        text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    pos = end == std::string_view::npos ? text.size() + 1 : end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "config line " + std::to_string(line_no);
    if (eq == std::string_view::npos) Malformed(where + ": expected key = value");
    const std::string key(Trim(line.substr(0, eq)));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty()) Malformed(where + ": empty key");
    const std::string context = where + " (" + key + ")";

    if (key == "name") {
      config.name = std::string(value);
    } else if (key == "eta_grid") {
      config.eta_grid = ParseGrid(value, context);
    } else if (key == "n_values") {
      config.n_values.clear();
      for (double v : ParseGrid(value, context)) {
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v))) {
          Malformed(context + ": n values must be non-negative integers");
        }
        config.n_values.push_back(static_cast<std::size_t>(v));
      }
    } else if (key == "M_set" || key == "m_set") {
      config.m_set.clear();
      for (double v : ParseGrid(value, context)) {
        if (v != static_cast<double>(static_cast<int>(v))) {
          Malformed(context + ": M values must be integers");
        }
        config.m_set.push_back(static_cast<int>(v));
      }
    } else if (key == "d") {
      config.d = ParseCount(value, context);
    } else if (key == "n_samples") {
      config.n_samples = ParseCount(value, context);
    } else if (key == "runs") {
      config.runs = ParseCount(value, context);
    } else if (key == "seed") {
      const std::string_view v = Trim(value);
      std::uint64_t seed = 0;
      const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), seed);
      if (ec != std::errc() || ptr != v.data() + v.size() || v.empty()) {
        Malformed(context + ": seed must be an unsigned 64-bit integer");
      }
      config.seed = seed;
    } else if (key == "output_dir" || key == "out") {
      config.output_dir = std::string(value);
    } else {
      config.extras[key] = std::string(value);
    }
  }
  return config;
}

void ApplyDefaults(ExperimentConfig& config) {
  if (config.name == "fig1") {
    if (config.eta_grid.empty()) config.eta_grid = Linspace(0.01, 0.49, 50);
    if (config.n_values.empty()) {
      for (std::size_t n = 4; n <= 48; n += 2) config.n_values.push_back(n);
    }
    if (config.m_set.empty()) config.m_set = {2};
  } else if (config.name == "synth") {
    if (config.eta_grid.empty()) {
      config.eta_grid = {0.01, 0.02, 0.05, 0.1, 0.2, 0.3, 0.4};
    }
    if (config.m_set.empty()) config.m_set = {2, 4, 6};
    if (config.n_values.empty()) config.n_values = {config.n_samples};
  }
  if (config.n_values.empty()) config.n_values = {config.n_samples};
  if (config.m_set.empty()) config.m_set = {2};
  if (config.eta_grid.empty()) config.eta_grid = {0.1};
  for (double eta : config.eta_grid) {
    if (!(eta > 0.0 && eta <= 0.5)) {
      ThrowInvalid("every eta in eta_grid must lie in (0, 1/2]");
    }
  }
  for (int m : config.m_set) {
    if (m < 2 || m % 2 != 0) ThrowInvalid("M_set entries must be even and >= 2");
  }
  if (config.runs == 0) ThrowInvalid("runs must be positive");
}

std::string CanonicalConfig(const ExperimentConfig& config) {
  std::map<std::string, std::string> all = config.extras;
  all["name"] = config.name;
  all["eta_grid"] = JoinDoubles(config.eta_grid);
  all["n_values"] = JoinIntegers(config.n_values);
  all["M_set"] = JoinIntegers(config.m_set);
  all["d"] = std::to_string(config.d);
  all["n_samples"] = std::to_string(config.n_samples);
  all["runs"] = std::to_string(config.runs);
  all["seed"] = std::to_string(config.seed);
  std::ostringstream out;
  for (const auto& [k, v] : all) out << k << '=' << v << '\n';
  return out.str();
}

std::string ConfigHash(const ExperimentConfig& config) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(StableHash(CanonicalConfig(config))));
  return buf;
}

}  // namespace mipnoise
