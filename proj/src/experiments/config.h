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
#ifndef MIPNOISE_EXPERIMENTS_CONFIG_H_
#define MIPNOISE_EXPERIMENTS_CONFIG_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace mipnoise {

// Flat key=value configuration shared by every subcommand. Keys outside the
// common set land in `extras` and are interpreted by the subcommand.
struct ExperimentConfig {
  std::string name;
  std::vector<double> eta_grid;
  std::vector<std::size_t> n_values;
  std::vector<int> m_set;
  std::size_t d = 3;
  std::size_t n_samples = 50000;
  std::size_t runs = 5;
  std::uint64_t seed = 1;
  std::string output_dir;
  std::map<std::string, std::string> extras;

  std::optional<std::string> Extra(const std::string& key) const;
  std::string ExtraOr(const std::string& key, const std::string& fallback) const;
  double ExtraDouble(const std::string& key, double fallback) const;
  long long ExtraInt(const std::string& key, long long fallback) const;
  std::optional<double> ExtraDoubleOpt(const std::string& key) const;
};

// Parses "key = value" lines; '#' starts a comment. Later lines override
// earlier ones, which is how command-line flags are layered on top of a
// config file. Lists are comma-separated.
ExperimentConfig ParseConfig(std::string_view text);

// Fills grids the subcommand needs but the config left empty, then checks
// the invariants (non-empty grids, every eta in (0, 1/2]).
void ApplyDefaults(ExperimentConfig& config);

// Canonical key=value rendering (sorted keys) and its stable hash, recorded
// in run manifests.
std::string CanonicalConfig(const ExperimentConfig& config);
std::string ConfigHash(const ExperimentConfig& config);

std::vector<double> ParseDoubleList(std::string_view text);
std::vector<double> Linspace(double lo, double hi, std::size_t count);

}  // namespace mipnoise

#endif  // MIPNOISE_EXPERIMENTS_CONFIG_H_
