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
#ifndef MIPNOISE_EXPERIMENTS_RUNNER_H_
#define MIPNOISE_EXPERIMENTS_RUNNER_H_

#include <string>
#include <string_view>
#include <vector>

#include "core/types.h"
#include "experiments/config.h"
#include "json.hpp"

namespace mipnoise {

inline constexpr char kMipnoiseVersion[] = "0.1.0";

// Subcommands: fig1, synth, moments, privatize, attack-eval.
const std::vector<std::string>& SubcommandNames();

// Parses config_text, runs the named subcommand, writes its files into
// output_dir (default "mipnoise-out") and returns the run manifest: config
// hash, versions, seed, written files and the subcommand's result object.
nlohmann::json RunSubcommand(std::string_view name, std::string_view config_text);

nlohmann::json MechanismOutputJson(const MechanismOutput& output);

}  // namespace mipnoise

#endif  // MIPNOISE_EXPERIMENTS_RUNNER_H_
