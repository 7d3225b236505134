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
// Command-line front end. Talks to the library only through the C API.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "CLI11.hpp"
#include "mipnoise/mipnoise.h"

namespace {

// Flag name -> config key. Flags are appended to the config text after the
// file contents, so they override it.
const std::vector<std::pair<std::string, std::string>> kFlags = {
    {"--seed", "seed"},
    {"--out", "output_dir"},
    {"--alg", "alg"},
    {"--method", "method"},
    {"--eta", "eta"},
    {"--epsilon", "epsilon"},
    {"--M", "M"},
    {"--B", "B"},
    {"--variant", "variant"},
    {"--data", "data"},
    {"--sensitivity", "sensitivity"},
    {"--mechanism", "mechanism"},
    {"--targets", "targets"},
    {"--rounds", "rounds"},
    {"--attacker", "attacker"},
    {"--estimator", "estimator"},
    {"--runs", "runs"},
    {"--n-samples", "n_samples"},
    {"--eta-grid", "eta_grid"},
    {"--n-values", "n_values"},
};

struct Invocation {
  std::string config_path;
  std::map<std::string, std::string> values;  // config key -> flag value
  std::vector<std::string> sets;              // raw key=value overrides
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read config file " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Membership-inference-private noise calibration toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(mipnoise_version()));

  const std::vector<std::pair<std::string, std::string>> commands = {
      {"fig1", "noise scale of MIP vs Laplace DP on the pathological dataset"},
      {"synth", "covariance estimation study: raw vs MIP vs DP-SGD"},
      {"moments", "estimate or enumerate a moment profile"},
      {"privatize", "release a base algorithm's output with MIP or Laplace-DP noise"},
      {"attack-eval", "optimal-attacker accuracy against a mechanism"},
  };
  std::map<std::string, Invocation> invocations;
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    Invocation& inv = invocations[name];
    sub->add_option("--config", inv.config_path, "key=value config file");
    for (const auto& [flag, key] : kFlags) {
      sub->add_option(flag, inv.values[key], "sets " + key);
    }
    sub->add_option("--set", inv.sets, "extra key=value override (repeatable)");
  }
  CLI11_PARSE(app, argc, argv);

  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.get_subcommand(name);
    if (!sub->parsed()) continue;
    Invocation& inv = invocations[name];
    std::string text;
    try {
      if (!inv.config_path.empty()) text = ReadFile(inv.config_path);
    } catch (const std::exception& e) {
      std::fprintf(stderr, "error (io): %s\n", e.what());
      return 1;
    }
    text += "\n";
    for (const auto& [flag, key] : kFlags) {
      if (sub->count(flag) > 0) text += key + " = " + inv.values[key] + "\n";
    }
    for (const std::string& s : inv.sets) text += s + "\n";

    char* manifest = nullptr;
    const mipnoise_status status =
        mipnoise_run_subcommand(name.c_str(), text.c_str(), &manifest);
    if (status != MIPNOISE_OK) {
      std::fprintf(stderr, "error (%s): %s\n", mipnoise_status_name(status),
                   mipnoise_last_error());
      return 1;
    }
    std::printf("%s\n", manifest);
    mipnoise_string_free(manifest);
  }
  return 0;
}
