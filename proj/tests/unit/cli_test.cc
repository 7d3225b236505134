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
// Runs the installed command-line binary as a child process.
#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "json.hpp"

namespace {

using ::testing::HasSubstr;
namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr interleaved
};

RunResult RunCli(const std::string& args) {
  const std::string command = std::string(MIPNOISE_CLI_PATH) + " " + args + " 2>&1";
  RunResult result;
  FILE* pipe = popen(command.c_str(), "r");
  if (pipe == nullptr) return result;
  std::array<char, 4096> buffer;
  while (std::fgets(buffer.data(), buffer.size(), pipe) != nullptr) {
    result.output += buffer.data();
  }
  const int status = pclose(pipe);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return result;
}

fs::path FreshDir(const std::string& name) {
  const fs::path dir = fs::path(::testing::TempDir()) / ("mipnoise_cli_" + name);
  fs::remove_all(dir);
  return dir;
}

TEST(CliTest, HelpAndVersion) {
  const RunResult help = RunCli("--help");
  EXPECT_EQ(help.exit_code, 0);
  EXPECT_THAT(help.output, HasSubstr("attack-eval"));
  const RunResult version = RunCli("--version");
  EXPECT_EQ(version.exit_code, 0);
  EXPECT_THAT(version.output, HasSubstr("0.1.0"));
  EXPECT_NE(RunCli("").exit_code, 0);
  EXPECT_NE(RunCli("fig1 --no-such-flag 1").exit_code, 0);
}

TEST(CliTest, Fig1WritesCurves) {
  const fs::path dir = FreshDir("fig1");
  const RunResult r = RunCli("fig1 --n-values 4,8 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const nlohmann::json manifest = nlohmann::json::parse(r.output);
  EXPECT_EQ(manifest["subcommand"], "fig1");
  EXPECT_TRUE(fs::exists(dir / "fig1.csv"));
  std::ifstream csv(dir / "fig1.csv");
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "method,eta,n,run,value");
}

TEST(CliTest, ConfigFileIsOverriddenByFlags) {
  const fs::path dir = FreshDir("config");
  fs::create_directories(dir);
  std::ofstream(dir / "run.cfg") << "mechanism = binary-tight-dp\nrounds = 500\nseed = 3\n";
  const RunResult r = RunCli("attack-eval --config " + (dir / "run.cfg").string() +
                          " --seed 8 --set epsilon=2 --out " + dir.string());
  ASSERT_EQ(r.exit_code, 0) << r.output;
  const nlohmann::json manifest = nlohmann::json::parse(r.output);
  EXPECT_EQ(manifest["seed"], 8);
  EXPECT_THAT(r.output, HasSubstr("exact_accuracy"));
}

TEST(CliTest, ErrorsGoToStderrWithStatus) {
  const RunResult malformed = RunCli("synth --set 'runs = many'");
  EXPECT_EQ(malformed.exit_code, 1);
  EXPECT_THAT(malformed.output, HasSubstr("error (malformed-input)"));
  const RunResult missing = RunCli("moments --config /nonexistent/file.cfg");
  EXPECT_EQ(missing.exit_code, 1);
  EXPECT_THAT(missing.output, HasSubstr("error (io)"));
  const RunResult invalid = RunCli("privatize --data grid:8 --method mip --eta 0.9");
  EXPECT_EQ(invalid.exit_code, 1);
  EXPECT_THAT(invalid.output, HasSubstr("error (invalid-argument)"));
}

}  // namespace
