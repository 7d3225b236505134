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
#include "experiments/runner.h"

#include <boost/version.hpp>
#include <Eigen/Core>
#include <cmath>
#include <filesystem>
#include <memory>
#include <numbers>

#include "attack/attack.h"
#include "attack/conversion.h"
#include "core/base_algorithm.h"
#include "core/dataset.h"
#include "core/error.h"
#include "experiments/emit.h"
#include "experiments/fig1.h"
#include "experiments/synth.h"
#include "mechanisms/mechanisms.h"
#include "moments/moments.h"
#include "moments/pathological.h"
#include "noise/noise.h"

namespace mipnoise {
namespace {

using nlohmann::json;

std::filesystem::path OutputDir(const ExperimentConfig& config) {
  return config.output_dir.empty() ? std::filesystem::path("mipnoise-out")
                                   : std::filesystem::path(config.output_dir);
}

void EnsureDir(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw Error(ErrorCode::kIo, "cannot create output directory " + dir.string());
  }
}

std::size_t ParseSize(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  long long v = -1;
  try {
    v = std::stoll(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos != text.size() || v < 0) {
    throw Error(ErrorCode::kMalformedInput, what + ": '" + text + "' is not a count");
  }
  return static_cast<std::size_t>(v);
}

// "path.csv", "pathological:N" or "grid:N" (N evenly spaced values in [0, 1]).
DatasetTable LoadDataset(const ExperimentConfig& config) {
  const auto spec = config.Extra("data");
  if (!spec) ThrowInvalid("this subcommand needs data=<csv path|pathological:N|grid:N>");
  if (spec->rfind("pathological:", 0) == 0) {
    return BuildPathologicalDataset(ParseSize(spec->substr(13), "data"));
  }
  if (spec->rfind("grid:", 0) == 0) {
    const std::size_t n = ParseSize(spec->substr(5), "data");
    if (n < 2) ThrowInvalid("grid dataset needs n >= 2");
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = static_cast<double>(i) / (n - 1);
    return DatasetTable::FromColumn(values);
  }
  return LoadCsv(*spec);
}

int MomentOrder(const ExperimentConfig& config) {
  return static_cast<int>(config.ExtraInt("M", config.m_set.front()));
}

json ProfileJson(const MomentProfile& profile) {
  return {{"M", profile.order()}, {"sigma", profile.sigma()}};
}

json RunFig1Command(const ExperimentConfig& config, json& outputs) {
  const Fig1Result result = RunFig1(config);
  const EmittedFiles files =
      EmitResults(result.rows, OutputDir(config), "fig1",
                  "Noise scale vs eta (pathological dataset)", "noise scale", true);
  outputs = {files.csv.string(), files.json.string(), files.svg.string()};
  json inputs = json::array();
  for (const Fig1Inputs& in : result.inputs) {
    inputs.push_back({{"n", in.n},
                      {"sigma", in.sigma},
                      {"sensitivity", in.sensitivity},
                      {"method", in.exact ? "enumeration" : "hybrid+analytic-bound"}});
  }
  json out = {{"inputs", inputs}, {"rows", result.rows.size()}};
  out["crossover_n"] = result.crossover_n ? json(*result.crossover_n) : json(nullptr);
  return out;
}

json RunSynthCommand(const ExperimentConfig& config, json& outputs) {
  const SynthResult result = RunSynth(config);
  const EmittedFiles files =
      EmitResults(result.rows, OutputDir(config), "synth",
                  "Relative error vs eta (d=" + std::to_string(config.d) + ")",
                  "relative error", true);
  outputs = {files.csv.string(), files.json.string(), files.svg.string()};
  json sigma = json::array();
  for (Eigen::Index i = 0; i < result.sigma.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < result.sigma.cols(); ++j) row.push_back(result.sigma(i, j));
    sigma.push_back(row);
  }
  return {{"ground_truth_sigma", sigma},
          {"summary", SummaryJson(result.rows)},
          {"notes", result.notes}};
}

json RunMomentsCommand(const ExperimentConfig& config, json& outputs) {
  const DatasetTable data = LoadDataset(config);
  const auto alg = MakeAlgorithm(config.ExtraOr("alg", "mean"));
  const int m = MomentOrder(config);
  const std::string estimator = config.ExtraOr("estimator", "bootstrap");
  json out;
  if (estimator == "exact") {
    const std::size_t k = static_cast<std::size_t>(config.ExtraInt("k", data.rows() / 2));
    const MomentProfile profile = ExactMomentProfile(data, *alg, k, m);
    out = ProfileJson(profile);
    out["estimator"] = "exact";
    out["B"] = 0;
    out["k"] = k;
  } else if (estimator == "bootstrap") {
    const long long b = config.ExtraInt("B", 128);
    if (b < 2) ThrowInvalid("B must be >= 2");
    MomentEstimateOptions options;
    options.unbiased_variance = config.ExtraInt("unbiased", 0) != 0;
    options.sigma_floor = config.ExtraDouble("sigma_floor", kDefaultSigmaFloor);
    Rng rng(config.seed);
    const MomentEstimate est =
        EstimateMoments(data, *alg, static_cast<std::size_t>(b), m, rng, options);
    out = ProfileJson(est.profile);
    out["estimator"] = "bootstrap";
    out["B"] = b;
    out["warnings"] = est.warnings;
  } else {
    ThrowInvalid("estimator must be bootstrap or exact");
  }
  const auto dir = OutputDir(config);
  EnsureDir(dir);
  WriteTextFile(dir / "moments.json", out.dump(2) + "\n");
  outputs = {(dir / "moments.json").string()};
  return out;
}

double SensitivityFor(const ExperimentConfig& config, const DatasetTable& data,
                      const BaseAlgorithm& alg) {
  if (auto s = config.ExtraDoubleOpt("sensitivity")) return *s;
  return SensitivityExact(data, alg, data.rows() / 2, SensitivityNorm::kAbs);
}

json RunPrivatizeCommand(const ExperimentConfig& config, json& outputs) {
  const DatasetTable data = LoadDataset(config);
  const auto alg = MakeAlgorithm(config.ExtraOr("alg", "mean"));
  const std::string method = config.ExtraOr("method", "mip");
  MechanismOutput result;
  if (method == "mip") {
    MipOptions options;
    options.eta = config.ExtraDouble("eta", config.eta_grid.front());
    options.moment_order = MomentOrder(config);
    const long long b = config.ExtraInt("B", 128);
    if (b < 2) ThrowInvalid("B must be >= 2");
    options.replicates = static_cast<std::size_t>(b);
    options.variant = ParseNoiseVariant(config.ExtraOr("variant", "laplace-radius"));
    const std::string subsets = config.ExtraOr("moment_subsets", "resplit-train");
    if (subsets == "half-of-dataset") {
      options.moment_subsets = MomentSubsets::kHalfOfDataset;
    } else if (subsets != "resplit-train") {
      ThrowInvalid("moment_subsets must be resplit-train or half-of-dataset");
    }
    result = PrivatizeMip(data, *alg, options, config.seed);
  } else if (method == "laplace-dp") {
    const auto epsilon = config.ExtraDoubleOpt("epsilon");
    if (!epsilon) ThrowInvalid("laplace-dp needs epsilon");
    result = PrivatizeLaplaceDp(data, *alg, *epsilon,
                                SensitivityFor(config, data, *alg), config.seed);
  } else {
    ThrowInvalid("method must be mip or laplace-dp");
  }
  json out = MechanismOutputJson(result);
  const auto dir = OutputDir(config);
  EnsureDir(dir);
  WriteTextFile(dir / "privatize.json", out.dump(2) + "\n");
  outputs = {(dir / "privatize.json").string()};
  return out;
}

MechanismDescriptor BuildAttackMechanism(const ExperimentConfig& config) {
  const std::string kind = config.ExtraOr("mechanism", "binary-tight-dp");
  if (kind == "binary-tight-dp") {
    return MakeBinaryTightDpDescriptor(config.ExtraDouble("epsilon", std::log(3.0)));
  }
  if (kind == "subset-publisher") {
    return MakeSubsetPublisherDescriptor(
        static_cast<std::size_t>(config.ExtraInt("n", 6)), config.ExtraDouble("p", 0.01));
  }
  if (kind == "constant") {
    const auto n = static_cast<std::size_t>(config.ExtraInt("n", 12));
    return MakeConstantDescriptor(n, n / 2);
  }
  auto data = std::make_shared<const DatasetTable>(LoadDataset(config));
  std::shared_ptr<const BaseAlgorithm> alg = MakeAlgorithm(config.ExtraOr("alg", "mean"));
  if (kind == "mip") {
    const double eta = config.ExtraDouble("eta", config.eta_grid.front());
    const int m = MomentOrder(config);
    MomentProfile profile = ExactMomentProfile(*data, *alg, data->rows() / 2, m);
    return MakeMipDescriptor(
        data, alg,
        MakeNoiseSpec(eta, std::move(profile),
                      ParseNoiseVariant(config.ExtraOr("variant", "density-exact"))));
  }
  if (kind == "laplace-dp") {
    const auto epsilon = config.ExtraDoubleOpt("epsilon");
    if (!epsilon) ThrowInvalid("laplace-dp needs epsilon");
    return MakeLaplaceDpDescriptor(data, alg, *epsilon, SensitivityFor(config, *data, *alg));
  }
  ThrowInvalid("unknown mechanism '" + kind +
               "' (binary-tight-dp, subset-publisher, constant, mip, laplace-dp)");
}

std::vector<std::size_t> ParseTargets(const std::string& text, std::size_t n) {
  std::vector<std::size_t> targets;
  if (text == "all") {
    for (std::size_t i = 0; i < n; ++i) targets.push_back(i);
    return targets;
  }
  for (double v : ParseDoubleList(text)) {
    if (v < 0 || v != std::floor(v) || v >= static_cast<double>(n)) {
      ThrowInvalid("target ids must be integers in [0, n)");
    }
    targets.push_back(static_cast<std::size_t>(v));
  }
  return targets;
}

json RunAttackCommand(const ExperimentConfig& config, json& outputs) {
  const MechanismDescriptor mech = BuildAttackMechanism(config);
  const std::vector<std::size_t> targets =
      ParseTargets(config.ExtraOr("targets", "all"), mech.n);
  const long long rounds = config.ExtraInt("rounds", 10000);
  if (rounds < 1) ThrowInvalid("rounds must be positive");
  const std::string attacker = config.ExtraOr("attacker", "bayes");

  std::vector<AttackReport> reports;
  if (attacker == "bayes") {
    for (std::size_t t : targets) {
      reports.push_back(OptimalAttackerAccuracy(mech, t, static_cast<std::size_t>(rounds),
                                                config.seed));
    }
  } else if (attacker == "always-in") {
    reports = AttackGame(mech, AlwaysInAttacker(), targets,
                         static_cast<std::size_t>(rounds), config.seed);
  } else {
    ThrowInvalid("attacker must be bayes or always-in");
  }

  json list = json::array();
  std::string csv = "target_id,accuracy,stderr\n";
  double max_accuracy = 0.0;
  char buf[96];
  for (const AttackReport& r : reports) {
    json item = {{"mechanism_id", r.mechanism_id},
                 {"target_id", r.target_id},
                 {"accuracy", r.accuracy},
                 {"std_error", r.std_error},
                 {"rounds", r.rounds},
                 {"attacker", AttackerKindName(r.attacker)}};
    item["eta_claimed"] = r.eta_claimed ? json(*r.eta_claimed) : json(nullptr);
    if (!mech.support.empty() && mech.has_density()) {
      item["exact_accuracy"] = ExactDiscreteAccuracy(mech, r.target_id);
    }
    list.push_back(item);
    std::snprintf(buf, sizeof(buf), "%zu,%.17g,%.17g\n", r.target_id, r.accuracy,
                  r.std_error);
    csv += buf;
    max_accuracy = std::max(max_accuracy, r.accuracy);
  }
  const auto dir = OutputDir(config);
  EnsureDir(dir);
  json out = {{"reports", list}, {"max_accuracy", max_accuracy}};
  if (mech.budget && mech.budget->kind() == PrivacyBudget::Kind::kDp) {
    out["eta_from_epsilon"] = MipEtaFromDp(mech.budget->epsilon());
  }
  WriteTextFile(dir / "attack.csv", csv);
  WriteTextFile(dir / "attack.json", out.dump(2) + "\n");
  outputs = {(dir / "attack.csv").string(), (dir / "attack.json").string()};
  return out;
}

}  // namespace

const std::vector<std::string>& SubcommandNames() {
  static const std::vector<std::string> names = {"fig1", "synth", "moments",
                                                 "privatize", "attack-eval"};
  return names;
}

json MechanismOutputJson(const MechanismOutput& output) {
  json diagnostics = json::object();
  for (const auto& [key, value] : output.diagnostics) {
    diagnostics[key] = std::isfinite(value) ? json(value) : json(std::to_string(value));
  }
  json out = {{"mechanism_id", output.mechanism_id},
              {"theta_hat", output.theta_hat},
              {"seed", output.seed},
              {"noise_scale", output.noise_scale},
              {"diagnostics", diagnostics},
              {"notes", output.notes}};
  out["profile"] = output.profile ? ProfileJson(*output.profile) : json(nullptr);
  return out;
}

json RunSubcommand(std::string_view name, std::string_view config_text) {
  ExperimentConfig config = ParseConfig(config_text);
  if (!config.name.empty() && config.name != name) {
    ThrowInvalid("config names subcommand '" + config.name + "' but '" +
                 std::string(name) + "' was requested");
  }
  config.name = std::string(name);
  ApplyDefaults(config);

  json outputs = json::array();
  json result;
  if (name == "fig1") {
    result = RunFig1Command(config, outputs);
  } else if (name == "synth") {
    result = RunSynthCommand(config, outputs);
  } else if (name == "moments") {
    result = RunMomentsCommand(config, outputs);
  } else if (name == "privatize") {
    result = RunPrivatizeCommand(config, outputs);
  } else if (name == "attack-eval") {
    result = RunAttackCommand(config, outputs);
  } else {
    ThrowInvalid("unknown subcommand '" + std::string(name) + "'");
  }
  return {{"subcommand", config.name},
          {"versions",
           {{"mipnoise", kMipnoiseVersion},
            {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." +
                          std::to_string(EIGEN_MAJOR_VERSION) + "." +
                          std::to_string(EIGEN_MINOR_VERSION)},
            {"boost", BOOST_LIB_VERSION}}},
          {"seed", config.seed},
          {"config_hash", ConfigHash(config)},
          {"outputs", outputs},
          {"result", result}};
}

}  // namespace mipnoise
