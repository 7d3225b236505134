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
#include "experiments/synth.h"

#include <cmath>
#include <memory>

#include "attack/conversion.h"
#include "core/base_algorithm.h"
#include "core/error.h"
#include "core/parallel.h"
#include "core/subset.h"
#include "experiments/psd_sqrt.h"
#include "mechanisms/dpsgd.h"
#include "mechanisms/mechanisms.h"
#include "noise/noise.h"

namespace mipnoise {
namespace {

std::vector<double> DefaultEigenvalues(std::size_t d) {
  if (d == 3) return {1.0, 2.0, 5.0};
  std::vector<double> out(d);
  for (std::size_t i = 0; i < d; ++i) {
    out[i] = d == 1 ? 1.0 : 1.0 + 4.0 * static_cast<double>(i) / static_cast<double>(d - 1);
  }
  return out;
}

// Seed of one (run, eta, method) cell; independent of scheduling.
std::uint64_t CellSeed(std::uint64_t seed, std::size_t run, std::size_t eta_index,
                       const std::string& method) {
  return Rng(seed).Child("synth-cell").Child(run).Child(eta_index).Child(method).Next();
}

MomentSubsets ParseMomentSubsets(const std::string& name) {
  if (name == "half-of-dataset") return MomentSubsets::kHalfOfDataset;
  if (name == "resplit-train") return MomentSubsets::kResplitTrain;
  ThrowInvalid("moment_subsets must be half-of-dataset or resplit-train");
}

struct Cell {
  std::size_t run;
  std::size_t eta_index;
  std::string method;
  int moment_order;  // 0 for DP-SGD
};

}  // namespace

Eigen::MatrixXd SynthGroundTruth(const std::vector<double>& eigenvalues,
                                 std::uint64_t rotation_seed) {
  const std::size_t d = eigenvalues.size();
  if (d == 0) ThrowInvalid("ground truth needs at least one eigenvalue");
  for (double v : eigenvalues) {
    if (!(v > 0.0) || !std::isfinite(v)) {
      ThrowInvalid("ground-truth covariance must be symmetric positive definite");
    }
  }
  Rng rng = Rng(rotation_seed).Child("rotation");
  Eigen::MatrixXd g(d, d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) g(i, j) = SampleStandardNormal(rng);
  }
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(g);
  Eigen::MatrixXd q = qr.householderQ();
  const Eigen::MatrixXd r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (std::size_t j = 0; j < d; ++j) {
    if (r(j, j) < 0) q.col(j) = -q.col(j);
  }
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  const Eigen::VectorXd lambda =
      Eigen::Map<const Eigen::VectorXd>(eigenvalues.data(), d);
  return q * lambda.asDiagonal() * q.transpose();
}

DatasetTable SampleGaussianTable(const Eigen::MatrixXd& sigma, std::size_t n,
                                 Rng& rng) {
  const std::size_t d = sigma.rows();
  const Eigen::MatrixXd root = ClampedSymmetricSqrt(sigma);
  std::vector<double> values(n * d);
  Eigen::VectorXd g(d);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t i = 0; i < d; ++i) g(i) = SampleStandardNormal(rng);
    const Eigen::VectorXd x = root * g;
    for (std::size_t i = 0; i < d; ++i) values[r * d + i] = x(i);
  }
  return DatasetTable(n, d, std::move(values));
}

double RelativeError(std::span<const double> a, const Eigen::MatrixXd& sigma) {
  const std::size_t d = sigma.rows();
  if (a.size() != d * d) ThrowInvalid("relative error needs a d x d estimate");
  double num = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double diff = a[i * d + j] - sigma(i, j);
      num += diff * diff;
    }
  }
  return std::sqrt(num) / sigma.norm();
}

SynthResult RunSynth(const ExperimentConfig& config) {
  if (config.d < 1) ThrowInvalid("synth needs d >= 1");
  if (config.n_samples < 1000) ThrowInvalid("synth needs n_samples >= 1000");
  std::vector<double> eigenvalues = DefaultEigenvalues(config.d);
  if (auto text = config.Extra("sigma_eigenvalues")) {
    eigenvalues = ParseDoubleList(*text);
    if (eigenvalues.size() != config.d) {
      ThrowInvalid("sigma_eigenvalues must list d values");
    }
  }
  const auto rotation_seed =
      static_cast<std::uint64_t>(config.ExtraInt("rotation_seed", 3));
  const long long replicates = config.ExtraInt("B", 128);
  const long long steps = config.ExtraInt("steps", 500);
  const double lr = config.ExtraDouble("lr", 0.4);
  const NoiseVariant variant =
      ParseNoiseVariant(config.ExtraOr("variant", "laplace-radius"));
  const MomentSubsets subsets =
      ParseMomentSubsets(config.ExtraOr("moment_subsets", "half-of-dataset"));
  const bool with_dpsgd = config.ExtraInt("dpsgd", 1) != 0;
  if (replicates < 2) ThrowInvalid("B must be >= 2");
  if (steps < 1) ThrowInvalid("steps must be >= 1");

  SynthResult result;
  result.sigma = SynthGroundTruth(eigenvalues, rotation_seed);
  const std::size_t n = config.n_samples;
  const auto alg = std::make_shared<CovarianceFit>(static_cast<int>(steps), lr);

  std::vector<std::unique_ptr<DatasetTable>> datasets(config.runs);
  std::vector<double> raw(config.runs);
  ParallelFor(config.runs, [&](std::size_t r) {
    Rng data_rng = Rng(config.seed).Child("synth-data").Child(r);
    datasets[r] = std::make_unique<DatasetTable>(
        SampleGaussianTable(result.sigma, n, data_rng));
    Rng split_rng = Rng(config.seed).Child("synth-raw").Child(r);
    auto [train, holdout] = RandomHalfSplit(n, split_rng);
    raw[r] = RelativeError(alg->Evaluate(*datasets[r], train), result.sigma);
  });

  std::vector<Cell> cells;
  for (std::size_t r = 0; r < config.runs; ++r) {
    for (std::size_t e = 0; e < config.eta_grid.size(); ++e) {
      for (int m : config.m_set) {
        cells.push_back({r, e, "mip-M" + std::to_string(m), m});
      }
      if (with_dpsgd) cells.push_back({r, e, "dpsgd", 0});
    }
  }
  std::vector<double> values(cells.size());
  ParallelFor(cells.size(), [&](std::size_t c) {
    const Cell& cell = cells[c];
    const double eta = config.eta_grid[cell.eta_index];
    const DatasetTable& data = *datasets[cell.run];
    const std::uint64_t seed =
        CellSeed(config.seed, cell.run, cell.eta_index, cell.method);
    MechanismOutput out;
    if (cell.moment_order > 0) {
      MipOptions options;
      options.eta = eta;
      options.moment_order = cell.moment_order;
      options.replicates = static_cast<std::size_t>(replicates);
      options.variant = variant;
      options.moment_subsets = subsets;
      out = PrivatizeMip(data, *alg, options, seed);
    } else {
      DpsgdOptions options;
      options.steps = static_cast<int>(steps);
      options.learning_rate = lr;
      options.noise_multiplier =
          eta >= 0.5 ? 0.0
                     : NoiseMultiplierForEpsilon(DpEpsilonFromEta(eta),
                                                 options.steps, n);
      out = DpsgdTrain(data, options, seed);
    }
    values[c] = RelativeError(out.theta_hat, result.sigma);
  });

  for (std::size_t r = 0; r < config.runs; ++r) {
    for (double eta : config.eta_grid) result.rows.push_back({"raw", eta, n, r, raw[r]});
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    result.rows.push_back({cells[c].method, config.eta_grid[cells[c].eta_index], n,
                           cells[c].run, values[c]});
  }
  result.notes.push_back(
      "dpsgd eta axis: zCDP rho = steps/(2 z^2) -> (epsilon, delta = 1/n) -> "
      "eta = 1/(1+e^-epsilon) - 1/2; the pure-DP conversion is not proven for "
      "delta > 0");
  return result;
}

}  // namespace mipnoise
