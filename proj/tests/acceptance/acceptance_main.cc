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
// Acceptance run: one PASS/FAIL line per headline criterion. Exits nonzero
// when any criterion fails.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "attack/attack.h"
#include "attack/conversion.h"
#include "attack/postprocess.h"
#include "core/base_algorithm.h"
#include "core/error.h"
#include "core/rng.h"
#include "experiments/config.h"
#include "experiments/emit.h"
#include "experiments/fig1.h"
#include "experiments/synth.h"
#include "mechanisms/mechanisms.h"
#include "moments/moments.h"
#include "moments/pathological.h"
#include "noise/noise.h"
#include "fixtures.h"
#include "stats.h"

namespace mipnoise {
namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

std::string Format(const char* fmt, double a, double b = 0, double c = 0, double d = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), fmt, a, b, c, d);
  return buf;
}

double Seconds(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - since).count();
}

Verdict TightnessOfBinaryDp() {
  const auto start = std::chrono::steady_clock::now();
  const AttackReport r =
      OptimalAttackerAccuracy(MakeBinaryTightDpDescriptor(std::log(3.0)), 0, 100000, 101);
  const double secs = Seconds(start);
  const bool pass = std::abs(r.accuracy - 0.75) <= 0.01 && secs < 10;
  return {pass, Format("accuracy=%.4f target=0.75+-0.01 time=%.2fs (<10s)", r.accuracy, secs)};
}

Verdict ConversionLaw() {
  bool pass = true;
  double lo = 1e9, hi = -1e9, worst = 0.0;
  for (double eps : {0.001, 0.005, 0.01}) {
    const double ratio = MipEtaFromDp(eps) / (eps / 4);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    pass = pass && ratio >= 0.99 && ratio <= 1.01;
  }
  for (double eps : {0.01, 0.1, 1.0, 5.0}) {
    const double rel = std::abs(DpEpsilonFromEta(MipEtaFromDp(eps)) - eps) / eps;
    worst = std::max(worst, rel);
    pass = pass && rel <= 1e-12;
  }
  return {pass, Format("ratio in [%.5f, %.5f] (need [0.99, 1.01]); round-trip rel err %.2e "
                       "(<=1e-12)",
                       lo, hi, worst)};
}

Verdict MipBoundOnMeanQuery() {
  const auto start = std::chrono::steady_clock::now();
  const auto data = testing::ToyTwelve();
  std::vector<std::size_t> targets(data->rows());
  for (std::size_t i = 0; i < targets.size(); ++i) targets[i] = i;
  bool pass = true;
  double worst_margin = -1.0;  // max of accuracy - bound
  std::string worst;
  std::uint64_t seed = 200;
  for (int m : {2, 4}) {
    for (double eta : {0.05, 0.1, 0.2, 0.4}) {
      const MechanismDescriptor mech = testing::ExactMeanMip(data, eta, m);
      const BayesAttacker bayes(mech);
      for (const AttackReport& r :
           AttackGame(mech, BayesPluginAttacker(bayes), targets, 10000, ++seed)) {
        const double bound = 0.5 + eta + 3 * r.std_error;
        if (r.accuracy - bound > worst_margin) {
          worst_margin = r.accuracy - bound;
          worst = Format("M=%.0f eta=%.2f target=%.0f acc=%.4f", m, eta,
                         static_cast<double>(r.target_id), r.accuracy);
        }
        pass = pass && r.accuracy <= bound;
      }
    }
  }
  const double secs = Seconds(start);
  pass = pass && secs < 300;
  return {pass, "96 cells, closest to bound: " + worst +
                    Format(" (acc - bound = %.4f); time=%.1fs (<300s)", worst_margin, secs)};
}

Verdict PublisherWitness() {
  const MechanismDescriptor mech = MakeSubsetPublisherDescriptor(6, 0.01);
  double worst = 0.0;
  for (std::size_t t = 0; t < 6; ++t) worst = std::max(worst, ExactDiscreteAccuracy(mech, t));
  const double ratio = MaxAdjacentLogRatio(mech);
  const bool pass = worst <= 0.53 && std::isinf(ratio);
  return {pass, Format("max exact accuracy=%.6f (<=0.53); max adjacent log PMF ratio=%g "
                       "(need inf)",
                       worst, ratio)};
}

Verdict PathologicalGap() {
  bool pass = true;
  double max_var = 0.0, min_slack = std::numeric_limits<double>::infinity();
  double n20_secs = 0.0;
  for (std::size_t n = 4; n <= 20; n += 2) {
    const auto start = std::chrono::steady_clock::now();
    const DatasetTable data = BuildPathologicalDataset(n);
    const double var = ExactPathologicalVariance(n).variance;
    const double delta = SensitivityExact(data, ReciprocalSum(), n / 2, SensitivityNorm::kAbs);
    if (n == 20) n20_secs = Seconds(start);
    const double envelope = std::pow(2.0, n / 3.0 - 2);
    max_var = std::max(max_var, var);
    min_slack = std::min(min_slack, delta / envelope);
    pass = pass && var <= 3.0 && delta >= envelope;
  }
  pass = pass && n20_secs < 120;
  return {pass, Format("max sigma^2=%.4f (<=3); min Delta/2^(n/3-2)=%.3f (>=1); n=20 "
                       "time=%.1fs (<120s)",
                       max_var, min_slack, n20_secs)};
}

Verdict Fig1AtThirtySix() {
  ExperimentConfig config = ParseConfig("name = fig1\nn_values = 36\n");
  ApplyDefaults(config);
  const Fig1Result result = RunFig1(config);
  const double sigma = result.inputs.at(0).sigma;
  bool pass = config.eta_grid.size() == 50 && config.eta_grid.front() <= 0.01 + 1e-12;
  double min_ratio = std::numeric_limits<double>::infinity();
  for (const ResultRow& row : result.rows) {
    if (row.method != "dp") continue;
    const double ratio = row.value / MipNoiseScale(row.eta, sigma);
    min_ratio = std::min(min_ratio, ratio);
    pass = pass && ratio > 1.0;
  }
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "mipnoise_acceptance";
  const EmittedFiles files =
      EmitResults(result.rows, dir, "fig1", "noise scale", "scale", true);
  std::ifstream csv(files.csv);
  std::string line;
  std::getline(csv, line);
  std::map<std::string, std::set<double>> curves;
  while (std::getline(csv, line)) {
    const auto comma = line.find(',');
    curves[line.substr(0, comma)].insert(std::stod(line.substr(comma + 1)));
  }
  const bool both = curves["mip"].size() == 50 && curves["dp"].size() == 50;
  pass = pass && both;
  return {pass, Format("min DP/MIP scale ratio over 50 etas=%.3g (>1); sigma=%.4f; CSV has "
                       "%.0f mip and %.0f dp points",
                       min_ratio, sigma, static_cast<double>(curves["mip"].size()),
                       static_cast<double>(curves["dp"].size()))};
}

Verdict SynthOrdering() {
  const auto start = std::chrono::steady_clock::now();
  ExperimentConfig config = ParseConfig("name = synth\n");
  ApplyDefaults(config);
  const SynthResult result = RunSynth(config);
  const double secs = Seconds(start);
  std::map<std::pair<std::string, double>, CellSummary> cells;
  for (const CellSummary& c : Summarize(result.rows)) cells[{c.method, c.eta}] = c;

  // (a) MIP with M in {4, 6} below DP-SGD at every eta >= 0.1.
  bool a = true;
  std::string a_detail;
  for (double eta : config.eta_grid) {
    if (eta < 0.1 - 1e-12) continue;
    const CellSummary& dp = cells.at({"dpsgd", eta});
    for (const char* method : {"mip-M4", "mip-M6"}) {
      const CellSummary& mip = cells.at({method, eta});
      const double gap = dp.mean - mip.mean;
      const bool ok = gap >= std::hypot(dp.std_error, mip.std_error);
      a = a && ok;
      if (!ok && a_detail.size() < 200) {
        a_detail += Format(" eta=%.2f:", eta) + method +
                    Format("=%.3f+-%.3f vs dp=%.3f", mip.mean, mip.std_error, dp.mean);
      }
    }
  }
  // (b) DP-SGD above relative error 1 at every eta.
  bool b = true;
  double dp_max = 0.0;
  for (double eta : config.eta_grid) {
    const CellSummary& dp = cells.at({"dpsgd", eta});
    dp_max = std::max(dp_max, dp.mean);
    b = b && dp.mean - 1.0 >= dp.std_error;
  }
  // (c) some MIP configuration below 1 at some eta <= 0.3.
  bool c = false;
  std::string c_detail = " none";
  for (const auto& [key, cell] : cells) {
    if (key.first.rfind("mip-", 0) != 0 || key.second > 0.3 + 1e-12) continue;
    if (1.0 - cell.mean >= cell.std_error && !c) {
      c = true;
      c_detail = " " + key.first + Format(" at eta=%.2f: %.3f+-%.3f", key.second, cell.mean,
                                          cell.std_error);
    }
  }
  const bool pass = a && b && c && secs < 600;
  return {pass, std::string("(a) ") + (a ? "PASS" : "FAIL") + a_detail + "; (b) " +
                    (b ? "PASS" : "FAIL") + Format(" max DP-SGD mean=%.3f", dp_max) +
                    "; (c) " + (c ? "PASS" : "FAIL") + c_detail +
                    Format("; time=%.0fs (<600s)", secs)};
}

Verdict SamplerCorrectness() {
  bool pass = true;
  std::string detail;
  double worst_moment = 0.0;
  for (double beta : {1.0, 2.0, 4.0, 6.0}) {
    Rng rng = Rng(301).Child(static_cast<std::uint64_t>(beta));
    double acc = 0.0;
    for (int i = 0; i < 1000000; ++i) acc += std::pow(std::abs(SampleGenNormal(1.0, beta, rng)), beta);
    const double rel = std::abs(acc / 1e6 / testing::GenNormalAbsMoment(1.0, beta, beta) - 1);
    worst_moment = std::max(worst_moment, rel);
    pass = pass && rel <= 0.02;
  }
  double worst_unit = 0.0;
  Rng dir_rng(302);
  for (int m : {2, 4, 6}) {
    const MomentProfile profile({0.01, 1.0, 7.0, 300.0}, m);
    for (int i = 0; i < 100000; ++i) {
      worst_unit = std::max(worst_unit, std::abs(SigmaNorm(SampleDirection(profile, dir_rng), profile) - 1));
    }
  }
  pass = pass && worst_unit <= 1e-12;

  // One-dimensional noise is Laplace(c sigma_1), whose M-th absolute moment
  // is M! (c sigma_1)^M; Markov's inequality on |X|^M gives the tail bound.
  double worst_tail = -1.0;
  for (int m : {2, 4}) {
    const NoiseSpec spec = MakeNoiseSpec(0.3, MomentProfile({0.2}, m), NoiseVariant::kLaplaceRadius);
    const double b = spec.scale * 0.2;
    const double sigma = b * std::pow(std::tgamma(m + 1.0), 1.0 / m);
    Rng rng = Rng(303).Child(m);
    const std::size_t draws = 1000000;
    std::vector<double> x(draws);
    for (double& v : x) v = SampleMipNoise(spec, rng)[0];
    for (double t : {2.0, 4.0, 8.0}) {
      std::size_t over = 0;
      for (double v : x) over += std::abs(v) > t * sigma;  // E X = 0 by symmetry
      const double bound = 1.0 / std::pow(t, m);
      const double freq = static_cast<double>(over) / draws;
      worst_tail = std::max(worst_tail, freq - bound - 4 * testing::BinomialStdError(bound, draws));
      pass = pass && freq <= bound + 4 * testing::BinomialStdError(bound, draws);
    }
  }
  return {pass, Format("worst GenNormal moment rel err=%.4f (<=0.02); max | ||U||-1 |=%.1e "
                       "(<=1e-12); max tail excess over bound=%.4f (<=0)",
                       worst_moment, worst_unit, worst_tail)};
}

Verdict PostProcessing() {
  const std::size_t target = 10;
  const std::size_t rounds = 10000;
  bool pass = true;
  std::string detail;
  auto check = [&](const MechanismDescriptor& base, const MechanismDescriptor& processed,
                   const std::string& label, std::uint64_t seed) {
    const AttackReport before = OptimalAttackerAccuracy(base, target, rounds, seed);
    const AttackReport after = OptimalAttackerAccuracy(processed, target, rounds, seed);
    const double slack = 2 * std::hypot(before.std_error, after.std_error);
    pass = pass && after.accuracy <= before.accuracy + slack;
    detail += label + Format(" %.4f vs %.4f (+%.4f); ", after.accuracy, before.accuracy, slack);
  };
  const MechanismDescriptor scalar = testing::ExactMeanMip(testing::ToyTwelve(), 0.4, 2);
  const MechanismDescriptor wide = testing::ExactMeanMip(testing::ToyTwelveWide(), 0.4, 2);
  check(wide, ProjectionPostProcess(wide), "projection", 401);
  check(scalar, QuantizePostProcess(scalar, 0.4, 0.6), "quantize3", 402);
  Eigen::MatrixXd w(1, 1);
  w << -3.0;
  Eigen::VectorXd b(1);
  b << 0.5;
  check(scalar, AffinePostProcess(scalar, w, b), "affine", 403);
  return {pass, detail};
}

}  // namespace
}  // namespace mipnoise

int main() {
  using mipnoise::Verdict;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"binary-dp-tightness", mipnoise::TightnessOfBinaryDp},
      {"conversion-law", mipnoise::ConversionLaw},
      {"mip-bound", mipnoise::MipBoundOnMeanQuery},
      {"publisher-witness", mipnoise::PublisherWitness},
      {"pathological-gap", mipnoise::PathologicalGap},
      {"fig1-n36", mipnoise::Fig1AtThirtySix},
      {"fig2-ordering", mipnoise::SynthOrdering},
      {"sampler-correctness", mipnoise::SamplerCorrectness},
      {"post-processing", mipnoise::PostProcessing},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("error: ") + e.what()};
    }
    failures += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
