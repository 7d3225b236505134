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
#include "attack/attack.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <unordered_map>

#include "core/error.h"
#include "core/parallel.h"

namespace mipnoise {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

void CheckDescriptor(const MechanismDescriptor& mech) {
  if (!mech.release) ThrowInvalid("mechanism '" + mech.id + "' cannot release");
  if (mech.n < 2 || mech.k > mech.n) {
    ThrowInvalid("mechanism '" + mech.id + "' has an invalid mask family");
  }
}

void CheckTarget(const MechanismDescriptor& mech, std::size_t target) {
  if (target >= mech.n) {
    ThrowInvalid("target " + std::to_string(target) + " is outside [0, " +
                 std::to_string(mech.n) + ")");
  }
}

double BinomialStdError(double accuracy, std::size_t rounds) {
  return std::sqrt(accuracy * (1.0 - accuracy) / static_cast<double>(rounds));
}

// Round r of a game owns Rng(seed).Child(target).Child(r); its children
// "mask", "mechanism" and "attacker" never overlap.
struct RoundStreams {
  Rng mask, mechanism, attacker;
};

RoundStreams StreamsFor(std::uint64_t seed, std::size_t target,
                        std::size_t round) {
  Rng r = Rng(seed).Child(target).Child(round);
  return {r.Child("mask"), r.Child("mechanism"), r.Child("attacker")};
}

}  // namespace

const char* AttackerKindName(AttackerKind kind) {
  return kind == AttackerKind::kBayesExact ? "bayes_exact" : "plugin";
}

BayesAttacker::BayesAttacker(const MechanismDescriptor& mech,
                             std::uint64_t cap)
    : mech_(mech) {
  CheckDescriptor(mech);
  if (!mech.has_density()) {
    ThrowInvalid("mechanism '" + mech.id +
                 "' exposes no output density; use a plug-in attacker");
  }
  family_ = BuildMaskFamily(mech.n, mech.k, cap);
  if (mech.center && mech.noise_log_density) {
    centers_.resize(family_.masks.size());
    ParallelFor(centers_.size(), [&](std::size_t i) {
      centers_[i] = mech.center(family_.masks[i]);
    });
  }
}

std::vector<double> BayesAttacker::LogDensities(
    std::span<const double> output) const {
  std::vector<double> logs(family_.masks.size());
  if (!centers_.empty()) {
    std::vector<double> diff(output.size());
    for (std::size_t m = 0; m < logs.size(); ++m) {
      const auto& c = centers_[m];
      for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = output[i] - c[i];
      logs[m] = mech_.noise_log_density(diff);
    }
  } else {
    for (std::size_t m = 0; m < logs.size(); ++m) {
      logs[m] = mech_.log_density(output, family_.masks[m]);
    }
  }
  return logs;
}

std::pair<double, double> BayesAttacker::Masses(std::span<const double> output,
                                                std::size_t target) const {
  CheckTarget(mech_, target);
  const std::vector<double> logs = LogDensities(output);
  const double peak = *std::max_element(logs.begin(), logs.end());
  if (!(peak > kNegInf) || std::isnan(peak)) {
    throw Error(ErrorCode::kUndefinedPosterior,
                "every training set gives zero density to the observed output");
  }
  double in = 0.0, out = 0.0;
  for (std::size_t m = 0; m < logs.size(); ++m) {
    const double w = std::exp(logs[m] - peak);
    (family_.masks[m].contains(target) ? in : out) += w;
  }
  return {in, out};
}

double BayesAttacker::Posterior(std::span<const double> output,
                                std::size_t target) const {
  const auto [in, out] = Masses(output, target);
  return in / (in + out);
}

bool BayesAttacker::Guess(std::span<const double> output,
                          std::size_t target) const {
  const auto [in, out] = Masses(output, target);
  return in >= out;
}

double BayesPosterior(std::span<const double> output, std::size_t target,
                      const MechanismDescriptor& mech) {
  return BayesAttacker(mech).Posterior(output, target);
}

AttackReport OptimalAttackerAccuracy(const MechanismDescriptor& mech,
                                     std::size_t target, std::size_t rounds,
                                     std::uint64_t seed) {
  BayesAttacker bayes(mech);
  CheckTarget(mech, target);
  std::vector<AttackReport> reports = AttackGame(
      mech, BayesPluginAttacker(bayes), {target}, rounds, seed);
  reports[0].attacker = AttackerKind::kBayesExact;
  return reports[0];
}

std::vector<AttackReport> AttackGame(const MechanismDescriptor& mech,
                                     const Attacker& attacker,
                                     const std::vector<std::size_t>& targets,
                                     std::size_t rounds, std::uint64_t seed) {
  CheckDescriptor(mech);
  if (rounds == 0) ThrowInvalid("an attack needs at least one round");
  std::vector<AttackReport> reports;
  reports.reserve(targets.size());
  for (std::size_t target : targets) {
    CheckTarget(mech, target);
    std::vector<unsigned char> correct(rounds, 0);
    ParallelFor(rounds, [&](std::size_t r) {
      RoundStreams s = StreamsFor(seed, target, r);
      const SubsetMask mask = RandomSubset(mech.n, mech.k, s.mask);
      const std::vector<double> output = mech.release(mask, s.mechanism);
      const bool guess = attacker(target, output, s.attacker);
      correct[r] = guess == mask.contains(target);
    });
    std::size_t hits = 0;
    for (unsigned char c : correct) hits += c;
    AttackReport report;
    report.mechanism_id = mech.id;
    report.target_id = target;
    report.rounds = rounds;
    report.accuracy = static_cast<double>(hits) / static_cast<double>(rounds);
    report.std_error = BinomialStdError(report.accuracy, rounds);
    report.attacker = AttackerKind::kPlugin;
    if (mech.budget && mech.budget->kind() == PrivacyBudget::Kind::kMip) {
      report.eta_claimed = mech.budget->eta();
    }
    reports.push_back(report);
  }
  return reports;
}

Attacker AlwaysInAttacker() {
  return [](std::size_t, std::span<const double>, Rng&) { return true; };
}

Attacker DistanceThresholdAttacker(
    std::function<std::vector<double>(std::size_t)> reference,
    double threshold) {
  return [reference = std::move(reference), threshold](
             std::size_t target, std::span<const double> output, Rng&) {
    const std::vector<double> ref = reference(target);
    double sq = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i) {
      sq += (output[i] - ref[i]) * (output[i] - ref[i]);
    }
    return std::sqrt(sq) <= threshold;
  };
}

Attacker LinearThresholdAttacker(
    std::function<std::vector<double>(std::size_t)> direction,
    std::function<double(std::size_t)> offset) {
  return [direction = std::move(direction), offset = std::move(offset)](
             std::size_t target, std::span<const double> output, Rng&) {
    const std::vector<double> dir = direction(target);
    double dot = 0.0;
    for (std::size_t i = 0; i < output.size(); ++i) dot += dir[i] * output[i];
    return dot >= offset(target);
  };
}

Attacker BayesPluginAttacker(const BayesAttacker& bayes) {
  return [&bayes](std::size_t target, std::span<const double> output, Rng&) {
    return bayes.Guess(output, target);
  };
}

double ExactDiscreteAccuracy(const MechanismDescriptor& mech,
                             std::size_t target, std::uint64_t cap) {
  CheckTarget(mech, target);
  if (!mech.has_density() || mech.support.empty()) {
    ThrowInvalid("mechanism '" + mech.id +
                 "' has no enumerable support for exact accuracy");
  }
  const MaskFamily family = BuildMaskFamily(mech.n, mech.k, cap);
  const std::uint64_t work =
      static_cast<std::uint64_t>(family.masks.size()) * mech.support.size();
  if (work > cap) {
    throw Error(ErrorCode::kCapacityExceeded,
                "exact accuracy needs " + std::to_string(work) +
                    " (mask, output) pairs, above the cap");
  }
  std::vector<double> per_output(mech.support.size());
  ParallelFor(mech.support.size(), [&](std::size_t o) {
    double in = 0.0, out = 0.0;
    for (const SubsetMask& mask : family.masks) {
      const double p = std::exp(mech.log_density(mech.support[o], mask));
      (mask.contains(target) ? in : out) += p;
    }
    per_output[o] = std::max(in, out);
  });
  double total = 0.0;
  for (double v : per_output) total += v;
  return total / static_cast<double>(family.masks.size());
}

double MaxAdjacentLogRatio(const MechanismDescriptor& mech, std::uint64_t cap) {
  if (!mech.has_density() || mech.support.empty()) {
    ThrowInvalid("mechanism '" + mech.id +
                 "' has no enumerable support for a PMF ratio");
  }
  if (mech.n > 64) ThrowInvalid("adjacency search supports n <= 64");
  const MaskFamily family = BuildMaskFamily(mech.n, mech.k, cap);
  const std::uint64_t work = static_cast<std::uint64_t>(family.masks.size()) *
                             mech.support.size();
  if (work > cap) {
    throw Error(ErrorCode::kCapacityExceeded,
                "PMF table needs " + std::to_string(work) +
                    " entries, above the cap");
  }
  // log P(O | mask), indexed [mask][output].
  std::vector<std::vector<double>> table(family.masks.size());
  std::unordered_map<std::uint64_t, std::size_t> index;
  for (std::size_t m = 0; m < family.masks.size(); ++m) {
    index.emplace(family.masks[m].low_word(), m);
  }
  ParallelFor(family.masks.size(), [&](std::size_t m) {
    table[m].resize(mech.support.size());
    for (std::size_t o = 0; o < mech.support.size(); ++o) {
      table[m][o] = mech.log_density(mech.support[o], family.masks[m]);
    }
  });
  double worst = 0.0;
  for (std::size_t m = 0; m < family.masks.size(); ++m) {
    const std::uint64_t bits = family.masks[m].low_word();
    for (std::size_t i = 0; i < mech.n; ++i) {
      if (!((bits >> i) & 1U)) continue;
      for (std::size_t j = 0; j < mech.n; ++j) {
        if ((bits >> j) & 1U) continue;
        const std::uint64_t swapped =
            (bits & ~(std::uint64_t{1} << i)) | (std::uint64_t{1} << j);
        const std::size_t other = index.at(swapped);
        if (other < m) continue;  // each unordered pair once
        for (std::size_t o = 0; o < mech.support.size(); ++o) {
          const double a = table[m][o], b = table[other][o];
          if (a == kNegInf && b == kNegInf) continue;
          if (a == kNegInf || b == kNegInf) {
            return std::numeric_limits<double>::infinity();
          }
          worst = std::max(worst, std::abs(a - b));
        }
      }
    }
  }
  return worst;
}

}  // namespace mipnoise
