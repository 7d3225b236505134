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
#ifndef MIPNOISE_ATTACK_ATTACK_H_
#define MIPNOISE_ATTACK_ATTACK_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "core/rng.h"
#include "core/subset.h"
#include "mechanisms/mechanisms.h"

namespace mipnoise {

enum class AttackerKind { kBayesExact, kPlugin };

const char* AttackerKindName(AttackerKind kind);

struct AttackReport {
  std::string mechanism_id;
  std::size_t target_id = 0;
  double accuracy = 0.0;
  double std_error = 0.0;
  std::size_t rounds = 0;
  AttackerKind attacker = AttackerKind::kPlugin;
  std::optional<double> eta_claimed;
};

// Posterior mass of "target in training set" given an output, under the
// uniform prior over all C(n, k) training masks. Mask log-densities are
// computed once per output; for additive-noise mechanisms the per-mask
// centers are cached at construction.
class BayesAttacker {
 public:
  explicit BayesAttacker(const MechanismDescriptor& mech,
                         std::uint64_t cap = kDefaultEnumerationCap);

  // Unnormalized posterior masses (in, out), rescaled so the larger mass is
  // finite. Throws kUndefinedPosterior when every mask has zero density.
  std::pair<double, double> Masses(std::span<const double> output,
                                   std::size_t target) const;

  double Posterior(std::span<const double> output, std::size_t target) const;

  // Guesses "in" iff the posterior is >= 1/2 (ties guess "in").
  bool Guess(std::span<const double> output, std::size_t target) const;

  const MaskFamily& masks() const { return family_; }

 private:
  std::vector<double> LogDensities(std::span<const double> output) const;

  const MechanismDescriptor& mech_;
  MaskFamily family_;
  std::vector<std::vector<double>> centers_;  // empty unless additive noise
};

double BayesPosterior(std::span<const double> output, std::size_t target,
                      const MechanismDescriptor& mech);

// Monte Carlo estimate of the optimal attacker's accuracy against a fixed
// target: each round draws a uniform training mask and a release from its
// own derived stream, then applies the Bayes rule. Rounds run in parallel.
AttackReport OptimalAttackerAccuracy(const MechanismDescriptor& mech,
                                     std::size_t target, std::size_t rounds,
                                     std::uint64_t seed);

// (target, output, attacker-private stream) -> guess "in".
using Attacker =
    std::function<bool(std::size_t, std::span<const double>, Rng&)>;

// Plays the membership game per target. Mask, mechanism and attacker draw
// from separate derived streams; the same seed gives the same masks and
// releases for every attacker, so reports from different attackers are
// paired.
std::vector<AttackReport> AttackGame(const MechanismDescriptor& mech,
                                     const Attacker& attacker,
                                     const std::vector<std::size_t>& targets,
                                     std::size_t rounds, std::uint64_t seed);

Attacker AlwaysInAttacker();

// Guesses "in" iff ||output - reference(target)||_2 <= threshold.
Attacker DistanceThresholdAttacker(
    std::function<std::vector<double>(std::size_t)> reference,
    double threshold);

// Guesses "in" iff <direction(target), output> >= offset(target).
Attacker LinearThresholdAttacker(
    std::function<std::vector<double>(std::size_t)> direction,
    std::function<double(std::size_t)> offset);

// Wraps the Bayes rule as a plug-in; the attacker must outlive the result.
Attacker BayesPluginAttacker(const BayesAttacker& bayes);

// Exact optimal accuracy for a mechanism with a finite support and a
// normalized PMF: sum_O max(sum_{D in} P(O|D), sum_{D out} P(O|D)) / |masks|.
double ExactDiscreteAccuracy(const MechanismDescriptor& mech,
                             std::size_t target,
                             std::uint64_t cap = kDefaultEnumerationCap);

// max over adjacent masks D, D' (one record swapped) and support outputs O of
// |log P(O|D) - log P(O|D')|; +infinity when an output is possible under one
// mask but not the other. This is the smallest epsilon for which the
// mechanism is epsilon-DP on the mask family.
double MaxAdjacentLogRatio(const MechanismDescriptor& mech,
                           std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mipnoise

#endif  // MIPNOISE_ATTACK_ATTACK_H_
