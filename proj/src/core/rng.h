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
#ifndef MIPNOISE_CORE_RNG_H_
#define MIPNOISE_CORE_RNG_H_

#include <cstdint>
#include <limits>
#include <string_view>

namespace mipnoise {

// Counter-based random stream. The i-th output is a SplitMix64 finalizer
// applied to (key + i * golden_gamma), so a stream is fully described by its
// key and position. Child streams derive a fresh key from (key, label); a
// parallel task owns the child indexed by its task number and never shares a
// stream with another task.
class Rng {
 public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }

  result_type operator()() { return Next(); }
  std::uint64_t Next();

  // Uniform on the open interval (0, 1); never returns 0 or 1.
  double Uniform();

  // Uniform integer in [0, bound). bound must be positive.
  std::uint64_t UniformIndex(std::uint64_t bound);

  bool FairCoin() { return (Next() >> 63) != 0; }

  Rng Child(std::uint64_t index) const;
  Rng Child(std::string_view label) const;

  std::uint64_t key() const { return key_; }
  std::uint64_t position() const { return counter_; }

 private:
  struct FromKey {};
  Rng(FromKey, std::uint64_t key) : key_(key) {}

  std::uint64_t key_;
  std::uint64_t counter_ = 0;
};

std::uint64_t Mix64(std::uint64_t z);

// FNV-1a, used for stable labels and config hashing.
std::uint64_t StableHash(std::string_view text);

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_RNG_H_
