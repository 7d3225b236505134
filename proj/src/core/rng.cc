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
#include "core/rng.h"

#include "core/error.h"

namespace mipnoise {
namespace {

constexpr std::uint64_t kGoldenGamma = 0x9e3779b97f4a7c15ULL;
constexpr std::uint64_t kChildSalt = 0xd1b54a32d192ed03ULL;

}  // namespace

std::uint64_t Mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t StableHash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Rng::Rng(std::uint64_t seed) : key_(Mix64(seed + kGoldenGamma)) {}

std::uint64_t Rng::Next() {
  ++counter_;
  return Mix64(key_ + counter_ * kGoldenGamma);
}

double Rng::Uniform() {
  // 53 random bits centred in their cell: (m + 0.5) / 2^53 lies in (0, 1).
  const std::uint64_t m = Next() >> 11;
  return (static_cast<double>(m) + 0.5) * 0x1.0p-53;
}

std::uint64_t Rng::UniformIndex(std::uint64_t bound) {
  if (bound == 0) ThrowInvalid("UniformIndex: bound must be positive");
  // Rejection on the top of the range keeps the draw exactly uniform.
  const std::uint64_t limit = max() - max() % bound;
  std::uint64_t x;
  do {
    x = Next();
  } while (x >= limit);
  return x % bound;
}

Rng Rng::Child(std::uint64_t index) const {
  return Rng(FromKey{}, Mix64(key_ ^ Mix64(index * kChildSalt + kGoldenGamma)));
}

Rng Rng::Child(std::string_view label) const {
  return Child(StableHash(label));
}

}  // namespace mipnoise
