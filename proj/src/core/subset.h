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
#ifndef MIPNOISE_CORE_SUBSET_H_
#define MIPNOISE_CORE_SUBSET_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "core/rng.h"

namespace mipnoise {

inline constexpr std::uint64_t kDefaultEnumerationCap = 10'000'000;

// Selection of records out of a dataset of n records; one realisation of the
// training half.
class SubsetMask {
 public:
  SubsetMask() = default;
  explicit SubsetMask(std::size_t n);

  static SubsetMask FromIndices(std::size_t n,
                                std::span<const std::size_t> indices);

  std::size_t size() const { return n_; }
  std::size_t count() const;
  bool contains(std::size_t i) const {
    return (words_[i >> 6] >> (i & 63)) & 1U;
  }
  void set(std::size_t i, bool value = true);

  SubsetMask Complement() const;
  std::vector<std::size_t> Indices() const;

  // Low 64 bits; the whole mask when size() <= 64.
  std::uint64_t low_word() const { return words_.empty() ? 0 : words_[0]; }

  friend bool operator==(const SubsetMask&, const SubsetMask&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// C(n, k), saturating at UINT64_MAX.
std::uint64_t BinomialCoefficient(std::uint64_t n, std::uint64_t k);

// Uniformly random size-k subset of n records (partial Fisher-Yates).
SubsetMask RandomSubset(std::size_t n, std::size_t k, Rng& rng);

// Train half of size floor(n/2) and its complement. Requires n >= 2.
std::pair<SubsetMask, SubsetMask> RandomHalfSplit(std::size_t n, Rng& rng);

// Calls visit(mask) for every size-k subset of n records, in lexicographic
// order of the sorted index tuples. Throws kCapacityExceeded when C(n, k) is
// above cap.
void ForEachSubset(std::size_t n, std::size_t k,
                   const std::function<void(const SubsetMask&)>& visit,
                   std::uint64_t cap = kDefaultEnumerationCap);

std::vector<SubsetMask> EnumerateSubsets(
    std::size_t n, std::size_t k, std::uint64_t cap = kDefaultEnumerationCap);

// The family of all size-k training sets of an n-record dataset.
struct MaskFamily {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<SubsetMask> masks;
};

MaskFamily BuildMaskFamily(std::size_t n, std::size_t k,
                           std::uint64_t cap = kDefaultEnumerationCap);

}  // namespace mipnoise

#endif  // MIPNOISE_CORE_SUBSET_H_
