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
#include "core/subset.h"

#include <bit>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.h"

namespace mipnoise {

SubsetMask::SubsetMask(std::size_t n) : n_(n), words_((n + 63) / 64, 0) {}

SubsetMask SubsetMask::FromIndices(std::size_t n,
                                   std::span<const std::size_t> indices) {
  SubsetMask mask(n);
  for (std::size_t i : indices) {
    if (i >= n) ThrowInvalid("SubsetMask: index out of range");
    mask.set(i);
  }
  return mask;
}

std::size_t SubsetMask::count() const {
  std::size_t total = 0;
  for (std::uint64_t w : words_) total += std::popcount(w);
  return total;
}

void SubsetMask::set(std::size_t i, bool value) {
  if (i >= n_) ThrowInvalid("SubsetMask: index out of range");
  const std::uint64_t bit = std::uint64_t{1} << (i & 63);
  if (value) {
    words_[i >> 6] |= bit;
  } else {
    words_[i >> 6] &= ~bit;
  }
}

SubsetMask SubsetMask::Complement() const {
  SubsetMask out(n_);
  for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = ~words_[w];
  if (n_ % 64 != 0 && !out.words_.empty()) {
    out.words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  return out;
}

std::vector<std::size_t> SubsetMask::Indices() const {
  std::vector<std::size_t> out;
  out.reserve(count());
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits != 0) {
      out.push_back(w * 64 + std::countr_zero(bits));
      bits &= bits - 1;
    }
  }
  return out;
}

std::uint64_t BinomialCoefficient(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t result = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // result * (n - k + i) / i stays integral at every step; reduce by gcd
    // first so the multiplication overflows only when the answer does.
    std::uint64_t num = n - k + i;
    std::uint64_t den = i;
    const std::uint64_t g1 = std::gcd(result, den);
    result /= g1;
    den /= g1;
    num /= den;
    if (result > kMax / num) return kMax;
    result *= num;
  }
  return result;
}

SubsetMask RandomSubset(std::size_t n, std::size_t k, Rng& rng) {
  if (k > n) ThrowInvalid("RandomSubset: k exceeds n");
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t j = i + rng.UniformIndex(n - i);
    std::swap(perm[i], perm[j]);
  }
  return SubsetMask::FromIndices(n, std::span(perm.data(), k));
}

std::pair<SubsetMask, SubsetMask> RandomHalfSplit(std::size_t n, Rng& rng) {
  if (n < 2) ThrowInvalid("RandomHalfSplit: need at least 2 records");
  SubsetMask train = RandomSubset(n, n / 2, rng);
  SubsetMask holdout = train.Complement();
  return {std::move(train), std::move(holdout)};
}

void ForEachSubset(std::size_t n, std::size_t k,
                   const std::function<void(const SubsetMask&)>& visit,
                   std::uint64_t cap) {
  if (k > n) ThrowInvalid("ForEachSubset: k exceeds n");
  const std::uint64_t total = BinomialCoefficient(n, k);
  if (total > cap) {
    throw Error(ErrorCode::kCapacityExceeded,
                "subset enumeration: C(" + std::to_string(n) + "," +
                    std::to_string(k) + ") = " +
                    (total == std::numeric_limits<std::uint64_t>::max()
                         ? std::string(">= 2^64")
                         : std::to_string(total)) +
                    " exceeds cap " + std::to_string(cap));
  }
  std::vector<std::size_t> idx(k);
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  SubsetMask mask = SubsetMask::FromIndices(n, idx);
  while (true) {
    visit(mask);
    // Advance to the next index tuple in lexicographic order.
    std::size_t pos = k;
    while (pos > 0 && idx[pos - 1] == n - k + pos - 1) --pos;
    if (pos == 0) break;
    mask.set(idx[pos - 1], false);
    ++idx[pos - 1];
    mask.set(idx[pos - 1]);
    for (std::size_t j = pos; j < k; ++j) {
      mask.set(idx[j], false);
      idx[j] = idx[j - 1] + 1;
    }
    for (std::size_t j = pos; j < k; ++j) mask.set(idx[j]);
  }
}

std::vector<SubsetMask> EnumerateSubsets(std::size_t n, std::size_t k,
                                         std::uint64_t cap) {
  std::vector<SubsetMask> out;
  const std::uint64_t total = BinomialCoefficient(n, k);
  if (total <= cap) out.reserve(total);
  ForEachSubset(n, k, [&](const SubsetMask& m) { out.push_back(m); }, cap);
  return out;
}

MaskFamily BuildMaskFamily(std::size_t n, std::size_t k, std::uint64_t cap) {
  return MaskFamily{n, k, EnumerateSubsets(n, k, cap)};
}

}  // namespace mipnoise
