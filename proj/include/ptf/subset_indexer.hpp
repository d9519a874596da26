// Copyright 2026 The ptflab Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PTF_SUBSET_INDEXER_HPP_
#define PTF_SUBSET_INDEXER_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "ptf/errors.hpp"

namespace ptf {

// Bijection between {S subset of [n] : |S| <= d} and [0, N),
// N = sum_{k<=d} C(n,k).
//
// Order is graded colexicographic: subsets of size k precede size k+1;
// within a size class, colex on the sorted member lists. For bitmask
// subsets this coincides with increasing numeric mask order inside each
// size class, so the successor is O(1) (Gosper's hack). Serialized
// coefficient vectors rely on this order being stable.
//
// Subsets are uint32 bitmasks: bit i-1 set means variable i is a member.
class SubsetIndexer {
 public:
  SubsetIndexer(int n, int d) : n_(n), d_(d) {
    if (n < 1 || n > kMaxDimension) {
      throw CapacityError("SubsetIndexer: n must be in [1, 24], got " +
                          std::to_string(n));
    }
    if (d < 0 || d > n) {
      throw ParamError("SubsetIndexer: d must be in [0, n], got " +
                       std::to_string(d));
    }
    offset_.resize(static_cast<std::size_t>(d) + 2, 0);
    for (int k = 0; k <= d; ++k) {
      offset_[static_cast<std::size_t>(k) + 1] =
          offset_[static_cast<std::size_t>(k)] + binomial(n, k);
    }
  }

  int n() const { return n_; }
  int d() const { return d_; }
  std::size_t size() const { return offset_.back(); }

  std::size_t index_of(std::uint32_t subset) const {
    if (subset >> n_) {
      throw IndexError("index_of: subset has members beyond variable n");
    }
    const int k = popcount(subset);
    if (k > d_) {
      throw IndexError("index_of: subset size " + std::to_string(k) +
                       " exceeds degree bound " + std::to_string(d_));
    }
    // Colex rank = sum over the i-th smallest member (0-based position b)
    // of C(b, i+1).
    std::size_t rank = 0;
    int i = 1;
    std::uint32_t rest = subset;
    while (rest) {
      const int b = countr_zero(rest);
      rank += binomial(b, i);
      ++i;
      rest &= rest - 1;
    }
    return offset_[static_cast<std::size_t>(k)] + rank;
  }

  std::uint32_t subset_of(std::size_t index) const {
    if (index >= size()) {
      throw IndexError("subset_of: index " + std::to_string(index) +
                       " out of range [0, " + std::to_string(size()) + ")");
    }
    int k = 0;
    while (offset_[static_cast<std::size_t>(k) + 1] <= index) ++k;
    std::size_t rank = index - offset_[static_cast<std::size_t>(k)];
    std::uint32_t subset = 0;
    for (int j = k; j >= 1; --j) {
      // Largest position b with C(b, j) <= rank.
      int b = j - 1;
      while (binomial(b + 1, j) <= rank) ++b;
      subset |= (1u << b);
      rank -= binomial(b, j);
    }
    return subset;
  }

  // Visits every indexed subset mask in order.
  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (int k = 0; k <= d_; ++k) {
      if (k == 0) {
        fn(std::uint32_t{0});
        continue;
      }
      std::uint32_t mask = (1u << k) - 1;
      const std::uint32_t limit = 1u << n_;
      while (mask < limit) {
        fn(mask);
        // Gosper's hack: next mask with the same popcount.
        const std::uint32_t c = mask & (0u - mask);
        const std::uint32_t r = mask + c;
        mask = (((r ^ mask) >> 2) / c) | r;
        if (c == 0) break;
      }
    }
  }

  // 1-based sorted member list, for serialization.
  static std::vector<int> members(std::uint32_t subset) {
    std::vector<int> out;
    while (subset) {
      out.push_back(countr_zero(subset) + 1);
      subset &= subset - 1;
    }
    return out;
  }

  static std::size_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    static const auto table = [] {
      std::vector<std::vector<std::size_t>> c(kMaxDimension + 1);
      for (int i = 0; i <= kMaxDimension; ++i) {
        c[i].assign(static_cast<std::size_t>(i) + 1, 1);
        for (int j = 1; j < i; ++j) c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
      }
      return c;
    }();
    return table[n][k];
  }

  static int popcount(std::uint32_t v) { return __builtin_popcount(v); }
  static int countr_zero(std::uint32_t v) { return __builtin_ctz(v); }

 private:
  int n_;
  int d_;
  std::vector<std::size_t> offset_;
};

// Parity character chi_S(x) evaluated on a point code.
// Point-code convention: bit i-1 of the code is 1 iff x_i = -1, so code 0
// is the all-(+1) point.
inline int chi(std::uint32_t subset, std::uint32_t point) {
  return (__builtin_popcount(subset & point) & 1) ? -1 : 1;
}

}  // namespace ptf

#endif  // PTF_SUBSET_INDEXER_HPP_
