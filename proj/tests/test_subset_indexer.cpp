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

#include "ptf/subset_indexer.hpp"

#include <vector>

#include "doctest.h"

using ptf::SubsetIndexer;

TEST_CASE("graded colex order starts at the empty set") {
  const SubsetIndexer indexer(3, 2);
  CHECK(indexer.index_of(0) == 0);
  CHECK(indexer.subset_of(0) == 0);
}

TEST_CASE("size-1 class in colex order, n=3 d=2") {
  const SubsetIndexer indexer(3, 2);
  CHECK(indexer.index_of(0b001) == 1);
  CHECK(indexer.index_of(0b010) == 2);
  CHECK(indexer.index_of(0b100) == 3);
  CHECK(indexer.index_of(0b011) == 4);
  CHECK(indexer.index_of(0b101) == 5);
  CHECK(indexer.index_of(0b110) == 6);
  CHECK(indexer.size() == 7);
}

TEST_CASE("round trip {1,3}") {
  const SubsetIndexer indexer(3, 2);
  CHECK(indexer.subset_of(indexer.index_of(0b101)) == 0b101);
}

TEST_CASE("index_of and subset_of are mutually inverse") {
  for (int n = 1; n <= 8; ++n) {
    for (int d = 0; d <= n; ++d) {
      const SubsetIndexer indexer(n, d);
      std::size_t expected = 0;
      int last_size = 0;
      std::uint32_t last_mask = 0;
      indexer.for_each([&](std::uint32_t mask) {
        CHECK(indexer.index_of(mask) == expected);
        CHECK(indexer.subset_of(expected) == mask);
        const int size = SubsetIndexer::popcount(mask);
        CHECK(size >= last_size);  // graded
        if (size == last_size && expected > 0) {
          CHECK(mask > last_mask);  // colex within a class
        }
        last_size = size;
        last_mask = mask;
        ++expected;
      });
      CHECK(expected == indexer.size());
    }
  }
}

TEST_CASE("size matches the binomial sum") {
  const SubsetIndexer indexer(10, 2);
  CHECK(indexer.size() == 1 + 10 + 45);
  const SubsetIndexer full(5, 5);
  CHECK(full.size() == 32);
}

TEST_CASE("out-of-range queries raise index errors") {
  const SubsetIndexer indexer(4, 2);
  CHECK_THROWS_AS((void)indexer.index_of(0b0111), ptf::IndexError);
  CHECK_THROWS_AS((void)indexer.index_of(1u << 5), ptf::IndexError);
  CHECK_THROWS_AS((void)indexer.subset_of(indexer.size()), ptf::IndexError);
}

TEST_CASE("dimension and degree limits") {
  CHECK_THROWS_AS(SubsetIndexer(25, 2), ptf::CapacityError);
  CHECK_THROWS_AS(SubsetIndexer(4, 5), ptf::ParamError);
  CHECK_THROWS_AS(SubsetIndexer(4, -1), ptf::ParamError);
}
