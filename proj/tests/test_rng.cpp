// Copyright 2026 The dplp Authors
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

#include "dplp/rng.hpp"

#include <cstdint>
#include <set>
#include <vector>

#include "gtest/gtest.h"

namespace dplp {
namespace {

TEST(CounterRng, SameSeedSameStream) {
  CounterRng a = CounterRng::seeded(42);
  CounterRng b = CounterRng::seeded(42);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(a.next_u64(), b.next_u64());
  }
}

TEST(CounterRng, DifferentSeedsDiverge) {
  CounterRng a = CounterRng::seeded(1);
  CounterRng b = CounterRng::seeded(2);
  int same = 0;
  for (int i = 0; i < 64; ++i) {
    if (a.next_u64() == b.next_u64()) ++same;
  }
  EXPECT_EQ(same, 0);
}

TEST(CounterRng, SplitIndependentOfParentConsumption) {
  CounterRng parent1 = CounterRng::seeded(7);
  CounterRng parent2 = CounterRng::seeded(7);
  // Consume parent2 heavily before splitting; the child stream must not care.
  for (int i = 0; i < 1000; ++i) parent2.next_u64();
  CounterRng child1 = parent1.split(5);
  CounterRng child2 = parent2.split(5);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(child1.next_u64(), child2.next_u64());
  }
}

TEST(CounterRng, SplitDoesNotAdvanceParent) {
  CounterRng a = CounterRng::seeded(3);
  CounterRng b = CounterRng::seeded(3);
  (void)a.split(1);
  (void)a.split(2);
  EXPECT_EQ(a.next_u64(), b.next_u64());
}

TEST(CounterRng, DistinctTagsGiveDistinctStreams) {
  CounterRng root = CounterRng::seeded(11);
  std::set<std::uint64_t> firsts;
  for (std::uint64_t tag = 0; tag < 256; ++tag) {
    firsts.insert(root.split(tag).next_u64());
  }
  EXPECT_EQ(firsts.size(), 256u);
}

TEST(CounterRng, NestedSplitsReproducible) {
  const std::uint64_t x = CounterRng::seeded(9).split(4).split(2).next_u64();
  const std::uint64_t y = CounterRng::seeded(9).split(4).split(2).next_u64();
  EXPECT_EQ(x, y);
}

TEST(CounterRng, Open01StaysStrictlyInside) {
  CounterRng rng = CounterRng::seeded(123);
  double lo = 1.0;
  double hi = 0.0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.next_open01();
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
    lo = std::min(lo, u);
    hi = std::max(hi, u);
  }
  // The stream should actually explore the interval.
  EXPECT_LT(lo, 1e-3);
  EXPECT_GT(hi, 1.0 - 1e-3);
}

TEST(CounterRng, Open01MeanNearHalf) {
  CounterRng rng = CounterRng::seeded(77);
  double sum = 0.0;
  const int n = 100000;
  for (int i = 0; i < n; ++i) sum += rng.next_open01();
  EXPECT_NEAR(sum / n, 0.5, 0.005);
}

}  // namespace
}  // namespace dplp
