// Copyright 2026 The SQAV Authors
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

#include <gtest/gtest.h>

#include <set>

#include "sqav/rng.h"

namespace sqav {
namespace {

TEST(SeededRng, SameSeedSameStream) {
    SeededRng a(42), b(42);
    for (int i = 0; i < 100; i++) {
        EXPECT_EQ(a.next_u64(), b.next_u64());
    }
}

// Frozen values guard against silent changes to the seeding scheme, which
// would break reproducibility of every stored transcript.
TEST(SeededRng, FrozenFirstOutputs) {
    SeededRng r(1);
    EXPECT_EQ(r.next_u64(), 9822250072823399003ull);
    EXPECT_EQ(r.next_u64(), 16467381930425171000ull);
    EXPECT_EQ(SeededRng(1).derive({1, 2, 3}).next_u64(), 3799135306564811472ull);
    EXPECT_NE(SeededRng(2).next_u64(), 9822250072823399003ull);
}

TEST(SeededRng, DeriveDependsOnlyOnSeedAndPath) {
    SeededRng a(7), b(7);
    for (int i = 0; i < 10; i++) {
        a.next_u64();
    }
    EXPECT_EQ(a.derive(3).next_u64(), b.derive(3).next_u64());
    EXPECT_EQ(a.derive({1, 2, 3}).next_u64(), b.derive({1, 2, 3}).next_u64());
    EXPECT_NE(a.derive({1, 2, 3}).next_u64(), a.derive({1, 3, 2}).next_u64());
    EXPECT_NE(a.derive(1).next_u64(), a.derive(2).next_u64());
}

TEST(SeededRng, BelowStaysInRangeAndCoversIt) {
    SeededRng r(5);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; i++) {
        std::uint64_t v = r.below(7);
        ASSERT_LT(v, 7u);
        seen.insert(v);
    }
    EXPECT_EQ(seen.size(), 7u);
}

TEST(SeededRng, UniformInUnitInterval) {
    SeededRng r(9);
    double sum = 0;
    for (int i = 0; i < 10000; i++) {
        double u = r.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    EXPECT_NEAR(sum / 10000, 0.5, 0.015);
}

TEST(SeededRng, GaussianMoments) {
    SeededRng r(11);
    double s = 0, s2 = 0;
    const int n = 20000;
    for (int i = 0; i < n; i++) {
        double g = r.gaussian();
        s += g;
        s2 += g * g;
    }
    EXPECT_NEAR(s / n, 0.0, 0.03);
    EXPECT_NEAR(s2 / n, 1.0, 0.04);
}

}  // namespace
}  // namespace sqav
