// Copyright 2026 The QNT Authors
//
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

#include "qnt/rng.h"

#include <gtest/gtest.h>

#include <set>

namespace qnt {

TEST(rng, derive_seed_is_pure_and_order_sensitive) {
    EXPECT_EQ(derive_seed(42, {1, 2}), derive_seed(42, {1, 2}));
    EXPECT_NE(derive_seed(42, {1, 2}), derive_seed(42, {2, 1}));
    EXPECT_NE(derive_seed(42, {1}), derive_seed(43, {1}));
}

TEST(rng, stable_hash_fnv1a) {
    EXPECT_EQ(stable_hash(""), 0xcbf29ce484222325ULL);
    EXPECT_EQ(stable_hash("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(rng, streams_are_distinct_and_reproducible) {
    std::set<uint64_t> first;
    for (uint64_t s = 0; s < 1000; s++) {
        auto a = make_stream(9, s);
        auto b = make_stream(9, s);
        uint64_t x = a();
        EXPECT_EQ(x, b());
        first.insert(x);
    }
    EXPECT_EQ(first.size(), 1000u);
}

TEST(rng, uniform01_in_unit_interval) {
    auto r = make_stream(1, 1);
    for (int i = 0; i < 10000; i++) {
        double u = uniform01(r);
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
    }
}

}  // namespace qnt
