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

#include "qnt/features.h"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "qnt/errors.h"

namespace qnt {

namespace {

OutputDistribution counts_of(std::initializer_list<std::pair<const char *, uint64_t>> items) {
    OutputDistribution d;
    for (auto [s, n] : items) {
        d.counts[BitString(s)] = n;
        d.shots += n;
    }
    return d;
}

}  // namespace

TEST(features, ghz_example_values) {
    // Noisy GHZ-3 observed on hardware: 000 at 0.47, 001 at 0.013.
    EXPECT_NEAR(odr(0.47), 0.47 / 0.53, 1e-15);
    EXPECT_NEAR(odr(0.47), 0.9, 0.02);
    EXPECT_NEAR(odr(0.013), 0.013 / 0.987, 1e-15);
    EXPECT_NEAR(odr(0.013), 0.013, 0.0002);
    EXPECT_DOUBLE_EQ(pof(0.476), 1.0 - 0.476);
}

TEST(features, pos_is_relative_frequency) {
    OutputDistribution d = counts_of({{"000", 476}, {"001", 13}, {"111", 511}});
    EXPECT_DOUBLE_EQ(pos(d, BitString("000")), 0.476);
    EXPECT_DOUBLE_EQ(pos(d, BitString("010")), 0.0);
}

TEST(features, certain_state_hits_sentinel) {
    EXPECT_EQ(odr(1.0), kOddsSentinel);
    EXPECT_EQ(odr(1.0 - 1e-9), kOddsSentinel);
    EXPECT_EQ(features_from_pos(1.0), (FeatureVector{1.0, kOddsSentinel, 0.0}));
}

TEST(features, zero_shots_rejected) {
    OutputDistribution empty;
    EXPECT_THROW(pos(empty, BitString("0")), ValidationError);
    EXPECT_THROW(featurize_result(empty), ValidationError);
}

TEST(features, featurize_covers_observed_states_only) {
    auto f = featurize_result(counts_of({{"00", 3}, {"11", 1}}));
    ASSERT_EQ(f.size(), 2u);
    EXPECT_DOUBLE_EQ(f.at(BitString("00")).pos, 0.75);
    EXPECT_DOUBLE_EQ(f.at(BitString("00")).odr, 3.0);
}

TEST(features, random_count_map_properties) {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 2000; trial++) {
        OutputDistribution d;
        size_t states = 1 + rng() % 16;
        for (size_t s = 0; s < states; s++) {
            uint64_t n = 1 + rng() % 500;
            d.counts[BitString::from_index(s, 4)] = n;
            d.shots += n;
        }
        double total = 0;
        for (const auto &[state, f] : featurize_result(d)) {
            total += f.pos;
            ASSERT_EQ(f.pos + f.pof, 1.0);
            if (f.pos < 1.0) {
                ASSERT_NEAR(f.odr, f.pos / (1.0 - f.pos), 1e-12 * std::max(1.0, f.odr));
            }
            ASSERT_GE(f.odr, f.pos);
        }
        ASSERT_NEAR(total, 1.0, 1e-12);
    }
}

TEST(features, odr_is_monotone) {
    double prev = -1;
    for (int i = 0; i <= 1000; i++) {
        double v = odr(i / 1000.0);
        ASSERT_GT(v, prev);
        prev = v;
    }
}

}  // namespace qnt
