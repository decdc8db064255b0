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

#include "qnt/oracle.h"

#include <gtest/gtest.h>

#include <cmath>

#include "qnt/datagen.h"
#include "qnt/errors.h"

namespace qnt {

namespace {

Distribution dist(std::initializer_list<std::pair<const char *, double>> items) {
    Distribution d;
    for (auto [s, p] : items) {
        d[BitString(s)] = p;
    }
    return d;
}

FilteredOutput observed(std::initializer_list<std::pair<const char *, double>> items) {
    FilteredOutput f;
    f.probabilities = dist(items);
    return f;
}

/// Pearson statistic computed by hand for the given (observed, expected) pairs.
double pearson(std::initializer_list<std::pair<double, double>> cells) {
    double s = 0;
    for (auto [o, e] : cells) {
        s += (o - e) * (o - e) / e;
    }
    return s;
}

}  // namespace

TEST(oracle, uof_flags_unexpected_states_above_floor) {
    OracleConfig cfg;
    Distribution spec = dist({{"000", 0.5}, {"111", 0.5}});
    EXPECT_FALSE(assess_uof(spec, observed({{"000", 0.49}, {"111", 0.49}, {"010", 0.019}}), cfg).fail);
    UofResult r = assess_uof(spec, observed({{"000", 0.49}, {"111", 0.47}, {"010", 0.04}}), cfg);
    EXPECT_TRUE(r.fail);
    EXPECT_EQ(r.offending_states, std::vector<BitString>{BitString("010")});
}

TEST(oracle, wodf_passes_exact_match) {
    OracleConfig cfg;
    WodfResult r = assess_wodf(dist({{"0", 0.5}, {"1", 0.5}}), observed({{"0", 0.5}, {"1", 0.5}}), 1000, cfg);
    EXPECT_FALSE(r.fail);
    ASSERT_TRUE(r.p_value.has_value());
    EXPECT_NEAR(*r.p_value, 1.0, 1e-12);
}

TEST(oracle, wodf_statistic_matches_hand_computation) {
    OracleConfig cfg;
    // Spec support {00, 11}; observed 600 / 380 / 20 other over 1000 shots.
    // The "other" cell expects 0 and is pooled into the tied cell that sorts
    // first, "00".
    WodfResult r = assess_wodf(dist({{"00", 0.5}, {"11", 0.5}}),
                               observed({{"00", 0.6}, {"11", 0.38}, {"01", 0.02}}), 1000, cfg);
    double want = pearson({{620, 500}, {380, 500}});
    EXPECT_NEAR(r.statistic, want, 1e-9);
    EXPECT_EQ(r.df, 1);
    EXPECT_TRUE(r.fail);
}

TEST(oracle, wodf_pools_low_expectation_cells) {
    OracleConfig cfg;
    // 0.002 * 1000 = 2 expected < 5, pooled with "other" (0 expected), then
    // with the next smallest cell.
    Distribution spec = dist({{"00", 0.498}, {"01", 0.002}, {"11", 0.5}});
    WodfResult r = assess_wodf(spec, observed({{"00", 0.5}, {"01", 0.003}, {"11", 0.497}}), 1000, cfg);
    double want = pearson({{500 + 3, 500}, {497, 500}});
    EXPECT_EQ(r.df, 1);
    EXPECT_NEAR(r.statistic, want, 1e-9);
}

TEST(oracle, wodf_single_category_has_no_p_value) {
    OracleConfig cfg;
    WodfResult r = assess_wodf(dist({{"1", 1.0}}), observed({{"1", 1.0}}), 1024, cfg);
    EXPECT_FALSE(r.fail);
    EXPECT_FALSE(r.p_value.has_value());
}

TEST(oracle, wodf_argument_checks) {
    OracleConfig cfg;
    EXPECT_THROW(assess_wodf({}, observed({{"1", 1.0}}), 10, cfg), ValidationError);
    EXPECT_THROW(assess_wodf(dist({{"1", 1.0}}), observed({{"1", 1.0}}), 0, cfg), ValidationError);
    cfg.alpha = 1.0;
    EXPECT_THROW(cfg.validate(), ValidationError);
}

TEST(oracle, ideal_ghz_false_alarm_rate) {
    Circuit c = circuits::ghz(3);
    std::vector<BitString> inputs;
    for (uint64_t v = 0; v < 8; v++) {
        inputs.push_back(BitString::from_index(v, 3));
    }
    ProgramSpec spec = build_program_spec(c, inputs);
    NoiseModel zero;
    zero.name = "ideal";
    OracleConfig cfg;
    size_t alarms = 0, total = 0;
    for (uint64_t seed = 0; seed < 50; seed++) {
        ExecutionResults r = execute_inputs(c, inputs, zero, 1024, seed);
        std::map<BitString, FilteredOutput> obs;
        for (const auto &rec : r.records) {
            obs[rec.input] = unfiltered(rec.output);
        }
        for (const Verdict &v : assess(spec, obs, 1024, cfg)) {
            EXPECT_FALSE(v.uof_fail);
            alarms += v.wodf_fail;
            total++;
        }
    }
    EXPECT_LE(static_cast<double>(alarms) / static_cast<double>(total), 0.03);
}

TEST(oracle, assess_requires_spec_inputs) {
    ProgramSpec spec;
    spec.circuit_id = "x";
    spec.per_input[BitString("0")] = dist({{"0", 1.0}});
    std::map<BitString, FilteredOutput> obs{{BitString("1"), observed({{"0", 1.0}})}};
    EXPECT_THROW(assess(spec, obs, 10, OracleConfig{}), MissingSpecInput);
}

TEST(oracle, score_and_outcomes) {
    Verdict pass{BitString("0"), false, false, std::nullopt, {}};
    Verdict fail{BitString("1"), true, false, std::nullopt, {}};
    EXPECT_DOUBLE_EQ(score_percent({{pass, fail}, {fail, fail}}), 75.0);
    EXPECT_THROW(score_percent({}), EmptyList);
    EXPECT_EQ(classify_outcome(true, true), Outcome::TP);
    EXPECT_EQ(classify_outcome(false, true), Outcome::FP);
    EXPECT_EQ(classify_outcome(true, false), Outcome::FN);
    EXPECT_EQ(classify_outcome(false, false), Outcome::TN);
    EXPECT_EQ(outcome_name(Outcome::FN), "FN");
}

TEST(oracle, verdict_json_round_trip) {
    Verdict a{BitString("01"), true, false, 0.5, {BitString("10")}};
    Verdict b{BitString("11"), false, true, std::nullopt, {}};
    std::vector<Verdict> v{a, b};
    EXPECT_EQ(parse_verdicts(verdicts_to_json(v)), v);
}

}  // namespace qnt
