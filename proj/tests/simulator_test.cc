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

#include "qnt/simulator.h"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <iterator>
#include <random>

#include "dense_oracle.h"
#include "qnt/errors.h"

namespace qnt {
namespace {

double max_abs_diff(const Distribution &a, const Distribution &b) {
    double worst = 0.0;
    for (const auto &[k, v] : a) {
        auto it = b.find(k);
        worst = std::max(worst, std::abs(v - (it == b.end() ? 0.0 : it->second)));
    }
    for (const auto &[k, v] : b) {
        if (!a.contains(k)) {
            worst = std::max(worst, v);
        }
    }
    return worst;
}

NoiseModel zero_noise() {
    NoiseModel nm;
    nm.name = "ideal";
    return nm;
}

}  // namespace

TEST(simulator, ghz_ideal) {
    Distribution d = run_ideal(circuits::ghz(3));
    ASSERT_EQ(d.size(), 2u);
    EXPECT_NEAR(d.at(BitString("000")), 0.5, 1e-12);
    EXPECT_NEAR(d.at(BitString("111")), 0.5, 1e-12);
}

TEST(simulator, matches_dense_oracle_on_random_circuits) {
    std::mt19937_64 rng(2026);
    for (int i = 0; i < 150; i++) {
        uint32_t n = 1 + i % 4;
        Circuit c = qnt_test::random_test_circuit(rng, n, 12);
        EXPECT_LT(max_abs_diff(run_ideal(c), qnt_test::dense_distribution(c)), 1e-10) << i;
    }
}

TEST(simulator, statevector_norm_is_preserved) {
    std::mt19937_64 rng(5);
    Circuit c = qnt_test::random_test_circuit(rng, 4, 40);
    StateVector sv(4);
    for (const Gate &g : c.gates) {
        if (g.type != GateType::MEASURE) {
            sv.apply(g);
        }
    }
    EXPECT_NEAR(sv.norm(), 1.0, 1e-12);
}

TEST(simulator, partial_measurement_marginalizes) {
    Circuit c;
    c.num_qubits = 2;
    c.num_clbits = 1;
    c.gates = {Gate::single(GateType::H, 0), Gate::single(GateType::X, 1), Gate::measure(1, 0)};
    Distribution d = run_ideal(c);
    ASSERT_EQ(d.size(), 1u);
    EXPECT_NEAR(d.at(BitString("1")), 1.0, 1e-12);
}

TEST(simulator, measure_into_permuted_clbits) {
    Circuit c;
    c.num_qubits = 2;
    c.num_clbits = 2;
    c.gates = {Gate::single(GateType::X, 0), Gate::measure(0, 1), Gate::measure(1, 0)};
    EXPECT_NEAR(run_ideal(c).at(BitString("10")), 1.0, 1e-12);
}

TEST(simulator, qubit_cap) {
    Circuit c = circuits::ghz(5);
    RunOptions opts;
    opts.qubit_cap = 4;
    EXPECT_THROW(run_ideal(c, opts), CapExceeded);
    EXPECT_THROW(run_noisy(c, zero_noise(), 10, 1, opts), CapExceeded);
}

TEST(simulator, zero_shots_rejected) {
    EXPECT_THROW(run_noisy(circuits::ghz(3), zero_noise(), 0, 1), ValidationError);
}

TEST(simulator, noisy_counts_sum_to_shots) {
    NoiseModel nm = zero_noise();
    nm.one_qubit_depolarizing = 0.05;
    nm.two_qubit_depolarizing = 0.1;
    nm.readout = {0.03, 0.04};
    OutputDistribution out = run_noisy(circuits::qft(3), nm, 5000, 11);
    uint64_t total = 0;
    for (const auto &[k, n] : out.counts) {
        total += n;
    }
    EXPECT_EQ(total, 5000u);
    EXPECT_EQ(out.shots, 5000u);
}

TEST(simulator, deterministic_across_thread_counts) {
    NoiseModel nm = zero_noise();
    nm.one_qubit_depolarizing = 0.01;
    nm.two_qubit_depolarizing = 0.05;
    nm.readout = {0.02, 0.02};
    Circuit c = circuits::qft(4);
    RunOptions one, many;
    one.threads = 1;
    many.threads = 8;
    EXPECT_EQ(run_noisy(c, nm, 4096, 99, one), run_noisy(c, nm, 4096, 99, many));
    EXPECT_EQ(sample_ideal(c, 4096, 99, one), sample_ideal(c, 4096, 99, many));
    EXPECT_NE(run_noisy(c, nm, 4096, 99, one), run_noisy(c, nm, 4096, 100, one));
}

TEST(simulator, noiseless_run_close_to_ideal) {
    Circuit c = circuits::ghz(3);
    OutputDistribution out = run_noisy(c, zero_noise(), 100000, 3);
    EXPECT_EQ(out.counts.size(), 2u);
    EXPECT_NEAR(out.probability(BitString("000")), 0.5, 0.01);
}

// Statistical checks use 1e5 shots and a 6-sigma band.
TEST(simulator, one_qubit_depolarizing_rate) {
    Circuit c;
    c.num_qubits = 1;
    c.gates = {Gate::single(GateType::X, 0)};
    measure_all(c);
    NoiseModel nm = zero_noise();
    nm.one_qubit_depolarizing = 0.3;
    OutputDistribution out = run_noisy(c, nm, 100000, 17);
    double expect = 0.3 * 2.0 / 3.0;  // X or Y undo the flip
    EXPECT_NEAR(out.probability(BitString("0")), expect, 6 * std::sqrt(expect * (1 - expect) / 1e5));
}

TEST(simulator, two_qubit_depolarizing_rate) {
    Circuit c;
    c.num_qubits = 2;
    c.gates = {Gate::two(GateType::CX, 0, 1)};
    measure_all(c);
    NoiseModel nm = zero_noise();
    nm.two_qubit_depolarizing = 0.15;
    OutputDistribution out = run_noisy(c, nm, 100000, 18);
    double expect = 0.85 + 0.15 * 3.0 / 15.0;  // IZ, ZI, ZZ leave |00>
    EXPECT_NEAR(out.probability(BitString("00")), expect, 6 * std::sqrt(expect * (1 - expect) / 1e5));
}

TEST(simulator, readout_error_rates) {
    Circuit c;
    c.num_qubits = 2;
    c.gates = {Gate::single(GateType::X, 1)};
    measure_all(c);
    NoiseModel nm = zero_noise();
    nm.readout = {0.1, 0.0};
    nm.per_qubit_readout_overrides[1] = {0.0, 0.25};
    OutputDistribution out = run_noisy(c, nm, 100000, 19);
    double sigma = 6 * std::sqrt(0.25 / 1e5);
    EXPECT_NEAR(out.probability(BitString("10")), 0.9 * 0.75, sigma);
    EXPECT_NEAR(out.probability(BitString("11")), 0.1 * 0.75, sigma);
    EXPECT_NEAR(out.probability(BitString("00")), 0.9 * 0.25, sigma);
}

TEST(simulator, per_gate_override_wins) {
    NoiseModel nm = zero_noise();
    nm.one_qubit_depolarizing = 0.1;
    nm.per_gate_overrides["h"] = 0.4;
    EXPECT_DOUBLE_EQ(nm.gate_error(Gate::single(GateType::H, 0)), 0.4);
    EXPECT_DOUBLE_EQ(nm.gate_error(Gate::single(GateType::X, 0)), 0.1);
}

TEST(simulator, noise_model_json_round_trip) {
    NoiseModel nm = zero_noise();
    nm.name = "custom";
    nm.one_qubit_depolarizing = 0.001;
    nm.two_qubit_depolarizing = 0.01;
    nm.per_gate_overrides["cx"] = 0.03;
    nm.readout = {0.01, 0.02};
    nm.per_qubit_readout_overrides[2] = {0.05, 0.06};
    EXPECT_EQ(parse_noise_model(noise_model_to_json(nm)), nm);
}

TEST(simulator, noise_model_validation) {
    EXPECT_THROW(parse_noise_model("{"), SyntaxError);
    EXPECT_THROW(parse_noise_model("[]"), InvalidNoiseModel);
    const std::string base =
        R"({"name":"x","one_qubit_depolarizing":0.8,"two_qubit_depolarizing":0.0,"readout":{"p1_given_0":0,"p0_given_1":0}})";
    EXPECT_THROW(parse_noise_model(base).validate(), InvalidNoiseModel);
    EXPECT_THROW(parse_noise_model(
                     R"({"name":"x","one_qubit_depolarizing":0,"two_qubit_depolarizing":0,"readout":{"p1_given_0":0,"p0_given_1":0},"per_gate_overrides":{"u3":0.1}})")
                     .validate(),
                 InvalidNoiseModel);
    EXPECT_THROW(parse_noise_model(
                     R"({"name":"x","one_qubit_depolarizing":0,"two_qubit_depolarizing":0,"readout":{"p1_given_0":0}})"),
                 InvalidNoiseModel);
}

TEST(simulator, shipped_noise_models_parse) {
    for (const char *name : {"moderate", "ideal"}) {
        std::ifstream f(std::string(QNT_SOURCE_DIR) + "/noise/" + name + ".json");
        ASSERT_TRUE(f.good()) << name;
        std::string text((std::istreambuf_iterator<char>(f)), std::istreambuf_iterator<char>());
        EXPECT_NO_THROW(parse_noise_model(text).validate()) << name;
    }
}

}  // namespace qnt
