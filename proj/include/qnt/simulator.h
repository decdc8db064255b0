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

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "qnt/bitstring.h"
#include "qnt/circuit.h"

namespace qnt {

inline constexpr uint32_t kDefaultQubitCap = 16;
inline constexpr uint64_t kDefaultShots = 1024;

/// Dense state of `num_qubits` qubits. Basis index bit k is qubit k.
class StateVector {
   public:
    explicit StateVector(uint32_t num_qubits);

    uint32_t num_qubits() const noexcept {
        return num_qubits_;
    }
    const std::vector<std::complex<double>> &amplitudes() const noexcept {
        return amps_;
    }

    /// Applies a unitary gate. MEASURE is rejected (measurement happens at
    /// readout time, see run_ideal / run_noisy).
    void apply(const Gate &g);

    /// Applies X (1), Y (2) or Z (3) to qubit q; 0 is the identity.
    void apply_pauli(uint32_t q, uint32_t which);

    double norm() const;

    /// |amplitude|^2 per basis index.
    std::vector<double> probabilities() const;

   private:
    void apply_1q(uint32_t q, const std::complex<double> (&m)[2][2]);
    void apply_controlled_x(uint64_t control_mask, uint32_t target);
    void apply_phase_on_mask(uint64_t mask, std::complex<double> phase);
    void apply_swap(uint32_t a, uint32_t b);

    uint32_t num_qubits_;
    std::vector<std::complex<double>> amps_;
};

struct ReadoutError {
    double p1_given_0 = 0.0;
    double p0_given_1 = 0.0;
    bool operator==(const ReadoutError &) const = default;
};

/// Parametric noise: depolarizing after every gate plus readout flips.
struct NoiseModel {
    std::string name;
    double one_qubit_depolarizing = 0.0;
    double two_qubit_depolarizing = 0.0;
    std::map<std::string, double> per_gate_overrides;  // keyed by gate_name()
    ReadoutError readout;
    std::map<uint32_t, ReadoutError> per_qubit_readout_overrides;

    /// Throws InvalidNoiseModel on out-of-range probabilities or unknown gate
    /// names. Single-qubit rates are capped at 3/4, multi-qubit at 15/16.
    void validate() const;

    /// Depolarizing probability applied after `g`.
    double gate_error(const Gate &g) const;

    const ReadoutError &readout_for(uint32_t qubit) const;

    bool operator==(const NoiseModel &) const = default;
};

/// Parses the JSON noise model format. Unknown keys are rejected.
NoiseModel parse_noise_model(std::string_view json_text);
std::string noise_model_to_json(const NoiseModel &nm);

/// Counts over classical-register bit strings from one execution batch.
struct OutputDistribution {
    Counts counts;
    uint64_t shots = 0;

    double probability(const BitString &b) const;
    Distribution probabilities() const;
    bool operator==(const OutputDistribution &) const = default;
};

struct RunOptions {
    uint32_t qubit_cap = kDefaultQubitCap;
    /// 0 = worker_count().
    size_t threads = 0;
};

/// Exact readout probabilities of the circuit's classical register.
/// Entries below 1e-12 are omitted.
Distribution run_ideal(const Circuit &c, const RunOptions &opts = {});

/// Multinomial sample of run_ideal. Shot i draws from stream (seed, i).
OutputDistribution sample_ideal(const Circuit &c, uint64_t shots, uint64_t seed, const RunOptions &opts = {});

/// Monte Carlo execution under `nm`: stochastic Pauli trajectories for gate
/// noise and independent classical flips at readout. Shot i draws from
/// stream (seed, i) only, so the result is independent of thread count.
OutputDistribution run_noisy(const Circuit &c, const NoiseModel &nm, uint64_t shots, uint64_t seed,
                             const RunOptions &opts = {});

}  // namespace qnt
