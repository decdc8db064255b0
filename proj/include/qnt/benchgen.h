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

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qnt/bitstring.h"
#include "qnt/circuit.h"

namespace qnt {

/// Gates eligible for random circuits by default: everything except MCX and
/// MEASURE.
std::vector<GateType> default_gate_pool();

struct GeneratorConfig {
    size_t count = 20;
    uint32_t num_qubits = 3;
    size_t depth = 4;
    std::vector<GateType> gate_pool = default_gate_pool();
    std::optional<double> min_diversity;
    std::vector<BitString> probe_inputs;  ///< empty means the all-zero input
    uint64_t seed = 0;

    void validate() const;
};

/// Candidate `index` of the seeded generator. Each of `depth` layers
/// partitions the qubits at random and places one pool gate of matching
/// arity on every block; angles are uniform in [0, 2*pi). All qubits are
/// measured at the end.
Circuit random_circuit(const GeneratorConfig &cfg, size_t index);

struct Suite {
    std::vector<Circuit> circuits;
    std::vector<size_t> candidate_indices;
    std::vector<double> diversity;  ///< final score of each circuit in the suite
    size_t attempts = 0;
    bool diversity_unreachable = false;  ///< attempt cap hit before `count` circuits
};

/// Greedy suite construction. With `min_diversity` set, a candidate is kept
/// only if its mean JSD to the circuits kept so far is at least the bound.
/// Stops after 20 * count candidates.
Suite gen_suite(const GeneratorConfig &cfg);

/// Diversity of every circuit of `suite` on `probe_inputs` (all-zero input if
/// empty). Needs at least two circuits.
std::vector<double> suite_diversity(const std::vector<Circuit> &suite, const std::vector<BitString> &probe_inputs);

enum class FaultVariant { BIT_FLIP, PHASE_FLIP };

std::string_view fault_variant_name(FaultVariant v);

struct FaultSpec {
    BitString trigger_input;
    uint32_t target_qubit = 0;
    FaultVariant variant = FaultVariant::BIT_FLIP;

    bool operator==(const FaultSpec &) const = default;
};

/// Seeds a fault that fires only when the bound input equals the trigger.
///
/// One ancilla qubit is appended. Right after input preparation the ancilla
/// is set iff the input register matches `trigger_input` (X mask, MCX over
/// all input qubits, X mask). BIT_FLIP then applies CX(ancilla, target);
/// PHASE_FLIP applies CZ(ancilla, target) right after the first original
/// gate acting on the target, or at the start if there is none.
Circuit inject_fault(const Circuit &c, const FaultSpec &f);

/// `n` seeded faults with distinct (trigger, target) pairs. Only faults whose
/// ideal output on the trigger input is at Hellinger distance at least
/// `min_hellinger` from the original are accepted. Throws
/// NotEnoughCombinations when fewer than `n` qualify.
std::vector<std::pair<Circuit, FaultSpec>> faulty_versions(const Circuit &c, size_t n, uint64_t seed,
                                                           double min_hellinger = 0.1);

std::string fault_spec_to_json(const FaultSpec &f);
FaultSpec parse_fault_spec(std::string_view json_text);

}  // namespace qnt
