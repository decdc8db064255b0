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
#include <vector>

#include "qnt/bitstring.h"

namespace qnt {

enum class GateType : uint8_t {
    X,
    Y,
    Z,
    H,
    S,
    SDG,
    T,
    TDG,
    RX,
    RY,
    RZ,
    CP,
    CX,
    CZ,
    SWAP,
    CCX,
    MCX,
    MEASURE,
};

/// Lower-case OpenQASM mnemonic ("cx", "rz", "mcx", ...).
std::string_view gate_name(GateType type);

/// Inverse of gate_name; nullopt for names outside the supported subset.
std::optional<GateType> gate_type_from_name(std::string_view name);

bool gate_has_angle(GateType type);

/// Fixed arity of a gate type, or nullopt for MCX (arity = controls + 1).
std::optional<size_t> fixed_arity(GateType type);

/// One operation. For controlled kinds `qubits` lists controls first and the
/// target last. `clbit` is set only for MEASURE.
struct Gate {
    GateType type = GateType::X;
    double theta = 0.0;
    uint32_t num_controls = 0;  // MCX only
    std::vector<uint32_t> qubits;
    std::optional<uint32_t> clbit;

    size_t arity() const noexcept {
        return qubits.size();
    }
    bool operator==(const Gate &) const = default;

    static Gate single(GateType type, uint32_t q, double theta = 0.0);
    static Gate two(GateType type, uint32_t a, uint32_t b, double theta = 0.0);
    static Gate ccx(uint32_t c0, uint32_t c1, uint32_t target);
    static Gate mcx(std::vector<uint32_t> controls, uint32_t target);
    static Gate measure(uint32_t q, uint32_t c);
};

/// A quantum program: gate list over `num_qubits` qubits plus the classical
/// readout register.
///
/// The last `num_ancillas` qubits are work qubits that are not part of the
/// program input (bind_input never touches them). They are serialized as a
/// second register named `anc`.
struct Circuit {
    std::string name;
    std::string qreg_name = "q";
    std::string creg_name = "c";
    uint32_t num_qubits = 0;
    uint32_t num_clbits = 0;
    uint32_t num_ancillas = 0;
    std::vector<Gate> gates;

    uint32_t num_input_qubits() const noexcept {
        return num_qubits - num_ancillas;
    }

    /// Throws InvalidCircuit / IndexOutOfRange when a structural invariant is
    /// violated (arity, distinct qubits, terminal measurement, single writer
    /// per classical bit).
    void validate() const;

    bool operator==(const Circuit &) const = default;
};

struct CircuitStats {
    uint32_t num_qubits = 0;
    size_t num_gates = 0;
    size_t depth = 0;
    bool operator==(const CircuitStats &) const = default;
};

/// Gate count and depth, both excluding measurements.
CircuitStats circuit_stats(const Circuit &c);

/// Prepends an X on every input qubit whose bit in `input` is 1.
/// `input` must have num_input_qubits() characters (LengthMismatch otherwise).
Circuit bind_input(const Circuit &c, const BitString &input);

/// Appends a measurement of qubit i into classical bit i for every input
/// qubit, growing the classical register if needed.
void measure_all(Circuit &c);

/// Reference circuits used throughout the toolkit and its tests.
namespace circuits {
/// H q0; CX q0,q1; CX q1,q2; ... followed by measurement of every qubit.
Circuit ghz(uint32_t num_qubits = 3);
/// H q0; CX q0,q1; measure both.
Circuit bell();
/// Textbook QFT (with final swaps) on `num_qubits` qubits, measured.
Circuit qft(uint32_t num_qubits);
/// Three-qubit toy "expression evaluation" program: computes q2 ^= q0 & q1,
/// q1 ^= q0, and adds a small rotation on q0 so outputs are not pure basis
/// states.
Circuit expression3();
}  // namespace circuits

}  // namespace qnt
