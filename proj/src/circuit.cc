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

#include "qnt/circuit.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "qnt/errors.h"

namespace qnt {

namespace {

struct GateInfo {
    GateType type;
    std::string_view name;
    size_t arity;  // 0 = variable (MCX)
    bool angle;
};

constexpr std::array<GateInfo, 18> kGateTable{{
    {GateType::X, "x", 1, false},
    {GateType::Y, "y", 1, false},
    {GateType::Z, "z", 1, false},
    {GateType::H, "h", 1, false},
    {GateType::S, "s", 1, false},
    {GateType::SDG, "sdg", 1, false},
    {GateType::T, "t", 1, false},
    {GateType::TDG, "tdg", 1, false},
    {GateType::RX, "rx", 1, true},
    {GateType::RY, "ry", 1, true},
    {GateType::RZ, "rz", 1, true},
    {GateType::CP, "cp", 2, true},
    {GateType::CX, "cx", 2, false},
    {GateType::CZ, "cz", 2, false},
    {GateType::SWAP, "swap", 2, false},
    {GateType::CCX, "ccx", 3, false},
    {GateType::MCX, "mcx", 0, false},
    {GateType::MEASURE, "measure", 1, false},
}};

const GateInfo &info(GateType type) {
    return kGateTable[static_cast<size_t>(type)];
}

}  // namespace

std::string_view gate_name(GateType type) {
    return info(type).name;
}

std::optional<GateType> gate_type_from_name(std::string_view name) {
    for (const auto &g : kGateTable) {
        if (g.name == name) {
            return g.type;
        }
    }
    return std::nullopt;
}

bool gate_has_angle(GateType type) {
    return info(type).angle;
}

std::optional<size_t> fixed_arity(GateType type) {
    size_t a = info(type).arity;
    if (a == 0) {
        return std::nullopt;
    }
    return a;
}

Gate Gate::single(GateType type, uint32_t q, double theta) {
    return Gate{type, theta, 0, {q}, std::nullopt};
}

Gate Gate::two(GateType type, uint32_t a, uint32_t b, double theta) {
    return Gate{type, theta, 0, {a, b}, std::nullopt};
}

Gate Gate::ccx(uint32_t c0, uint32_t c1, uint32_t target) {
    return Gate{GateType::CCX, 0.0, 0, {c0, c1, target}, std::nullopt};
}

Gate Gate::mcx(std::vector<uint32_t> controls, uint32_t target) {
    Gate g;
    g.type = GateType::MCX;
    g.num_controls = static_cast<uint32_t>(controls.size());
    g.qubits = std::move(controls);
    g.qubits.push_back(target);
    return g;
}

Gate Gate::measure(uint32_t q, uint32_t c) {
    return Gate{GateType::MEASURE, 0.0, 0, {q}, c};
}

void Circuit::validate() const {
    if (num_qubits == 0) {
        throw InvalidCircuit("circuit '" + name + "' has no qubits");
    }
    if (num_ancillas >= num_qubits) {
        throw InvalidCircuit("circuit '" + name + "' has no input qubits");
    }
    std::vector<bool> measured(num_qubits, false);
    std::vector<bool> written(num_clbits, false);
    for (size_t k = 0; k < gates.size(); k++) {
        const Gate &g = gates[k];
        std::string where = "gate #" + std::to_string(k) + " (" + std::string(gate_name(g.type)) + ")";
        if (auto a = fixed_arity(g.type)) {
            if (g.qubits.size() != *a) {
                throw InvalidCircuit(where + ": expected " + std::to_string(*a) + " qubit(s), got " +
                                     std::to_string(g.qubits.size()));
            }
        } else {
            if (g.num_controls < 1 || g.qubits.size() != g.num_controls + 1) {
                throw InvalidCircuit(where + ": mcx needs num_controls >= 1 and num_controls + 1 qubits");
            }
        }
        if (gate_has_angle(g.type) && !std::isfinite(g.theta)) {
            throw InvalidCircuit(where + ": non-finite angle");
        }
        for (size_t i = 0; i < g.qubits.size(); i++) {
            if (g.qubits[i] >= num_qubits) {
                throw IndexOutOfRange(where + ": qubit " + std::to_string(g.qubits[i]) + " >= " +
                                      std::to_string(num_qubits));
            }
            for (size_t j = 0; j < i; j++) {
                if (g.qubits[i] == g.qubits[j]) {
                    throw InvalidCircuit(where + ": repeated qubit " + std::to_string(g.qubits[i]));
                }
            }
        }
        if (g.type == GateType::MEASURE) {
            if (!g.clbit.has_value()) {
                throw InvalidCircuit(where + ": measurement without classical bit");
            }
            if (*g.clbit >= num_clbits) {
                throw IndexOutOfRange(where + ": classical bit " + std::to_string(*g.clbit) + " >= " +
                                      std::to_string(num_clbits));
            }
            if (written[*g.clbit]) {
                throw InvalidCircuit(where + ": classical bit " + std::to_string(*g.clbit) + " written twice");
            }
            written[*g.clbit] = true;
            measured[g.qubits[0]] = true;
        } else {
            if (g.clbit.has_value()) {
                throw InvalidCircuit(where + ": only measurements carry a classical bit");
            }
            for (uint32_t q : g.qubits) {
                if (measured[q]) {
                    throw InvalidCircuit(where + ": qubit " + std::to_string(q) + " used after measurement");
                }
            }
        }
    }
}

CircuitStats circuit_stats(const Circuit &c) {
    CircuitStats s;
    s.num_qubits = c.num_qubits;
    std::vector<size_t> level(c.num_qubits, 0);
    for (const Gate &g : c.gates) {
        if (g.type == GateType::MEASURE) {
            continue;
        }
        s.num_gates++;
        size_t top = 0;
        for (uint32_t q : g.qubits) {
            top = std::max(top, level[q]);
        }
        for (uint32_t q : g.qubits) {
            level[q] = top + 1;
        }
        s.depth = std::max(s.depth, top + 1);
    }
    return s;
}

Circuit bind_input(const Circuit &c, const BitString &input) {
    if (input.size() != c.num_input_qubits()) {
        throw LengthMismatch("input '" + input.str() + "' has " + std::to_string(input.size()) +
                             " bits, circuit '" + c.name + "' expects " + std::to_string(c.num_input_qubits()));
    }
    Circuit out = c;
    std::vector<Gate> prologue;
    for (uint32_t q = 0; q < c.num_input_qubits(); q++) {
        if (input.bit(q)) {
            prologue.push_back(Gate::single(GateType::X, q));
        }
    }
    out.gates.insert(out.gates.begin(), prologue.begin(), prologue.end());
    return out;
}

void measure_all(Circuit &c) {
    c.num_clbits = std::max(c.num_clbits, c.num_input_qubits());
    for (uint32_t q = 0; q < c.num_input_qubits(); q++) {
        c.gates.push_back(Gate::measure(q, q));
    }
}

namespace circuits {

Circuit ghz(uint32_t num_qubits) {
    Circuit c;
    c.name = "ghz" + std::to_string(num_qubits);
    c.num_qubits = num_qubits;
    c.gates.push_back(Gate::single(GateType::H, 0));
    for (uint32_t q = 0; q + 1 < num_qubits; q++) {
        c.gates.push_back(Gate::two(GateType::CX, q, q + 1));
    }
    measure_all(c);
    return c;
}

Circuit bell() {
    Circuit c = ghz(2);
    c.name = "bell";
    return c;
}

Circuit qft(uint32_t num_qubits) {
    Circuit c;
    c.name = "qft" + std::to_string(num_qubits);
    c.num_qubits = num_qubits;
    for (uint32_t j = num_qubits; j-- > 0;) {
        c.gates.push_back(Gate::single(GateType::H, j));
        for (uint32_t k = j; k-- > 0;) {
            double theta = std::numbers::pi / static_cast<double>(uint64_t{1} << (j - k));
            c.gates.push_back(Gate::two(GateType::CP, k, j, theta));
        }
    }
    for (uint32_t q = 0; q < num_qubits / 2; q++) {
        c.gates.push_back(Gate::two(GateType::SWAP, q, num_qubits - 1 - q));
    }
    measure_all(c);
    return c;
}

Circuit expression3() {
    Circuit c;
    c.name = "expr3";
    c.num_qubits = 3;
    c.gates.push_back(Gate::ccx(0, 1, 2));
    c.gates.push_back(Gate::two(GateType::CX, 0, 1));
    c.gates.push_back(Gate::single(GateType::RY, 0, std::numbers::pi / 3.0));
    measure_all(c);
    return c;
}

}  // namespace circuits

}  // namespace qnt
