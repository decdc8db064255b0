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

#include "qnt/benchgen.h"

#include <algorithm>
#include <cstdio>
#include <map>
#include <numbers>
#include <set>

#include "json.hpp"
#include "qnt/errors.h"
#include "qnt/metrics.h"
#include "qnt/rng.h"
#include "qnt/simulator.h"

namespace qnt {

using json = nlohmann::json;

namespace {

constexpr uint64_t kCircuitStream = 0xC1BC;
constexpr uint64_t kFaultStream = 0xFA17;

std::string candidate_name(size_t index) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rand_%04zu", index);
    return buf;
}

std::vector<BitString> probes_or_zero(const std::vector<BitString> &probes, uint32_t num_qubits) {
    if (!probes.empty()) {
        return probes;
    }
    return {BitString::from_index(0, num_qubits)};
}

std::map<BitString, Distribution> probe_outputs(const Circuit &c, const std::vector<BitString> &probes) {
    std::map<BitString, Distribution> out;
    for (const BitString &p : probes) {
        out[p] = run_ideal(bind_input(c, p));
    }
    return out;
}

}  // namespace

std::vector<GateType> default_gate_pool() {
    std::vector<GateType> pool;
    for (int t = 0; t <= static_cast<int>(GateType::MEASURE); t++) {
        auto g = static_cast<GateType>(t);
        if (g != GateType::MCX && g != GateType::MEASURE) {
            pool.push_back(g);
        }
    }
    return pool;
}

void GeneratorConfig::validate() const {
    if (count < 1) {
        throw ValidationError("generator: count must be at least 1");
    }
    if (depth < 1) {
        throw ValidationError("generator: depth must be at least 1");
    }
    if (num_qubits < 1 || num_qubits > kDefaultQubitCap) {
        throw ValidationError("generator: num_qubits must lie in [1, " + std::to_string(kDefaultQubitCap) + "]");
    }
    if (gate_pool.empty()) {
        throw ValidationError("generator: gate pool is empty");
    }
    bool usable = false;
    for (GateType g : gate_pool) {
        if (g == GateType::MCX || g == GateType::MEASURE) {
            throw ValidationError("generator: gate '" + std::string(gate_name(g)) + "' is not allowed in the pool");
        }
        usable = usable || *fixed_arity(g) <= num_qubits;
    }
    if (!usable) {
        throw ValidationError("generator: no pool gate fits on " + std::to_string(num_qubits) + " qubit(s)");
    }
    if (min_diversity && !(*min_diversity >= 0.0 && *min_diversity <= 1.0)) {
        throw ValidationError("generator: min_diversity must lie in [0, 1]");
    }
    for (const BitString &p : probe_inputs) {
        if (p.size() != num_qubits) {
            throw LengthMismatch("generator: probe input '" + p.str() + "' is not " + std::to_string(num_qubits) +
                                 " bits wide");
        }
    }
}

Circuit random_circuit(const GeneratorConfig &cfg, size_t index) {
    cfg.validate();
    std::map<size_t, std::vector<GateType>> by_arity;
    for (GateType g : cfg.gate_pool) {
        by_arity[*fixed_arity(g)].push_back(g);
    }
    std::mt19937_64 rng = make_stream(derive_seed(cfg.seed, {kCircuitStream}), index);
    Circuit c;
    c.name = candidate_name(index);
    c.num_qubits = cfg.num_qubits;
    std::vector<uint32_t> order(cfg.num_qubits);
    for (size_t layer = 0; layer < cfg.depth; layer++) {
        for (uint32_t q = 0; q < cfg.num_qubits; q++) {
            order[q] = q;
        }
        for (size_t i = order.size(); i > 1; i--) {
            std::swap(order[i - 1], order[uniform_below(rng, i)]);
        }
        size_t next = 0;
        while (next < order.size()) {
            size_t left = order.size() - next;
            std::vector<size_t> arities;
            for (const auto &[a, gates] : by_arity) {
                if (a <= left) {
                    arities.push_back(a);
                }
            }
            if (arities.empty()) {
                break;
            }
            size_t a = arities[uniform_below(rng, arities.size())];
            const std::vector<GateType> &choices = by_arity[a];
            GateType type = choices[uniform_below(rng, choices.size())];
            Gate g;
            g.type = type;
            g.qubits.assign(order.begin() + static_cast<std::ptrdiff_t>(next),
                            order.begin() + static_cast<std::ptrdiff_t>(next + a));
            if (gate_has_angle(type)) {
                g.theta = uniform01(rng) * 2.0 * std::numbers::pi;
            }
            c.gates.push_back(std::move(g));
            next += a;
        }
    }
    measure_all(c);
    c.validate();
    return c;
}

std::vector<double> suite_diversity(const std::vector<Circuit> &suite, const std::vector<BitString> &probe_inputs) {
    if (suite.size() < 2) {
        throw SuiteTooSmall("diversity needs at least two circuits");
    }
    std::vector<BitString> probes = probes_or_zero(probe_inputs, suite.front().num_input_qubits());
    std::vector<std::map<BitString, Distribution>> outputs;
    for (const Circuit &c : suite) {
        outputs.push_back(probe_outputs(c, probes));
    }
    std::vector<double> out;
    for (size_t i = 0; i < suite.size(); i++) {
        out.push_back(diversity_score(i, outputs));
    }
    return out;
}

Suite gen_suite(const GeneratorConfig &cfg) {
    cfg.validate();
    Suite s;
    const bool filtering = cfg.min_diversity && *cfg.min_diversity > 0.0;
    const size_t cap = 20 * cfg.count;
    std::vector<BitString> probes = probes_or_zero(cfg.probe_inputs, cfg.num_qubits);
    std::vector<std::map<BitString, Distribution>> outputs;
    while (s.circuits.size() < cfg.count) {
        if (s.attempts == cap) {
            s.diversity_unreachable = true;
            break;
        }
        size_t index = s.attempts++;
        Circuit c = random_circuit(cfg, index);
        if (filtering) {
            std::map<BitString, Distribution> out = probe_outputs(c, probes);
            if (!outputs.empty()) {
                outputs.push_back(out);
                double score = diversity_score(outputs.size() - 1, outputs);
                outputs.pop_back();
                if (score < *cfg.min_diversity) {
                    continue;
                }
            }
            outputs.push_back(std::move(out));
        }
        s.candidate_indices.push_back(index);
        s.circuits.push_back(std::move(c));
    }
    if (s.circuits.size() >= 2) {
        s.diversity = suite_diversity(s.circuits, cfg.probe_inputs);
    }
    return s;
}

std::string_view fault_variant_name(FaultVariant v) {
    return v == FaultVariant::BIT_FLIP ? "BIT_FLIP" : "PHASE_FLIP";
}

Circuit inject_fault(const Circuit &c, const FaultSpec &f) {
    const uint32_t n = c.num_input_qubits();
    if (f.trigger_input.size() != n) {
        throw TriggerLengthMismatch("trigger '" + f.trigger_input.str() + "' has " +
                                    std::to_string(f.trigger_input.size()) + " bits, circuit '" + c.name +
                                    "' has " + std::to_string(n) + " input qubits");
    }
    if (f.target_qubit >= n) {
        throw IndexOutOfRange("fault target qubit " + std::to_string(f.target_qubit) + " >= " + std::to_string(n));
    }
    Circuit out = c;
    const uint32_t anc = c.num_qubits;
    out.num_qubits += 1;
    out.num_ancillas += 1;

    std::vector<Gate> mask;
    std::vector<uint32_t> controls;
    for (uint32_t q = 0; q < n; q++) {
        if (!f.trigger_input.bit(q)) {
            mask.push_back(Gate::single(GateType::X, q));
        }
        controls.push_back(q);
    }
    std::vector<Gate> prologue = mask;
    prologue.push_back(n == 1 ? Gate::two(GateType::CX, 0, anc) : Gate::mcx(controls, anc));
    prologue.insert(prologue.end(), mask.begin(), mask.end());

    std::vector<Gate> body = c.gates;
    if (f.variant == FaultVariant::BIT_FLIP) {
        prologue.push_back(Gate::two(GateType::CX, anc, f.target_qubit));
    } else {
        Gate flip = Gate::two(GateType::CZ, anc, f.target_qubit);
        auto first = std::find_if(body.begin(), body.end(), [&](const Gate &g) {
            return g.type != GateType::MEASURE &&
                   std::find(g.qubits.begin(), g.qubits.end(), f.target_qubit) != g.qubits.end();
        });
        if (first == body.end()) {
            prologue.push_back(flip);
        } else {
            body.insert(first + 1, flip);
        }
    }
    out.gates = std::move(prologue);
    out.gates.insert(out.gates.end(), body.begin(), body.end());
    out.validate();
    return out;
}

std::vector<std::pair<Circuit, FaultSpec>> faulty_versions(const Circuit &c, size_t n, uint64_t seed,
                                                           double min_hellinger) {
    if (n < 1) {
        throw ValidationError("faulty_versions: n must be at least 1");
    }
    const uint32_t width = c.num_input_qubits();
    if (width > 20) {
        throw RangeTooLarge("faulty_versions: too many input qubits to enumerate triggers");
    }
    const uint64_t triggers = uint64_t{1} << width;
    if (n > triggers * width) {
        throw NotEnoughCombinations("faulty_versions: " + std::to_string(n) + " faults requested, only " +
                                    std::to_string(triggers * width) + " (trigger, target) pairs exist");
    }
    std::vector<FaultSpec> candidates;
    for (uint64_t t = 0; t < triggers; t++) {
        for (uint32_t q = 0; q < width; q++) {
            for (FaultVariant v : {FaultVariant::BIT_FLIP, FaultVariant::PHASE_FLIP}) {
                candidates.push_back({BitString::from_index(t, width), q, v});
            }
        }
    }
    std::mt19937_64 rng = make_stream(derive_seed(seed, {kFaultStream}), 0);
    for (size_t i = candidates.size(); i > 1; i--) {
        std::swap(candidates[i - 1], candidates[uniform_below(rng, i)]);
    }
    std::vector<std::pair<Circuit, FaultSpec>> out;
    std::set<std::pair<BitString, uint32_t>> used;
    std::map<BitString, Distribution> reference;
    for (const FaultSpec &f : candidates) {
        if (out.size() == n) {
            break;
        }
        if (used.contains({f.trigger_input, f.target_qubit})) {
            continue;
        }
        auto [it, fresh] = reference.try_emplace(f.trigger_input);
        if (fresh) {
            it->second = run_ideal(bind_input(c, f.trigger_input));
        }
        Circuit faulty = inject_fault(c, f);
        if (hellinger(it->second, run_ideal(bind_input(faulty, f.trigger_input))) < min_hellinger) {
            continue;
        }
        used.insert({f.trigger_input, f.target_qubit});
        out.emplace_back(std::move(faulty), f);
    }
    if (out.size() < n) {
        throw NotEnoughCombinations("faulty_versions: only " + std::to_string(out.size()) +
                                    " observable faults exist for circuit '" + c.name + "', " + std::to_string(n) +
                                    " requested");
    }
    return out;
}

std::string fault_spec_to_json(const FaultSpec &f) {
    json j = {{"trigger_input", f.trigger_input.str()},
              {"target_qubit", f.target_qubit},
              {"variant", std::string(fault_variant_name(f.variant))}};
    return j.dump(2) + "\n";
}

FaultSpec parse_fault_spec(std::string_view json_text) {
    try {
        json j = json::parse(json_text);
        FaultSpec f;
        f.trigger_input = BitString(j.at("trigger_input").get<std::string>());
        f.target_qubit = j.at("target_qubit").get<uint32_t>();
        std::string v = j.value("variant", std::string("BIT_FLIP"));
        if (v == "BIT_FLIP") {
            f.variant = FaultVariant::BIT_FLIP;
        } else if (v == "PHASE_FLIP") {
            f.variant = FaultVariant::PHASE_FLIP;
        } else {
            throw ValidationError("fault spec: variant must be BIT_FLIP or PHASE_FLIP, got '" + v + "'");
        }
        return f;
    } catch (const json::exception &e) {
        throw SyntaxError(std::string("fault spec: ") + e.what());
    }
}

}  // namespace qnt
