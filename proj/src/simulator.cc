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

#include <algorithm>
#include <cmath>
#include <numbers>
#include <thread>

#include "json.hpp"
#include "qnt/errors.h"
#include "qnt/rng.h"

namespace qnt {

using cd = std::complex<double>;
using json = nlohmann::json;

StateVector::StateVector(uint32_t num_qubits) : num_qubits_(num_qubits), amps_(size_t{1} << num_qubits) {
    amps_[0] = 1.0;
}

void StateVector::apply_1q(uint32_t q, const cd (&m)[2][2]) {
    const size_t stride = size_t{1} << q;
    const size_t n = amps_.size();
    for (size_t base = 0; base < n; base += 2 * stride) {
        for (size_t i = base; i < base + stride; i++) {
            cd a0 = amps_[i];
            cd a1 = amps_[i + stride];
            amps_[i] = m[0][0] * a0 + m[0][1] * a1;
            amps_[i + stride] = m[1][0] * a0 + m[1][1] * a1;
        }
    }
}

void StateVector::apply_controlled_x(uint64_t control_mask, uint32_t target) {
    const size_t t = size_t{1} << target;
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & t) == 0 && (i & control_mask) == control_mask) {
            std::swap(amps_[i], amps_[i | t]);
        }
    }
}

void StateVector::apply_phase_on_mask(uint64_t mask, cd phase) {
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & mask) == mask) {
            amps_[i] *= phase;
        }
    }
}

void StateVector::apply_swap(uint32_t a, uint32_t b) {
    const size_t ma = size_t{1} << a;
    const size_t mb = size_t{1} << b;
    for (size_t i = 0; i < amps_.size(); i++) {
        if ((i & ma) && !(i & mb)) {
            std::swap(amps_[i], amps_[(i & ~ma) | mb]);
        }
    }
}

void StateVector::apply_pauli(uint32_t q, uint32_t which) {
    static const cd kX[2][2] = {{0, 1}, {1, 0}};
    static const cd kY[2][2] = {{0, cd(0, -1)}, {cd(0, 1), 0}};
    static const cd kZ[2][2] = {{1, 0}, {0, -1}};
    switch (which) {
        case 0:
            return;
        case 1:
            apply_1q(q, kX);
            return;
        case 2:
            apply_1q(q, kY);
            return;
        case 3:
            apply_1q(q, kZ);
            return;
        default:
            throw ValidationError("pauli index must be in 0..3");
    }
}

void StateVector::apply(const Gate &g) {
    const double s2 = std::numbers::sqrt2 / 2.0;
    const double h = g.theta / 2.0;
    const cd i1(0, 1);
    switch (g.type) {
        case GateType::X:
        case GateType::Y:
        case GateType::Z:
            apply_pauli(g.qubits[0], g.type == GateType::X ? 1 : g.type == GateType::Y ? 2 : 3);
            return;
        case GateType::H: {
            const cd m[2][2] = {{s2, s2}, {s2, -s2}};
            apply_1q(g.qubits[0], m);
            return;
        }
        case GateType::S:
            apply_phase_on_mask(uint64_t{1} << g.qubits[0], i1);
            return;
        case GateType::SDG:
            apply_phase_on_mask(uint64_t{1} << g.qubits[0], -i1);
            return;
        case GateType::T:
            apply_phase_on_mask(uint64_t{1} << g.qubits[0], std::polar(1.0, std::numbers::pi / 4));
            return;
        case GateType::TDG:
            apply_phase_on_mask(uint64_t{1} << g.qubits[0], std::polar(1.0, -std::numbers::pi / 4));
            return;
        case GateType::RX: {
            const cd m[2][2] = {{std::cos(h), -i1 * std::sin(h)}, {-i1 * std::sin(h), std::cos(h)}};
            apply_1q(g.qubits[0], m);
            return;
        }
        case GateType::RY: {
            const cd m[2][2] = {{std::cos(h), -std::sin(h)}, {std::sin(h), std::cos(h)}};
            apply_1q(g.qubits[0], m);
            return;
        }
        case GateType::RZ: {
            const cd m[2][2] = {{std::polar(1.0, -h), 0}, {0, std::polar(1.0, h)}};
            apply_1q(g.qubits[0], m);
            return;
        }
        case GateType::CP:
            apply_phase_on_mask((uint64_t{1} << g.qubits[0]) | (uint64_t{1} << g.qubits[1]), std::polar(1.0, g.theta));
            return;
        case GateType::CZ:
            apply_phase_on_mask((uint64_t{1} << g.qubits[0]) | (uint64_t{1} << g.qubits[1]), -1.0);
            return;
        case GateType::SWAP:
            apply_swap(g.qubits[0], g.qubits[1]);
            return;
        case GateType::CX:
        case GateType::CCX:
        case GateType::MCX: {
            uint64_t mask = 0;
            for (size_t k = 0; k + 1 < g.qubits.size(); k++) {
                mask |= uint64_t{1} << g.qubits[k];
            }
            apply_controlled_x(mask, g.qubits.back());
            return;
        }
        case GateType::MEASURE:
            break;
    }
    throw ValidationError("StateVector::apply: measurement is not a unitary gate");
}

double StateVector::norm() const {
    double s = 0;
    for (const cd &a : amps_) {
        s += std::norm(a);
    }
    return std::sqrt(s);
}

std::vector<double> StateVector::probabilities() const {
    std::vector<double> p(amps_.size());
    for (size_t i = 0; i < amps_.size(); i++) {
        p[i] = std::norm(amps_[i]);
    }
    return p;
}

// ---------------------------------------------------------------------------
// Noise model

void NoiseModel::validate() const {
    auto check = [&](double p, double hi, const std::string &what) {
        if (!(p >= 0.0 && p <= hi)) {
            throw InvalidNoiseModel("noise model '" + name + "': " + what + " = " + std::to_string(p) +
                                    " outside [0, " + std::to_string(hi) + "]");
        }
    };
    check(one_qubit_depolarizing, 0.75, "one_qubit_depolarizing");
    check(two_qubit_depolarizing, 0.9375, "two_qubit_depolarizing");
    for (const auto &[gate, p] : per_gate_overrides) {
        auto type = gate_type_from_name(gate);
        if (!type || *type == GateType::MEASURE) {
            throw InvalidNoiseModel("noise model '" + name + "': unknown gate '" + gate + "' in per_gate_overrides");
        }
        auto arity = fixed_arity(*type);
        check(p, arity && *arity == 1 ? 0.75 : 0.9375, "per_gate_overrides." + gate);
    }
    check(readout.p1_given_0, 1.0, "readout.p1_given_0");
    check(readout.p0_given_1, 1.0, "readout.p0_given_1");
    for (const auto &[q, r] : per_qubit_readout_overrides) {
        check(r.p1_given_0, 1.0, "per_qubit_readout_overrides." + std::to_string(q) + ".p1_given_0");
        check(r.p0_given_1, 1.0, "per_qubit_readout_overrides." + std::to_string(q) + ".p0_given_1");
    }
}

double NoiseModel::gate_error(const Gate &g) const {
    auto it = per_gate_overrides.find(std::string(gate_name(g.type)));
    if (it != per_gate_overrides.end()) {
        return it->second;
    }
    return g.arity() == 1 ? one_qubit_depolarizing : two_qubit_depolarizing;
}

const ReadoutError &NoiseModel::readout_for(uint32_t qubit) const {
    auto it = per_qubit_readout_overrides.find(qubit);
    return it == per_qubit_readout_overrides.end() ? readout : it->second;
}

namespace {

void reject_unknown(const json &obj, std::initializer_list<std::string_view> allowed, const std::string &where) {
    for (const auto &[key, _] : obj.items()) {
        if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
            throw InvalidNoiseModel(where + ": unknown field '" + key + "'");
        }
    }
}

double number_field(const json &obj, const char *key, const std::string &where) {
    if (!obj.contains(key)) {
        throw InvalidNoiseModel(where + ": missing field '" + key + "'");
    }
    if (!obj[key].is_number()) {
        throw InvalidNoiseModel(where + ": field '" + key + "' must be a number");
    }
    return obj[key].get<double>();
}

ReadoutError parse_readout(const json &j, const std::string &where) {
    if (!j.is_object()) {
        throw InvalidNoiseModel(where + " must be an object");
    }
    reject_unknown(j, {"p1_given_0", "p0_given_1"}, where);
    return ReadoutError{number_field(j, "p1_given_0", where), number_field(j, "p0_given_1", where)};
}

}  // namespace

NoiseModel parse_noise_model(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw SyntaxError(std::string("noise model: ") + e.what());
    }
    if (!j.is_object()) {
        throw InvalidNoiseModel("noise model must be a JSON object");
    }
    reject_unknown(j,
                   {"name", "one_qubit_depolarizing", "two_qubit_depolarizing", "per_gate_overrides", "readout",
                    "per_qubit_readout_overrides"},
                   "noise model");
    NoiseModel nm;
    if (!j.contains("name") || !j["name"].is_string()) {
        throw InvalidNoiseModel("noise model: missing string field 'name'");
    }
    nm.name = j["name"].get<std::string>();
    nm.one_qubit_depolarizing = number_field(j, "one_qubit_depolarizing", "noise model");
    nm.two_qubit_depolarizing = number_field(j, "two_qubit_depolarizing", "noise model");
    if (!j.contains("readout")) {
        throw InvalidNoiseModel("noise model: missing field 'readout'");
    }
    nm.readout = parse_readout(j["readout"], "readout");
    if (j.contains("per_gate_overrides")) {
        if (!j["per_gate_overrides"].is_object()) {
            throw InvalidNoiseModel("per_gate_overrides must be an object");
        }
        for (const auto &[gate, p] : j["per_gate_overrides"].items()) {
            if (!p.is_number()) {
                throw InvalidNoiseModel("per_gate_overrides." + gate + " must be a number");
            }
            nm.per_gate_overrides[gate] = p.get<double>();
        }
    }
    if (j.contains("per_qubit_readout_overrides")) {
        if (!j["per_qubit_readout_overrides"].is_object()) {
            throw InvalidNoiseModel("per_qubit_readout_overrides must be an object");
        }
        for (const auto &[key, r] : j["per_qubit_readout_overrides"].items()) {
            if (key.empty() || key.find_first_not_of("0123456789") != std::string::npos) {
                throw InvalidNoiseModel("per_qubit_readout_overrides: key '" + key + "' is not a qubit index");
            }
            nm.per_qubit_readout_overrides[static_cast<uint32_t>(std::stoul(key))] =
                parse_readout(r, "per_qubit_readout_overrides." + key);
        }
    }
    nm.validate();
    return nm;
}

std::string noise_model_to_json(const NoiseModel &nm) {
    json j;
    j["name"] = nm.name;
    j["one_qubit_depolarizing"] = nm.one_qubit_depolarizing;
    j["two_qubit_depolarizing"] = nm.two_qubit_depolarizing;
    j["per_gate_overrides"] = json::object();
    for (const auto &[g, p] : nm.per_gate_overrides) {
        j["per_gate_overrides"][g] = p;
    }
    j["readout"] = {{"p1_given_0", nm.readout.p1_given_0}, {"p0_given_1", nm.readout.p0_given_1}};
    j["per_qubit_readout_overrides"] = json::object();
    for (const auto &[q, r] : nm.per_qubit_readout_overrides) {
        j["per_qubit_readout_overrides"][std::to_string(q)] = {{"p1_given_0", r.p1_given_0},
                                                               {"p0_given_1", r.p0_given_1}};
    }
    return j.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// Execution

double OutputDistribution::probability(const BitString &b) const {
    auto it = counts.find(b);
    if (it == counts.end() || shots == 0) {
        return 0.0;
    }
    return static_cast<double>(it->second) / static_cast<double>(shots);
}

Distribution OutputDistribution::probabilities() const {
    Distribution d;
    for (const auto &[b, n] : counts) {
        d[b] = static_cast<double>(n) / static_cast<double>(shots);
    }
    return d;
}

namespace {

constexpr uint32_t kMaxClbits = 24;

struct MeasureMap {
    std::vector<std::pair<uint32_t, uint32_t>> qubit_to_clbit;
};

MeasureMap measure_map(const Circuit &c) {
    MeasureMap m;
    for (const Gate &g : c.gates) {
        if (g.type == GateType::MEASURE) {
            m.qubit_to_clbit.emplace_back(g.qubits[0], *g.clbit);
        }
    }
    return m;
}

uint64_t readout_index(const MeasureMap &m, uint64_t basis) {
    uint64_t v = 0;
    for (auto [q, c] : m.qubit_to_clbit) {
        v |= ((basis >> q) & 1) << c;
    }
    return v;
}

void check_cap(const Circuit &c, const RunOptions &opts) {
    c.validate();
    if (c.num_qubits > opts.qubit_cap) {
        throw CapExceeded("circuit '" + c.name + "' has " + std::to_string(c.num_qubits) +
                          " qubits; simulator cap is " + std::to_string(opts.qubit_cap));
    }
    if (c.num_clbits > kMaxClbits) {
        throw CapExceeded("circuit '" + c.name + "' has " + std::to_string(c.num_clbits) +
                          " classical bits; at most " + std::to_string(kMaxClbits) + " supported");
    }
}

StateVector final_state(const Circuit &c) {
    StateVector sv(c.num_qubits);
    for (const Gate &g : c.gates) {
        if (g.type != GateType::MEASURE) {
            sv.apply(g);
        }
    }
    return sv;
}

std::vector<double> cumulative(const std::vector<double> &p) {
    std::vector<double> cum(p.size());
    double s = 0;
    for (size_t i = 0; i < p.size(); i++) {
        s += p[i];
        cum[i] = s;
    }
    return cum;
}

uint64_t sample_index(const std::vector<double> &cum, double u) {
    double target = u * cum.back();
    auto it = std::upper_bound(cum.begin(), cum.end(), target);
    if (it == cum.end()) {
        --it;
    }
    return static_cast<uint64_t>(it - cum.begin());
}

/// Runs `per_shot(i, counts)` for every shot on up to `threads` workers and
/// sums the per-worker histograms.
template <typename Fn>
OutputDistribution run_shots(const Circuit &c, uint64_t shots, size_t threads, Fn per_shot) {
    if (shots == 0) {
        throw ValidationError("shots must be positive");
    }
    const size_t width = size_t{1} << c.num_clbits;
    size_t workers = threads == 0 ? worker_count() : threads;
    workers = std::max<size_t>(1, std::min<size_t>(workers, shots / 256 + 1));
    std::vector<std::vector<uint64_t>> hist(workers, std::vector<uint64_t>(width, 0));
    auto work = [&](size_t w) {
        uint64_t lo = shots * w / workers;
        uint64_t hi = shots * (w + 1) / workers;
        for (uint64_t i = lo; i < hi; i++) {
            hist[w][per_shot(i)]++;
        }
    };
    if (workers == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (size_t w = 0; w < workers; w++) {
            pool.emplace_back(work, w);
        }
        for (auto &t : pool) {
            t.join();
        }
    }
    OutputDistribution out;
    out.shots = shots;
    for (size_t v = 0; v < width; v++) {
        uint64_t n = 0;
        for (size_t w = 0; w < workers; w++) {
            n += hist[w][v];
        }
        if (n > 0) {
            out.counts[BitString::from_index(v, c.num_clbits)] = n;
        }
    }
    return out;
}

}  // namespace

Distribution run_ideal(const Circuit &c, const RunOptions &opts) {
    check_cap(c, opts);
    StateVector sv = final_state(c);
    MeasureMap m = measure_map(c);
    std::vector<double> p = sv.probabilities();
    std::vector<double> marginal(size_t{1} << c.num_clbits, 0.0);
    for (size_t i = 0; i < p.size(); i++) {
        marginal[readout_index(m, i)] += p[i];
    }
    Distribution d;
    for (size_t v = 0; v < marginal.size(); v++) {
        if (marginal[v] >= 1e-12) {
            d[BitString::from_index(v, c.num_clbits)] = marginal[v];
        }
    }
    return d;
}

OutputDistribution sample_ideal(const Circuit &c, uint64_t shots, uint64_t seed, const RunOptions &opts) {
    check_cap(c, opts);
    MeasureMap m = measure_map(c);
    std::vector<double> cum = cumulative(final_state(c).probabilities());
    return run_shots(c, shots, opts.threads, [&](uint64_t i) {
        auto rng = make_stream(seed, i);
        return readout_index(m, sample_index(cum, uniform01(rng)));
    });
}

OutputDistribution run_noisy(const Circuit &c, const NoiseModel &nm, uint64_t shots, uint64_t seed,
                             const RunOptions &opts) {
    check_cap(c, opts);
    nm.validate();
    MeasureMap m = measure_map(c);

    struct Step {
        const Gate *gate;
        double p_error;
        uint64_t num_words;  // 4^arity - 1
    };
    std::vector<Step> steps;
    for (const Gate &g : c.gates) {
        if (g.type == GateType::MEASURE) {
            continue;
        }
        steps.push_back({&g, nm.gate_error(g), (uint64_t{1} << (2 * g.arity())) - 1});
    }
    std::vector<ReadoutError> readout;
    for (auto [q, cl] : m.qubit_to_clbit) {
        readout.push_back(nm.readout_for(q));
    }
    const std::vector<double> ideal_cum = cumulative(final_state(c).probabilities());

    return run_shots(c, shots, opts.threads, [&](uint64_t i) {
        auto rng = make_stream(seed, i);
        // Draw every error decision first; the draw sequence is the same
        // whether or not the shot needs its own trajectory.
        std::vector<std::pair<size_t, uint64_t>> faults;
        for (size_t k = 0; k < steps.size(); k++) {
            if (steps[k].p_error > 0.0 && uniform01(rng) < steps[k].p_error) {
                faults.emplace_back(k, 1 + uniform_below(rng, steps[k].num_words));
            }
        }
        uint64_t basis;
        if (faults.empty()) {
            basis = sample_index(ideal_cum, uniform01(rng));
        } else {
            StateVector sv(c.num_qubits);
            size_t next = 0;
            for (size_t k = 0; k < steps.size(); k++) {
                sv.apply(*steps[k].gate);
                if (next < faults.size() && faults[next].first == k) {
                    uint64_t word = faults[next].second;
                    for (uint32_t q : steps[k].gate->qubits) {
                        sv.apply_pauli(q, static_cast<uint32_t>(word & 3));
                        word >>= 2;
                    }
                    next++;
                }
            }
            basis = sample_index(cumulative(sv.probabilities()), uniform01(rng));
        }
        uint64_t value = 0;
        for (size_t k = 0; k < m.qubit_to_clbit.size(); k++) {
            auto [q, cl] = m.qubit_to_clbit[k];
            bool bit = (basis >> q) & 1;
            double flip = bit ? readout[k].p0_given_1 : readout[k].p1_given_0;
            if (flip > 0.0 && uniform01(rng) < flip) {
                bit = !bit;
            }
            value |= uint64_t{bit} << cl;
        }
        return value;
    });
}

}  // namespace qnt
