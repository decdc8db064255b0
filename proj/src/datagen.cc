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

#include "qnt/datagen.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "json.hpp"
#include "qnt/errors.h"
#include "qnt/features.h"
#include "qnt/regex_expand.h"
#include "qnt/rng.h"

namespace qnt {

using json = nlohmann::json;

namespace {

constexpr uint32_t kMaxInputBits = 24;
constexpr uint64_t kInputStream = 0x1D9A7ULL;

InputFormat parse_format(const std::string &s, const std::string &id) {
    if (s == "INTEGER") {
        return InputFormat::INTEGER;
    }
    if (s == "BINARY") {
        return InputFormat::BINARY;
    }
    if (s == "EXPRESSION") {
        return InputFormat::EXPRESSION;
    }
    throw ValidationError("config entry '" + id + "': format must be INTEGER, BINARY or EXPRESSION, got '" + s + "'");
}

void validate_entry(const GenEntry &e) {
    auto bad = [&](const std::string &field, const std::string &why) {
        throw ValidationError("config entry '" + e.id + "': field '" + field + "' " + why);
    };
    if (e.id.empty()) {
        throw ValidationError("config entry: field 'id' must be a non-empty string");
    }
    if (!(e.percentage > 0.0 && e.percentage <= 100.0)) {
        bad("percentage", "must lie in (0, 100]");
    }
    switch (e.format) {
        case InputFormat::INTEGER:
            if (e.start < 0) {
                bad("start", "must be non-negative");
            }
            if (e.start > e.end) {
                bad("start", "must not exceed end");
            }
            break;
        case InputFormat::BINARY:
            if (e.start < 1) {
                bad("start", "must be at least 1");
            }
            if (e.start > e.end) {
                bad("start", "must not exceed end");
            }
            break;
        case InputFormat::EXPRESSION: {
            if (!e.regex || e.regex->empty()) {
                bad("regex", "is required for EXPRESSION entries");
            }
            size_t unique = regex_alphabet(*e.regex).size();
            if (e.start != static_cast<int64_t>(unique)) {
                bad("start", "must equal the number of unique characters of the regex (" + std::to_string(unique) +
                                 ")");
            }
            break;
        }
    }
}

int64_t required_int(const json &j, const char *field, const std::string &id) {
    if (!j.contains(field) || !j[field].is_number_integer()) {
        throw ValidationError("config entry '" + id + "': field '" + field + "' must be an integer");
    }
    return j[field].get<int64_t>();
}

size_t selection_size(double percentage, size_t candidates) {
    double exact = percentage / 100.0 * static_cast<double>(candidates);
    // Absorb rounding noise such as 0.07 * 100 = 7.000000000000001.
    auto k = static_cast<size_t>(std::ceil(exact - 1e-9 * std::max(1.0, exact)));
    return std::clamp<size_t>(k, 1, candidates);
}

}  // namespace

std::string_view input_format_name(InputFormat f) {
    switch (f) {
        case InputFormat::INTEGER:
            return "INTEGER";
        case InputFormat::BINARY:
            return "BINARY";
        case InputFormat::EXPRESSION:
            return "EXPRESSION";
    }
    return "?";
}

const GenEntry &GenConfig::entry_for(std::string_view id) const {
    for (const GenEntry &e : entries) {
        if (e.id == id) {
            return e;
        }
    }
    throw MissingConfigEntry("no configuration entry for circuit '" + std::string(id) + "'");
}

GenConfig parse_config(std::string_view json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error &e) {
        throw SyntaxError(std::string("config: ") + e.what());
    }
    const json *arr = &j;
    if (j.is_object()) {
        if (!j.contains("entries")) {
            throw ValidationError("config: missing field 'entries'");
        }
        arr = &j["entries"];
    }
    if (!arr->is_array()) {
        throw ValidationError("config: 'entries' must be an array");
    }
    GenConfig cfg;
    std::set<std::string> seen;
    for (const json &e : *arr) {
        if (!e.is_object() || !e.contains("id") || !e["id"].is_string()) {
            throw ValidationError("config entry: field 'id' must be a string");
        }
        GenEntry entry;
        entry.id = e["id"].get<std::string>();
        if (!e.contains("format") || !e["format"].is_string()) {
            throw ValidationError("config entry '" + entry.id + "': field 'format' must be a string");
        }
        entry.format = parse_format(e["format"].get<std::string>(), entry.id);
        entry.start = required_int(e, "start", entry.id);
        if (entry.format != InputFormat::EXPRESSION || e.contains("end")) {
            entry.end = required_int(e, "end", entry.id);
        }
        if (!e.contains("percentage") || !e["percentage"].is_number()) {
            throw ValidationError("config entry '" + entry.id + "': field 'percentage' must be a number");
        }
        entry.percentage = e["percentage"].get<double>();
        if (e.contains("regex") && !e["regex"].is_null()) {
            if (!e["regex"].is_string()) {
                throw ValidationError("config entry '" + entry.id + "': field 'regex' must be a string");
            }
            entry.regex = e["regex"].get<std::string>();
        }
        validate_entry(entry);
        if (!seen.insert(entry.id).second) {
            throw ValidationError("config: duplicate entry id '" + entry.id + "'");
        }
        cfg.entries.push_back(std::move(entry));
    }
    return cfg;
}

std::string config_to_json(const GenConfig &cfg) {
    json arr = json::array();
    for (const GenEntry &e : cfg.entries) {
        json o = {{"id", e.id},
                  {"format", std::string(input_format_name(e.format))},
                  {"start", e.start},
                  {"end", e.end},
                  {"percentage", e.percentage}};
        if (e.regex) {
            o["regex"] = *e.regex;
        }
        arr.push_back(std::move(o));
    }
    return json{{"entries", arr}}.dump(2) + "\n";
}

std::vector<BitString> candidate_inputs(const GenEntry &entry, uint32_t num_qubits) {
    validate_entry(entry);
    if (num_qubits == 0 || num_qubits > kMaxInputBits) {
        throw RangeTooLarge("input width " + std::to_string(num_qubits) + " outside [1, " +
                            std::to_string(kMaxInputBits) + "]");
    }
    const uint64_t space = uint64_t{1} << num_qubits;
    std::vector<BitString> out;
    if (entry.format == InputFormat::EXPRESSION) {
        std::set<std::string> padded;
        for (const std::string &s : expand_regex(*entry.regex, space)) {
            if (s.find_first_not_of("01") != std::string::npos) {
                throw RegexUnsupported("regex of entry '" + entry.id + "' produces the non-binary string '" + s + "'");
            }
            if (s.size() > num_qubits) {
                throw RangeTooLarge("regex of entry '" + entry.id + "' produces '" + s + "', longer than " +
                                    std::to_string(num_qubits) + " bits");
            }
            padded.insert(std::string(num_qubits - s.size(), '0') + s);
        }
        for (const std::string &s : padded) {
            out.emplace_back(s);
        }
        return out;
    }
    uint64_t lo, hi;
    if (entry.format == InputFormat::INTEGER) {
        lo = static_cast<uint64_t>(entry.start);
        hi = static_cast<uint64_t>(entry.end);
    } else {
        if (entry.end > static_cast<int64_t>(num_qubits)) {
            throw RangeTooLarge("entry '" + entry.id + "': bit length " + std::to_string(entry.end) + " exceeds " +
                                std::to_string(num_qubits) + " qubits");
        }
        lo = entry.start == 1 ? 0 : uint64_t{1} << (entry.start - 1);
        hi = (uint64_t{1} << entry.end) - 1;
    }
    if (hi >= space) {
        throw RangeTooLarge("entry '" + entry.id + "': value " + std::to_string(hi) + " does not fit in " +
                            std::to_string(num_qubits) + " bits");
    }
    out.reserve(hi - lo + 1);
    for (uint64_t v = lo; v <= hi; v++) {
        out.push_back(BitString::from_index(v, num_qubits));
    }
    return out;
}

std::vector<BitString> generate_inputs(const GenEntry &entry, uint32_t num_qubits, uint64_t seed,
                                       SelectionMode mode) {
    std::vector<BitString> all = candidate_inputs(entry, num_qubits);
    if (all.empty()) {
        return all;
    }
    size_t k = selection_size(entry.percentage, all.size());
    if (mode == SelectionMode::PREFIX) {
        all.resize(k);
        return all;
    }
    std::mt19937_64 rng = make_stream(seed, kInputStream);
    for (size_t i = 0; i < k; i++) {
        size_t j = i + static_cast<size_t>(uniform_below(rng, all.size() - i));
        std::swap(all[i], all[j]);
    }
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
}

ProgramSpec build_program_spec(const Circuit &c, const std::vector<BitString> &inputs, const RunOptions &opts) {
    ProgramSpec spec;
    spec.circuit_id = c.name;
    for (const BitString &in : inputs) {
        spec.per_input[in] = run_ideal(bind_input(c, in), opts);
    }
    return spec;
}

std::string inputs_to_json(const std::string &circuit_id, const std::vector<BitString> &inputs) {
    json arr = json::array();
    for (const BitString &b : inputs) {
        arr.push_back(b.str());
    }
    return json{{"circuit_id", circuit_id}, {"inputs", arr}}.dump(2) + "\n";
}

std::vector<BitString> parse_inputs(std::string_view json_text) {
    try {
        json j = json::parse(json_text);
        const json &arr = j.is_object() ? j.at("inputs") : j;
        std::vector<BitString> out;
        for (const json &s : arr) {
            out.emplace_back(s.get<std::string>());
        }
        return out;
    } catch (const json::exception &e) {
        throw SyntaxError(std::string("inputs: ") + e.what());
    }
}

uint64_t execution_seed(uint64_t seed, std::string_view circuit_id, size_t input_index, uint32_t rep) {
    return derive_seed(seed, {stable_hash(circuit_id), input_index, rep});
}

ExecutionResults execute_inputs(const Circuit &c, const std::vector<BitString> &inputs, const NoiseModel &nm,
                                uint64_t shots, uint64_t seed, uint32_t reps, const RunOptions &opts) {
    if (shots == 0) {
        throw ValidationError("shots must be positive");
    }
    if (reps == 0) {
        throw ValidationError("reps must be positive");
    }
    nm.validate();
    ExecutionResults r{c.name, nm.name, shots, seed, {}};
    for (size_t i = 0; i < inputs.size(); i++) {
        Circuit bound = bind_input(c, inputs[i]);
        for (uint32_t rep = 0; rep < reps; rep++) {
            uint64_t s = execution_seed(seed, c.name, i, rep);
            r.records.push_back({inputs[i], rep, run_noisy(bound, nm, shots, s, opts)});
        }
    }
    return r;
}

std::string execution_results_to_json(const ExecutionResults &r) {
    json records = json::array();
    for (const ExecutionRecord &rec : r.records) {
        json counts = json::object();
        for (const auto &[state, n] : rec.output.counts) {
            counts[state.str()] = n;
        }
        records.push_back({{"input", rec.input.str()}, {"rep", rec.rep}, {"counts", counts}});
    }
    json j = {{"circuit_id", r.circuit_id},
              {"backend", r.backend},
              {"shots", r.shots},
              {"seed", r.seed},
              {"records", records}};
    return j.dump(2) + "\n";
}

ExecutionResults parse_execution_results(std::string_view json_text) {
    ExecutionResults r;
    try {
        json j = json::parse(json_text);
        r.circuit_id = j.at("circuit_id").get<std::string>();
        r.backend = j.value("backend", std::string());
        r.shots = j.at("shots").get<uint64_t>();
        r.seed = j.value("seed", uint64_t{0});
        for (const json &rec : j.at("records")) {
            ExecutionRecord e;
            e.input = BitString(rec.at("input").get<std::string>());
            e.rep = rec.value("rep", 0u);
            e.output.shots = r.shots;
            uint64_t total = 0;
            for (const auto &[state, n] : rec.at("counts").items()) {
                e.output.counts[BitString(state)] = n.get<uint64_t>();
                total += n.get<uint64_t>();
            }
            if (total != r.shots) {
                throw ValidationError("results: counts for input '" + e.input.str() + "' sum to " +
                                      std::to_string(total) + ", expected " + std::to_string(r.shots));
            }
            r.records.push_back(std::move(e));
        }
    } catch (const json::exception &e) {
        throw SyntaxError(std::string("results: ") + e.what());
    }
    return r;
}

std::vector<TrainingRow> rows_from_results(const ExecutionResults &r, const ProgramSpec &spec) {
    std::vector<TrainingRow> rows;
    for (const ExecutionRecord &rec : r.records) {
        const Distribution &ideal = spec.at(rec.input);
        for (const auto &[state, f] : featurize_result(rec.output)) {
            auto it = ideal.find(state);
            double target = it == ideal.end() ? 0.0 : it->second;
            rows.push_back({r.circuit_id, rec.input, state, f.pos, f.odr, f.pof, target});
        }
    }
    return rows;
}

std::vector<TrainingRow> generate_training_rows(const std::vector<Circuit> &circuits, const GenConfig &cfg,
                                                const NoiseModel &nm, uint64_t shots, uint64_t seed, uint32_t reps,
                                                const RunOptions &opts) {
    std::vector<TrainingRow> rows;
    for (const Circuit &c : circuits) {
        const GenEntry &entry = cfg.entry_for(c.name);
        std::vector<BitString> inputs =
            generate_inputs(entry, c.num_input_qubits(), derive_seed(seed, {stable_hash(c.name)}));
        ProgramSpec spec = build_program_spec(c, inputs, opts);
        ExecutionResults r = execute_inputs(c, inputs, nm, shots, seed, reps, opts);
        std::vector<TrainingRow> part = rows_from_results(r, spec);
        rows.insert(rows.end(), part.begin(), part.end());
    }
    return rows;
}

}  // namespace qnt
