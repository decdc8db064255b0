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
#include "qnt/circuit.h"
#include "qnt/program_spec.h"
#include "qnt/simulator.h"
#include "qnt/training_data.h"

namespace qnt {

enum class InputFormat { INTEGER, BINARY, EXPRESSION };

std::string_view input_format_name(InputFormat f);

/// One configuration line: how to build the test inputs of circuit `id`.
///
/// INTEGER enumerates the values [start, end]. BINARY enumerates every value
/// whose bit length lies in [start, end] (so start = 1 includes zero).
/// EXPRESSION enumerates the finite language of `regex`; `start` must equal
/// the number of distinct characters the regex can emit and `end` is ignored.
struct GenEntry {
    std::string id;
    InputFormat format = InputFormat::INTEGER;
    int64_t start = 0;
    int64_t end = 0;
    double percentage = 100.0;
    std::optional<std::string> regex;

    bool operator==(const GenEntry &) const = default;
};

struct GenConfig {
    std::vector<GenEntry> entries;

    /// Throws MissingConfigEntry when no entry has this id.
    const GenEntry &entry_for(std::string_view id) const;

    bool operator==(const GenConfig &) const = default;
};

/// Accepts `{"entries": [...]}` or a bare array of entries.
GenConfig parse_config(std::string_view json_text);
std::string config_to_json(const GenConfig &cfg);

enum class SelectionMode { PREFIX, RANDOM };

/// Candidate inputs of `entry` rendered as `num_qubits`-bit strings,
/// ascending. Throws RangeTooLarge if a value does not fit.
std::vector<BitString> candidate_inputs(const GenEntry &entry, uint32_t num_qubits);

/// Keeps ceil(percentage% x candidates) inputs: the ascending prefix, or a
/// seeded random subset (returned ascending) in RANDOM mode.
std::vector<BitString> generate_inputs(const GenEntry &entry, uint32_t num_qubits, uint64_t seed,
                                       SelectionMode mode = SelectionMode::PREFIX);

/// Ideal output distribution of `c` for every input.
ProgramSpec build_program_spec(const Circuit &c, const std::vector<BitString> &inputs,
                               const RunOptions &opts = {});

std::string inputs_to_json(const std::string &circuit_id, const std::vector<BitString> &inputs);
std::vector<BitString> parse_inputs(std::string_view json_text);

struct ExecutionRecord {
    BitString input;
    uint32_t rep = 0;
    OutputDistribution output;

    bool operator==(const ExecutionRecord &) const = default;
};

/// Raw noisy (or ideal, sampled) executions of one circuit.
struct ExecutionResults {
    std::string circuit_id;
    std::string backend;
    uint64_t shots = 0;
    uint64_t seed = 0;
    std::vector<ExecutionRecord> records;

    bool operator==(const ExecutionResults &) const = default;
};

/// Seed of execution (`input_index`, `rep`) of circuit `circuit_id`.
uint64_t execution_seed(uint64_t seed, std::string_view circuit_id, size_t input_index, uint32_t rep);

/// Runs every input `reps` times on `nm`, in input order then rep order.
ExecutionResults execute_inputs(const Circuit &c, const std::vector<BitString> &inputs, const NoiseModel &nm,
                                uint64_t shots, uint64_t seed, uint32_t reps = 1, const RunOptions &opts = {});

std::string execution_results_to_json(const ExecutionResults &r);
ExecutionResults parse_execution_results(std::string_view json_text);

/// One row per observed state of every record. Targets come from `spec`
/// and are 0 for states outside it.
std::vector<TrainingRow> rows_from_results(const ExecutionResults &r, const ProgramSpec &spec);

/// Full data-generation flow for a set of baseline circuits. Each circuit is
/// looked up in `cfg` by its name.
std::vector<TrainingRow> generate_training_rows(const std::vector<Circuit> &circuits, const GenConfig &cfg,
                                                const NoiseModel &nm, uint64_t shots, uint64_t seed,
                                                uint32_t reps = 1, const RunOptions &opts = {});

}  // namespace qnt
