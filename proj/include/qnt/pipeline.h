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
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "qnt/benchgen.h"
#include "qnt/datagen.h"
#include "qnt/filter.h"
#include "qnt/mlp.h"
#include "qnt/oracle.h"

namespace qnt {

/// Baseline circuits (GHZ-3, expression3, Bell) with a configuration that
/// covers each full input space.
struct BaselineSuite {
    std::vector<Circuit> circuits;
    GenConfig config;
};

BaselineSuite default_baselines();

/// Every `num_qubits`-bit input, ascending.
std::vector<BitString> all_inputs(uint32_t num_qubits);

/// First `max_inputs` entries of `candidates` that are not in `exclude`.
std::vector<BitString> pick_tuning_inputs(const std::vector<BitString> &candidates, size_t max_inputs,
                                          const std::set<BitString> &exclude = {});

struct TuneOptions {
    size_t max_inputs = 4;
    uint32_t reps = 100;
    uint64_t shots = kDefaultShots;
};

/// Training rows from `reps` noisy executions of `cut` on each input.
std::vector<TrainingRow> tuning_rows(const Circuit &cut, const std::vector<BitString> &inputs, const NoiseModel &nm,
                                     const TuneOptions &opts, uint64_t seed, const RunOptions &run = {});

/// Filters every record of `r` with `m`, or leaves it untouched when `m` is
/// null. Only the first repetition of each input is used.
std::map<BitString, FilteredOutput> filter_results(const MlpModel *m, const ExecutionResults &r, double threshold);

struct HellingerRow {
    BitString input;
    double noisy = 0.0;
    double filtered = 0.0;
};

/// Per-input Hellinger distances of noisy and filtered outputs to the spec.
struct NoiseReduction {
    std::vector<HellingerRow> rows;
    double avg_noisy = 0.0;
    double avg_filtered = 0.0;
    double improved = 0.0;  ///< improved_percent(avg_noisy, avg_filtered)
};

NoiseReduction noise_reduction(const ProgramSpec &spec, const ExecutionResults &noisy,
                               const std::map<BitString, FilteredOutput> &filtered);

/// Ideal output of `c` on `input` wrapped as an unfiltered result.
FilteredOutput ideal_output(const Circuit &c, const BitString &input, const RunOptions &run = {});

}  // namespace qnt
