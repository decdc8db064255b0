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

#include <string>
#include <string_view>
#include <vector>

#include "qnt/bitstring.h"
#include "qnt/mlp.h"
#include "qnt/simulator.h"

namespace qnt {

/// Distribution handed to the test oracles, plus filtering bookkeeping.
struct FilteredOutput {
    BitString input;
    Distribution probabilities;
    std::vector<BitString> dropped_states;
    /// Every state was dropped; `probabilities` is the raw noisy distribution.
    bool fallback_used = false;
    /// The model had not been fine-tuned for the program.
    bool baseline_model = false;

    bool operator==(const FilteredOutput &) const = default;
};

/// Half a shot's worth of probability.
inline double default_filter_threshold(uint64_t shots) {
    return 1.0 / (2.0 * static_cast<double>(shots));
}

/// Scores every observed state with the model, drops states scoring below
/// `threshold`, and renormalizes the survivors. Falls back to the raw
/// normalized distribution when nothing survives.
FilteredOutput filter_output(const MlpModel &m, const OutputDistribution &dist, double threshold);

/// The raw normalized distribution, for assessing without a filter.
FilteredOutput unfiltered(const OutputDistribution &dist);

/// JSON array of `{"input", "probabilities", "dropped", "fallback"}`.
std::string filtered_outputs_to_json(const std::vector<FilteredOutput> &outputs);
std::vector<FilteredOutput> parse_filtered_outputs(std::string_view json_text);

}  // namespace qnt
