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

#include "qnt/pipeline.h"

#include "qnt/errors.h"
#include "qnt/metrics.h"

namespace qnt {

BaselineSuite default_baselines() {
    BaselineSuite s;
    s.circuits = {circuits::ghz(3), circuits::expression3(), circuits::bell()};
    for (const Circuit &c : s.circuits) {
        int64_t top = (int64_t{1} << c.num_input_qubits()) - 1;
        s.config.entries.push_back({c.name, InputFormat::INTEGER, 0, top, 100.0, std::nullopt});
    }
    return s;
}

std::vector<BitString> all_inputs(uint32_t num_qubits) {
    if (num_qubits > 24) {
        throw RangeTooLarge("all_inputs: " + std::to_string(num_qubits) + " bits is too wide to enumerate");
    }
    std::vector<BitString> out;
    for (uint64_t v = 0; v < (uint64_t{1} << num_qubits); v++) {
        out.push_back(BitString::from_index(v, num_qubits));
    }
    return out;
}

std::vector<BitString> pick_tuning_inputs(const std::vector<BitString> &candidates, size_t max_inputs,
                                          const std::set<BitString> &exclude) {
    std::vector<BitString> out;
    for (const BitString &b : candidates) {
        if (out.size() == max_inputs) {
            break;
        }
        if (!exclude.contains(b)) {
            out.push_back(b);
        }
    }
    return out;
}

std::vector<TrainingRow> tuning_rows(const Circuit &cut, const std::vector<BitString> &inputs, const NoiseModel &nm,
                                     const TuneOptions &opts, uint64_t seed, const RunOptions &run) {
    if (inputs.empty()) {
        throw EmptyDataset("tuning needs at least one input");
    }
    if (inputs.size() > opts.max_inputs) {
        throw ValidationError("tuning uses " + std::to_string(inputs.size()) + " inputs, the limit is " +
                              std::to_string(opts.max_inputs));
    }
    ProgramSpec spec = build_program_spec(cut, inputs, run);
    ExecutionResults r = execute_inputs(cut, inputs, nm, opts.shots, seed, opts.reps, run);
    return rows_from_results(r, spec);
}

std::map<BitString, FilteredOutput> filter_results(const MlpModel *m, const ExecutionResults &r, double threshold) {
    std::map<BitString, FilteredOutput> out;
    for (const ExecutionRecord &rec : r.records) {
        if (rec.rep != 0 || out.contains(rec.input)) {
            continue;
        }
        FilteredOutput f = m ? filter_output(*m, rec.output, threshold) : unfiltered(rec.output);
        f.input = rec.input;
        out.emplace(rec.input, std::move(f));
    }
    return out;
}

NoiseReduction noise_reduction(const ProgramSpec &spec, const ExecutionResults &noisy,
                               const std::map<BitString, FilteredOutput> &filtered) {
    NoiseReduction nr;
    std::vector<std::pair<Distribution, Distribution>> noisy_pairs, filtered_pairs;
    for (const ExecutionRecord &rec : noisy.records) {
        if (rec.rep != 0) {
            continue;
        }
        auto it = filtered.find(rec.input);
        if (it == filtered.end()) {
            throw MissingSpecInput("no filtered output for input '" + rec.input.str() + "'");
        }
        const Distribution &ideal = spec.at(rec.input);
        HellingerRow row{rec.input, hellinger(ideal, rec.output.probabilities()),
                         hellinger(ideal, it->second.probabilities)};
        noisy_pairs.emplace_back(ideal, rec.output.probabilities());
        filtered_pairs.emplace_back(ideal, it->second.probabilities);
        nr.rows.push_back(row);
    }
    nr.avg_noisy = avg_hellinger(noisy_pairs);
    nr.avg_filtered = avg_hellinger(filtered_pairs);
    nr.improved = improved_percent(nr.avg_noisy, nr.avg_filtered);
    return nr;
}

FilteredOutput ideal_output(const Circuit &c, const BitString &input, const RunOptions &run) {
    FilteredOutput f;
    f.input = input;
    f.probabilities = run_ideal(bind_input(c, input), run);
    return f;
}

}  // namespace qnt
