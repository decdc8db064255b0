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

#include "qnt/filter.h"

#include "json.hpp"
#include "qnt/errors.h"
#include "qnt/features.h"

namespace qnt {

using json = nlohmann::json;

FilteredOutput unfiltered(const OutputDistribution &dist) {
    if (dist.shots == 0) {
        throw ValidationError("unfiltered: distribution has zero shots");
    }
    FilteredOutput out;
    out.probabilities = dist.probabilities();
    return out;
}

FilteredOutput filter_output(const MlpModel &m, const OutputDistribution &dist, double threshold) {
    if (dist.shots == 0) {
        throw ValidationError("filter_output: distribution has zero shots");
    }
    FilteredOutput out;
    out.baseline_model = m.provenance.kind == ModelKind::BASELINE;
    double total = 0;
    for (const auto &[state, f] : featurize_result(dist)) {
        double score = predict(m, f);
        if (score < threshold) {
            out.dropped_states.push_back(state);
            continue;
        }
        out.probabilities[state] = score;
        total += score;
    }
    if (out.probabilities.empty() || !(total > 0.0)) {
        out.fallback_used = true;
        out.probabilities = dist.probabilities();
        return out;
    }
    for (auto &[_, p] : out.probabilities) {
        p /= total;
    }
    return out;
}

std::string filtered_outputs_to_json(const std::vector<FilteredOutput> &outputs) {
    json arr = json::array();
    for (const FilteredOutput &f : outputs) {
        json probs = json::object();
        for (const auto &[s, p] : f.probabilities) {
            probs[s.str()] = p;
        }
        json dropped = json::array();
        for (const BitString &s : f.dropped_states) {
            dropped.push_back(s.str());
        }
        arr.push_back({{"input", f.input.str()},
                       {"probabilities", probs},
                       {"dropped", dropped},
                       {"fallback", f.fallback_used},
                       {"baseline_model", f.baseline_model}});
    }
    return arr.dump(2) + "\n";
}

std::vector<FilteredOutput> parse_filtered_outputs(std::string_view json_text) {
    std::vector<FilteredOutput> out;
    try {
        json arr = json::parse(json_text);
        if (!arr.is_array()) {
            throw ValidationError("filtered results: expected a JSON array");
        }
        for (const json &e : arr) {
            FilteredOutput f;
            f.input = BitString(e.at("input").get<std::string>());
            for (const auto &[s, p] : e.at("probabilities").items()) {
                f.probabilities[BitString(s)] = p.get<double>();
            }
            for (const json &s : e.at("dropped")) {
                f.dropped_states.emplace_back(s.get<std::string>());
            }
            f.fallback_used = e.at("fallback").get<bool>();
            f.baseline_model = e.value("baseline_model", false);
            out.push_back(std::move(f));
        }
    } catch (const json::exception &e) {
        throw SyntaxError(std::string("filtered results: ") + e.what());
    }
    return out;
}

}  // namespace qnt
