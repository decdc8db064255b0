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

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qnt/bitstring.h"
#include "qnt/filter.h"
#include "qnt/program_spec.h"

namespace qnt {

struct OracleConfig {
    double alpha = 0.01;
    /// Smallest observed probability that counts as an unexpected output.
    double uof_min_prob = 0.02;
    /// Chi-squared categories are pooled until each expects this many counts.
    double pool_min_expected = 5.0;

    void validate() const;
};

struct UofResult {
    bool fail = false;
    std::vector<BitString> offending_states;
};

/// Unexpected-output check: fails when a state outside the spec's support
/// is observed with probability >= cfg.uof_min_prob.
UofResult assess_uof(const Distribution &spec_dist, const FilteredOutput &observed, const OracleConfig &cfg);

struct WodfResult {
    bool fail = false;
    /// Absent when pooling left fewer than two categories.
    std::optional<double> p_value;
    double statistic = 0.0;
    int df = 0;
};

/// Wrong-distribution check: Pearson chi-squared goodness of fit of the
/// observed counts (round(p·shots)) against the spec over the spec support
/// plus one "other" bucket. Low-expectation categories are pooled
/// smallest-first; ties go to the lower bit string, "other" sorts last.
WodfResult assess_wodf(const Distribution &spec_dist, const FilteredOutput &observed, uint64_t shots,
                       const OracleConfig &cfg);

struct Verdict {
    BitString input;
    bool uof_fail = false;
    bool wodf_fail = false;
    std::optional<double> p_value;
    std::vector<BitString> offending_states;

    bool failed() const {
        return uof_fail || wodf_fail;
    }
    bool operator==(const Verdict &) const = default;
};

/// UOF then WODF for every input in `results`, in input order.
std::vector<Verdict> assess(const ProgramSpec &spec, const std::map<BitString, FilteredOutput> &results,
                            uint64_t shots, const OracleConfig &cfg);

/// Mean over backends of the percentage of failing inputs.
double score_percent(const std::vector<std::vector<Verdict>> &verdicts_per_backend);

enum class Outcome { TP, FP, FN, TN };

std::string_view outcome_name(Outcome o);

Outcome classify_outcome(bool ground_truth_faulty, bool assessed_faulty);

std::string verdicts_to_json(const std::vector<Verdict> &verdicts);
std::vector<Verdict> parse_verdicts(std::string_view json_text);

}  // namespace qnt
