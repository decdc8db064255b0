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
#include <utility>
#include <vector>

#include "qnt/bitstring.h"

namespace qnt {

/// Hellinger distance (1/sqrt2)·||sqrt(p) - sqrt(q)||_2 over the union
/// support. Both arguments must sum to 1 within 1e-6 (NotNormalized).
double hellinger(const Distribution &p, const Distribution &q);

/// Mean Hellinger distance over per-input (spec, observed) pairs.
double avg_hellinger(const std::vector<std::pair<Distribution, Distribution>> &pairs);

/// (noisy - filtered) / noisy · 100. Throws ZeroBaseline if noisy <= 0.
double improved_percent(double hl_noisy, double hl_filtered);

/// Jensen-Shannon distance: sqrt of the base-2 JS divergence, in [0, 1].
double jsd(const Distribution &p, const Distribution &q);

/// Average pairwise JSD of circuit `target` against every other circuit in
/// the suite. Each suite element maps probe input -> output distribution;
/// all elements must share the same probe inputs.
double diversity_score(size_t target, const std::vector<std::map<BitString, Distribution>> &suite);

struct ConfusionCounts {
    uint64_t tp = 0;
    uint64_t fp = 0;
    uint64_t fn = 0;
    uint64_t tn = 0;
    bool operator==(const ConfusionCounts &) const = default;
};

struct PrecisionRecallF1 {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
    /// Set when any ratio had a zero denominator (its value is reported as 0).
    bool degenerate = false;
};

PrecisionRecallF1 precision_recall_f1(const ConfusionCounts &c);

/// F1 from already-computed precision and recall (0 when both are 0).
double f1_score(double precision, double recall);

}  // namespace qnt
