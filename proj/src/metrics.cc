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

#include "qnt/metrics.h"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "qnt/errors.h"

namespace qnt {

namespace {

void require_normalized(const Distribution &d, const char *what) {
    double s = 0;
    for (const auto &[_, p] : d) {
        if (p < 0.0 || !std::isfinite(p)) {
            throw NotNormalized(std::string(what) + ": negative or non-finite probability");
        }
        s += p;
    }
    if (std::abs(s - 1.0) > 1e-6) {
        throw NotNormalized(std::string(what) + ": probabilities sum to " + std::to_string(s));
    }
}

double lookup(const Distribution &d, const BitString &b) {
    auto it = d.find(b);
    return it == d.end() ? 0.0 : it->second;
}

std::set<BitString> union_support(const Distribution &p, const Distribution &q) {
    std::set<BitString> s;
    for (const auto &[b, _] : p) {
        s.insert(b);
    }
    for (const auto &[b, _] : q) {
        s.insert(b);
    }
    return s;
}

}  // namespace

double hellinger(const Distribution &p, const Distribution &q) {
    require_normalized(p, "hellinger(p)");
    require_normalized(q, "hellinger(q)");
    double s = 0;
    for (const BitString &b : union_support(p, q)) {
        double d = std::sqrt(lookup(p, b)) - std::sqrt(lookup(q, b));
        s += d * d;
    }
    return std::min(1.0, std::sqrt(s) / std::sqrt(2.0));
}

double avg_hellinger(const std::vector<std::pair<Distribution, Distribution>> &pairs) {
    if (pairs.empty()) {
        throw EmptyList("avg_hellinger: no input pairs");
    }
    double s = 0;
    for (const auto &[p, q] : pairs) {
        s += hellinger(p, q);
    }
    return s / static_cast<double>(pairs.size());
}

double improved_percent(double hl_noisy, double hl_filtered) {
    if (!(hl_noisy > 0.0)) {
        throw ZeroBaseline("improved_percent: noisy Hellinger distance must be positive");
    }
    return (hl_noisy - hl_filtered) / hl_noisy * 100.0;
}

double jsd(const Distribution &p, const Distribution &q) {
    require_normalized(p, "jsd(p)");
    require_normalized(q, "jsd(q)");
    double div = 0;
    for (const BitString &b : union_support(p, q)) {
        double pb = lookup(p, b);
        double qb = lookup(q, b);
        double m = 0.5 * (pb + qb);
        if (pb > 0) {
            div += 0.5 * pb * std::log2(pb / m);
        }
        if (qb > 0) {
            div += 0.5 * qb * std::log2(qb / m);
        }
    }
    return std::sqrt(std::clamp(div, 0.0, 1.0));
}

double diversity_score(size_t target, const std::vector<std::map<BitString, Distribution>> &suite) {
    if (suite.size() < 2) {
        throw SuiteTooSmall("diversity_score needs at least two circuits");
    }
    if (target >= suite.size()) {
        throw IndexOutOfRange("diversity_score: target index out of range");
    }
    const auto &mine = suite[target];
    if (mine.empty()) {
        throw ValidationError("diversity_score: no probe inputs");
    }
    double total = 0;
    for (size_t k = 0; k < suite.size(); k++) {
        if (k == target) {
            continue;
        }
        if (suite[k].size() != mine.size()) {
            throw ValidationError("diversity_score: circuits were evaluated on different probe inputs");
        }
        double per_input = 0;
        for (const auto &[input, dist] : mine) {
            auto it = suite[k].find(input);
            if (it == suite[k].end()) {
                throw ValidationError("diversity_score: probe input '" + input.str() + "' missing");
            }
            per_input += jsd(dist, it->second);
        }
        total += per_input / static_cast<double>(mine.size());
    }
    return total / static_cast<double>(suite.size() - 1);
}

double f1_score(double precision, double recall) {
    if (precision + recall <= 0.0) {
        return 0.0;
    }
    return 2.0 * (precision * recall) / (precision + recall);
}

PrecisionRecallF1 precision_recall_f1(const ConfusionCounts &c) {
    PrecisionRecallF1 r;
    if (c.tp + c.fp == 0) {
        r.degenerate = true;
    } else {
        r.precision = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fp);
    }
    if (c.tp + c.fn == 0) {
        r.degenerate = true;
    } else {
        r.recall = static_cast<double>(c.tp) / static_cast<double>(c.tp + c.fn);
    }
    r.f1 = f1_score(r.precision, r.recall);
    return r;
}

}  // namespace qnt
