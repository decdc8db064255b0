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

#include "qnt/oracle.h"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "qnt/chi_squared.h"
#include "qnt/errors.h"

namespace qnt {

using json = nlohmann::json;

void OracleConfig::validate() const {
    if (!(alpha > 0.0 && alpha < 1.0)) {
        throw ValidationError("oracle alpha must lie in (0, 1)");
    }
    if (!(uof_min_prob >= 0.0 && uof_min_prob <= 1.0)) {
        throw ValidationError("uof_min_prob must lie in [0, 1]");
    }
    if (!(pool_min_expected >= 0.0)) {
        throw ValidationError("pool_min_expected must be non-negative");
    }
}

UofResult assess_uof(const Distribution &spec_dist, const FilteredOutput &observed, const OracleConfig &cfg) {
    UofResult r;
    for (const auto &[state, p] : observed.probabilities) {
        auto it = spec_dist.find(state);
        bool in_support = it != spec_dist.end() && it->second > 0.0;
        if (!in_support && p >= cfg.uof_min_prob) {
            r.offending_states.push_back(state);
        }
    }
    r.fail = !r.offending_states.empty();
    return r;
}

namespace {

struct Category {
    std::string key;  // bit string, or "~other" so it sorts after every state
    double expected_p = 0.0;
    double observed = 0.0;
};

}  // namespace

WodfResult assess_wodf(const Distribution &spec_dist, const FilteredOutput &observed, uint64_t shots,
                       const OracleConfig &cfg) {
    if (spec_dist.empty()) {
        throw ValidationError("assess_wodf: empty specification support");
    }
    if (shots == 0) {
        throw ValidationError("assess_wodf: shots must be positive");
    }
    const double n_shots = static_cast<double>(shots);
    std::vector<Category> cats;
    double spec_total = 0;
    for (const auto &[state, p] : spec_dist) {
        auto it = observed.probabilities.find(state);
        double o = it == observed.probabilities.end() ? 0.0 : std::round(it->second * n_shots);
        cats.push_back({state.str(), p, o});
        spec_total += p;
    }
    Category other{"~other", std::max(0.0, 1.0 - spec_total), 0.0};
    for (const auto &[state, p] : observed.probabilities) {
        if (!spec_dist.contains(state)) {
            other.observed += std::round(p * n_shots);
        }
    }
    cats.push_back(other);

    double n = 0;
    for (const Category &c : cats) {
        n += c.observed;
    }
    WodfResult r;
    if (n <= 0.0) {
        return r;
    }
    auto expected = [&](const Category &c) { return c.expected_p * n; };
    auto smaller = [&](const Category &a, const Category &b) {
        double ea = expected(a), eb = expected(b);
        return ea != eb ? ea < eb : a.key < b.key;
    };
    while (cats.size() >= 2) {
        std::sort(cats.begin(), cats.end(), smaller);
        if (expected(cats[0]) >= cfg.pool_min_expected) {
            break;
        }
        cats[1].expected_p += cats[0].expected_p;
        cats[1].observed += cats[0].observed;
        cats.erase(cats.begin());
    }
    if (cats.size() < 2) {
        return r;
    }
    double stat = 0;
    for (const Category &c : cats) {
        double e = expected(c);
        double d = c.observed - e;
        stat += d * d / e;
    }
    r.statistic = stat;
    r.df = static_cast<int>(cats.size()) - 1;
    r.p_value = chi_squared_p_value(stat, r.df);
    r.fail = *r.p_value < cfg.alpha;
    return r;
}

std::vector<Verdict> assess(const ProgramSpec &spec, const std::map<BitString, FilteredOutput> &results,
                            uint64_t shots, const OracleConfig &cfg) {
    cfg.validate();
    std::vector<Verdict> verdicts;
    for (const auto &[input, observed] : results) {
        const Distribution &expected = spec.at(input);
        UofResult uof = assess_uof(expected, observed, cfg);
        WodfResult wodf = assess_wodf(expected, observed, shots, cfg);
        verdicts.push_back(Verdict{input, uof.fail, wodf.fail, wodf.p_value, uof.offending_states});
    }
    return verdicts;
}

double score_percent(const std::vector<std::vector<Verdict>> &verdicts_per_backend) {
    if (verdicts_per_backend.empty()) {
        throw EmptyList("score_percent: no backends");
    }
    double total = 0;
    for (const auto &vs : verdicts_per_backend) {
        if (vs.empty()) {
            throw EmptyList("score_percent: backend without verdicts");
        }
        double failed = static_cast<double>(std::count_if(vs.begin(), vs.end(), [](const Verdict &v) {
            return v.failed();
        }));
        total += failed / static_cast<double>(vs.size()) * 100.0;
    }
    return total / static_cast<double>(verdicts_per_backend.size());
}

std::string_view outcome_name(Outcome o) {
    switch (o) {
        case Outcome::TP:
            return "TP";
        case Outcome::FP:
            return "FP";
        case Outcome::FN:
            return "FN";
        case Outcome::TN:
            return "TN";
    }
    return "?";
}

Outcome classify_outcome(bool ground_truth_faulty, bool assessed_faulty) {
    if (ground_truth_faulty) {
        return assessed_faulty ? Outcome::TP : Outcome::FN;
    }
    return assessed_faulty ? Outcome::FP : Outcome::TN;
}

std::string verdicts_to_json(const std::vector<Verdict> &verdicts) {
    json arr = json::array();
    for (const Verdict &v : verdicts) {
        json offending = json::array();
        for (const BitString &s : v.offending_states) {
            offending.push_back(s.str());
        }
        arr.push_back({{"input", v.input.str()},
                       {"uof_fail", v.uof_fail},
                       {"wodf_fail", v.wodf_fail},
                       {"p_value", v.p_value ? json(*v.p_value) : json(nullptr)},
                       {"offending", offending}});
    }
    return arr.dump(2) + "\n";
}

std::vector<Verdict> parse_verdicts(std::string_view json_text) {
    std::vector<Verdict> out;
    try {
        json arr = json::parse(json_text);
        if (!arr.is_array()) {
            throw ValidationError("verdicts: expected a JSON array");
        }
        for (const json &e : arr) {
            Verdict v;
            v.input = BitString(e.at("input").get<std::string>());
            v.uof_fail = e.at("uof_fail").get<bool>();
            v.wodf_fail = e.at("wodf_fail").get<bool>();
            if (!e.at("p_value").is_null()) {
                v.p_value = e.at("p_value").get<double>();
            }
            for (const json &s : e.at("offending")) {
                v.offending_states.emplace_back(s.get<std::string>());
            }
            out.push_back(std::move(v));
        }
    } catch (const json::exception &e) {
        throw SyntaxError(std::string("verdicts: ") + e.what());
    }
    return out;
}

}  // namespace qnt
