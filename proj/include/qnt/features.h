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

#include "qnt/bitstring.h"
#include "qnt/simulator.h"

namespace qnt {

/// Odds value reported when a state carries all of the mass.
inline constexpr double kOddsSentinel = 1e6;

/// Per-state features computed from noisy counts.
struct FeatureVector {
    double pos = 0.0;  ///< observed probability of the state
    double odr = 0.0;  ///< pos / (1 - pos), clamped to kOddsSentinel
    double pof = 1.0;  ///< 1 - pos
    bool operator==(const FeatureVector &) const = default;
};

/// counts[t] / shots, 0 for unobserved states.
double pos(const OutputDistribution &dist, const BitString &t);

double odr(double pos_t);

inline double pof(double pos_t) {
    return 1.0 - pos_t;
}

FeatureVector features_from_pos(double pos_t);

/// One FeatureVector per observed state.
std::map<BitString, FeatureVector> featurize_result(const OutputDistribution &dist);

}  // namespace qnt
