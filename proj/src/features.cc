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

#include "qnt/features.h"

#include <algorithm>

#include "qnt/errors.h"

namespace qnt {

double pos(const OutputDistribution &dist, const BitString &t) {
    if (dist.shots == 0) {
        throw ValidationError("pos: distribution has zero shots");
    }
    return dist.probability(t);
}

double odr(double pos_t) {
    if (pos_t >= 1.0) {
        return kOddsSentinel;
    }
    return std::min(pos_t / (1.0 - pos_t), kOddsSentinel);
}

FeatureVector features_from_pos(double pos_t) {
    return FeatureVector{pos_t, odr(pos_t), pof(pos_t)};
}

std::map<BitString, FeatureVector> featurize_result(const OutputDistribution &dist) {
    if (dist.shots == 0) {
        throw ValidationError("featurize_result: distribution has zero shots");
    }
    std::map<BitString, FeatureVector> out;
    for (const auto &[state, n] : dist.counts) {
        if (n > 0) {
            out[state] = features_from_pos(static_cast<double>(n) / static_cast<double>(dist.shots));
        }
    }
    return out;
}

}  // namespace qnt
