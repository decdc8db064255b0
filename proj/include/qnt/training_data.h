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
#include "qnt/features.h"

namespace qnt {

/// One supervised example: the features of `state` observed when running
/// `circuit_id` on `input`, labelled with its ideal probability.
struct TrainingRow {
    std::string circuit_id;
    BitString input;
    BitString state;
    double pos = 0.0;
    double odr = 0.0;
    double pof = 1.0;
    double target = 0.0;

    FeatureVector features() const {
        return FeatureVector{pos, odr, pof};
    }
    bool operator==(const TrainingRow &) const = default;
};

inline constexpr std::string_view kTrainingCsvHeader = "circuit_id,input,state,pos,odr,pof,target";

/// CSV with header `circuit_id,input,state,pos,odr,pof,target`; numbers are
/// written with 17 significant digits so reading back is lossless.
std::string training_rows_to_csv(const std::vector<TrainingRow> &rows);
std::vector<TrainingRow> parse_training_csv(std::string_view text);

}  // namespace qnt
