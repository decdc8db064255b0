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
#include <string>
#include <string_view>

#include "qnt/bitstring.h"

namespace qnt {

/// Ideal output distribution of a program for each of its inputs.
struct ProgramSpec {
    std::string circuit_id;
    std::map<BitString, Distribution> per_input;

    /// Throws MissingSpecInput when `input` is not covered.
    const Distribution &at(const BitString &input) const;

    bool operator==(const ProgramSpec &) const = default;
};

/// `{"circuit_id": ..., "per_input": {"000": {"000": 0.5, ...}, ...}}`
std::string program_spec_to_json(const ProgramSpec &spec);
ProgramSpec parse_program_spec(std::string_view json_text);

}  // namespace qnt
