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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <string_view>

namespace qnt {

/// A classical bit pattern, stored in its textual form.
///
/// The text is most-significant-first: character 0 is bit `size()-1`
/// (the highest qubit or classical bit), the last character is bit 0.
/// So "110" on three qubits means q2=1, q1=1, q0=0.
class BitString {
   public:
    BitString() = default;

    /// Throws SyntaxError unless `text` consists only of '0'/'1'.
    explicit BitString(std::string text);

    /// Encodes the low `width` bits of `value`.
    static BitString from_index(uint64_t value, size_t width);

    size_t size() const noexcept {
        return bits_.size();
    }
    const std::string &str() const noexcept {
        return bits_;
    }

    /// Value of bit `index` (0 = least significant = rightmost character).
    bool bit(size_t index) const;

    /// Interprets the string as an unsigned integer. Requires size() <= 64.
    uint64_t to_index() const;

    auto operator<=>(const BitString &) const = default;
    bool operator==(const BitString &) const = default;

   private:
    std::string bits_;
};

/// Probability mass over bit patterns.
using Distribution = std::map<BitString, double>;

/// Shot counts over bit patterns.
using Counts = std::map<BitString, uint64_t>;

}  // namespace qnt

template <>
struct std::hash<qnt::BitString> {
    size_t operator()(const qnt::BitString &b) const noexcept {
        return std::hash<std::string>{}(b.str());
    }
};
