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

#include "qnt/bitstring.h"

#include "qnt/errors.h"

namespace qnt {

BitString::BitString(std::string text) : bits_(std::move(text)) {
    for (char c : bits_) {
        if (c != '0' && c != '1') {
            throw SyntaxError("invalid bit string '" + bits_ + "': expected only '0' and '1'");
        }
    }
}

BitString BitString::from_index(uint64_t value, size_t width) {
    std::string s(width, '0');
    for (size_t k = 0; k < width && k < 64; k++) {
        if ((value >> k) & 1) {
            s[width - 1 - k] = '1';
        }
    }
    BitString result;
    result.bits_ = std::move(s);
    return result;
}

bool BitString::bit(size_t index) const {
    if (index >= bits_.size()) {
        throw IndexOutOfRange("bit index " + std::to_string(index) + " out of range for '" + bits_ + "'");
    }
    return bits_[bits_.size() - 1 - index] == '1';
}

uint64_t BitString::to_index() const {
    if (bits_.size() > 64) {
        throw RangeTooLarge("bit string longer than 64 bits");
    }
    uint64_t v = 0;
    for (char c : bits_) {
        v = (v << 1) | static_cast<uint64_t>(c == '1');
    }
    return v;
}

}  // namespace qnt
