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

#include <stdexcept>
#include <string>

namespace qnt {

/// Base of every error raised by the toolkit. `kind()` is a stable
/// machine-readable tag (used by the CLI's JSON error lines).
class Error : public std::runtime_error {
   public:
    Error(std::string kind, const std::string &message)
        : std::runtime_error(message), kind_(std::move(kind)) {}

    const std::string &kind() const noexcept {
        return kind_;
    }

    /// Validation errors map to CLI exit code 2, everything else to 3.
    virtual bool is_validation() const noexcept {
        return true;
    }

   private:
    std::string kind_;
};

#define QNT_DEFINE_ERROR(NAME)                                           \
    class NAME : public Error {                                          \
       public:                                                           \
        explicit NAME(const std::string &message) : Error(#NAME, message) {} \
    };

// Input / format validation.
QNT_DEFINE_ERROR(SyntaxError)
QNT_DEFINE_ERROR(UnsupportedGate)
QNT_DEFINE_ERROR(IndexOutOfRange)
QNT_DEFINE_ERROR(InvalidCircuit)
QNT_DEFINE_ERROR(LengthMismatch)
QNT_DEFINE_ERROR(ValidationError)
QNT_DEFINE_ERROR(InvalidNoiseModel)
QNT_DEFINE_ERROR(RangeTooLarge)
QNT_DEFINE_ERROR(RegexUnsupported)
QNT_DEFINE_ERROR(MissingConfigEntry)
QNT_DEFINE_ERROR(MissingSpecInput)
QNT_DEFINE_ERROR(NotNormalized)
QNT_DEFINE_ERROR(EmptyList)
QNT_DEFINE_ERROR(ZeroBaseline)
QNT_DEFINE_ERROR(SuiteTooSmall)
QNT_DEFINE_ERROR(TriggerLengthMismatch)
QNT_DEFINE_ERROR(NotEnoughCombinations)
QNT_DEFINE_ERROR(EmptyDataset)

#undef QNT_DEFINE_ERROR

/// Simulation exceeded the configured qubit cap.
class CapExceeded : public Error {
   public:
    explicit CapExceeded(const std::string &message) : Error("CapExceeded", message) {}
    bool is_validation() const noexcept override {
        return false;
    }
};

/// Training loss became non-finite.
class DivergenceDetected : public Error {
   public:
    explicit DivergenceDetected(const std::string &message) : Error("DivergenceDetected", message) {}
    bool is_validation() const noexcept override {
        return false;
    }
};

}  // namespace qnt
