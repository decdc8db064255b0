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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace qnt {

/// Folds `parts` into `seed` with a splitmix64 finalizer. Used to derive
/// independent sub-seeds (per shot, per circuit, per input) from one user
/// seed so results never depend on scheduling.
uint64_t derive_seed(uint64_t seed, std::initializer_list<uint64_t> parts);

/// FNV-1a hash of `text`; stable across platforms and runs.
uint64_t stable_hash(std::string_view text);

/// Independent generator for stream `stream` of `seed`.
std::mt19937_64 make_stream(uint64_t seed, uint64_t stream);

/// Uniform double in [0, 1) with 53 random bits.
inline double uniform01(std::mt19937_64 &rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer in [0, n). n must be positive.
inline uint64_t uniform_below(std::mt19937_64 &rng, uint64_t n) {
    return std::uniform_int_distribution<uint64_t>(0, n - 1)(rng);
}

/// Worker-thread cap: QNT_THREADS if set to a positive integer, otherwise
/// std::thread::hardware_concurrency() (at least 1). Never affects results.
size_t worker_count();

}  // namespace qnt
