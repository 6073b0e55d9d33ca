// Copyright 2026 The proxyreg Authors
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

// Seeded random streams. Every consumer draws from its own stream, derived from
// (seed, purpose) by a SplitMix64 mix, so e.g. the noise draws never shift when
// the design generator changes how many numbers it consumes.

#include <cstdint>
#include <random>
#include <vector>

namespace proxyreg {

using Rng = std::mt19937_64;

enum class Stream : std::uint64_t {
    covariance = 1,
    design = 2,
    bias = 3,
    noise_gold = 4,
    noise_proxy = 5,
    cv_split = 6,
    scale_holdout = 7,
    test_split = 8,
    compat = 9,
    labels_gold = 10,
    labels_proxy = 11,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

// Stable 64-bit mix of (base, index); used for per-trial seeds.
std::uint64_t mix_seed(std::uint64_t base, std::uint64_t index) noexcept;

Rng make_rng(std::uint64_t seed, Stream stream);

// Uniformly random permutation of 0..n-1 (Fisher-Yates on the given stream).
std::vector<std::size_t> random_permutation(std::size_t n, Rng& rng);

}  // namespace proxyreg
