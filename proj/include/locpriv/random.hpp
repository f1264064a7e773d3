// Copyright 2026 The locpriv Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <random>

namespace locpriv {

// All randomness in the library flows through this engine; the uniform draws
// below extract bits directly so results are identical across standard-library
// implementations (std::uniform_real_distribution makes no such promise).
using Rng = std::mt19937_64;

// Uniform in (0, 1]; safe as an argument to std::log.
inline double uniform_open01(Rng& rng) {
    return (static_cast<double>(rng() >> 11) + 1.0) * 0x1.0p-53;
}

// Uniform in [0, 1).
inline double uniform_half_open01(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n).
inline std::size_t uniform_index(Rng& rng, std::size_t n) {
    auto i = static_cast<std::size_t>(uniform_half_open01(rng) * static_cast<double>(n));
    return i < n ? i : n - 1;
}

// Derives an independent stream seed from a base seed and up to two stream
// labels (trajectory id, repetition, ...) via splitmix64 whitening.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t a = 0, std::uint64_t b = 0);

}  // namespace locpriv
