// Copyright 2026 The Statnet Authors
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

namespace statnet {

std::uint64_t splitmix64(std::uint64_t x);

/// Reproducible random stream. Independent streams for (seed, index) pairs
/// come from `derived`.
class Rng {
   public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {
    }
    static Rng derived(std::uint64_t seed, std::uint64_t index);

    /// Uniform double in [0, 1) with 53 random bits.
    double uniform();

   private:
    std::mt19937_64 engine_;
};

}  // namespace statnet
