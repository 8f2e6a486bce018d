// Copyright 2026 The SQAV Authors
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

#ifndef SQAV_RNG_H
#define SQAV_RNG_H

#include <cstdint>
#include <initializer_list>
#include <random>

namespace sqav {

/// Deterministic, platform-independent random stream.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard. All conversions to doubles, bounded integers and Gaussians are
/// done here rather than through <random> distributions, which are
/// implementation-defined.
///
/// Child streams are derived from the construction seed and a stream label via
/// SplitMix64 mixing. Derivation never depends on how many values have already
/// been drawn, so a child stream is the same regardless of scheduling.
class SeededRng {
   public:
    explicit SeededRng(std::uint64_t seed);

    std::uint64_t seed() const { return seed_; }

    SeededRng derive(std::uint64_t stream) const;
    SeededRng derive(std::initializer_list<std::uint64_t> path) const;

    std::uint64_t next_u64() { return engine_(); }
    /// Uniform double in [0, 1) with 53 bits of precision.
    double uniform();
    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound);
    bool coin() { return (next_u64() >> 63) != 0; }
    /// Standard normal deviate (Box-Muller, no caching).
    double gaussian();

   private:
    std::uint64_t seed_;
    std::mt19937_64 engine_;
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace sqav

#endif
