// SPDX-License-Identifier: Apache-2.0
//
// ivchan - in vivo wireless channel modelling and measurement analysis
// Copyright (C) 2026 ivchan developers
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ivchan_core_rng_H
#define ivchan_core_rng_H

#include <cmath>
#include <cstdint>
#include <numbers>

namespace ivchan
{

// Deterministic generator with a fixed algorithm so that seeded runs produce
// identical streams on every platform and standard library. std::mt19937 with
// std::normal_distribution is not used because the distribution adapters are
// implementation-defined.
class rng
{
  public:
    explicit rng(std::uint64_t seed) : state_(seed) {}

    // splitmix64
    std::uint64_t next_u64()
    {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    // Uniform on [0, 1)
    double next_unit() { return double(next_u64() >> 11) * 0x1.0p-53; }

    // Standard normal via Box-Muller, one value per call; u1 is forced
    // nonzero so the log never sees 0.
    double next_normal()
    {
        double u1 = double((next_u64() >> 11) + 1) * 0x1.0p-53;
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
    }

    // Independent stream for one trial of a seeded batch. Trials keep their
    // own generators so multi-threaded batches stay order-independent.
    static rng for_trial(std::uint64_t master_seed, std::uint64_t trial)
    {
        return rng(master_seed + (trial + 1) * 0x9E3779B97F4A7C15ull);
    }

  private:
    std::uint64_t state_;
};

} // namespace ivchan

#endif
