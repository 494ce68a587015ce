// SPDX-License-Identifier: Apache-2.0
//
// risim - link-level simulation of RIS-assisted downlink MIMO systems
// Copyright (C) 2026 The risim authors
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

#ifndef RISIM_RNG_HPP
#define RISIM_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

namespace risim
{
    using Rng = std::mt19937_64;

    // SplitMix64 finalizer, used as the mixing step of the seed tree
    constexpr std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    // Counter-based seed splitting: child seeds depend only on the parent seed and the tag path,
    // never on how many numbers another stream consumed.
    constexpr std::uint64_t derive_seed(std::uint64_t parent, std::initializer_list<std::uint64_t> tags)
    {
        std::uint64_t s = splitmix64(parent);
        for (auto t : tags)
            s = splitmix64(s ^ splitmix64(t + 0x632BE59BD9B4E019ULL));
        return s;
    }

    inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

    // Uniform on [0, 1) from the top 53 bits of one engine output
    inline double uniform01(Rng &rng) { return double(rng() >> 11) * 0x1.0p-53; }
}

#endif
