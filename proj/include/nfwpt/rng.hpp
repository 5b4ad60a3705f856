// SPDX-License-Identifier: Apache-2.0
//
// nfwpt - sensing-assisted near-field wireless power transfer simulator
// Copyright (C) 2026 The nfwpt authors
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

#ifndef NFWPT_RNG_HPP
#define NFWPT_RNG_HPP

#include <cstdint>
#include <random>

namespace nfwpt
{
    using Rng = std::mt19937_64;

    // SplitMix64 finaliser
    constexpr std::uint64_t mix64(std::uint64_t z)
    {
        z += 0x9e3779b97f4a7c15ULL;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Seed for (parent, index). Trial seeds are derive_seed(master_seed, trial_index);
    // sub-streams of a trial are derive_seed(trial_seed, stream_id).
    constexpr std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t index)
    {
        return mix64(parent ^ mix64(index + 0x632be59bd9b4e019ULL));
    }
}

#endif
