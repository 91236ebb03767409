// SPDX-License-Identifier: Apache-2.0
//
// fdris-lib  C++ library for multi-subarray frequency-diverse RIS network
// simulation and weighted sum-rate optimization
// Copyright (C) 2026 the fdris-lib authors
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

#include "fdris/rng.hpp"

#include <cmath>

namespace fdris
{
    std::uint64_t splitmix64(std::uint64_t x)
    {
        x += 0x9E3779B97F4A7C15ULL;
        x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
        x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
        return x ^ (x >> 31);
    }

    Rng Rng::derive(std::uint64_t seed, std::uint64_t stream)
    {
        // Child state mixes both inputs so (seed, stream) pairs never collide
        // with plain seeds in practice.
        return Rng(splitmix64(splitmix64(seed) ^ (0x632BE59BD9B4E019ULL * (stream + 1))));
    }

    std::uint64_t Rng::next_u64()
    {
        state_ += 0x9E3779B97F4A7C15ULL;
        std::uint64_t z = state_;
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    double Rng::uniform()
    {
        return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
    }

    std::complex<double> Rng::standard_complex_gaussian()
    {
        // r^2 ~ Exp(1) gives E|z|^2 = 1.
        const double u1 = 1.0 - uniform(); // (0, 1], keeps log() finite
        const double u2 = uniform();
        const double r = std::sqrt(-std::log(u1));
        return std::polar(r, 2.0 * 3.14159265358979323846 * u2);
    }

    double Rng::standard_normal()
    {
        const double u1 = 1.0 - uniform();
        const double u2 = uniform();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * 3.14159265358979323846 * u2);
    }
}
