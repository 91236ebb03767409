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

#ifndef FDRIS_RNG_HPP
#define FDRIS_RNG_HPP

#include <complex>
#include <cstdint>

namespace fdris
{
    // Deterministic counter-based generator built on the SplitMix64 mixing
    // function (Steele, Lea, Flood 2014). Output depends only on (seed, number
    // of draws), so realizations are bit-identical across platforms and
    // compilers. Not cryptographic.
    class Rng
    {
    public:
        explicit Rng(std::uint64_t seed) : state_(seed) {}

        // Independent child stream for (seed, stream): used to pair Monte-Carlo
        // replicates and to keep per-object draws order-insensitive.
        static Rng derive(std::uint64_t seed, std::uint64_t stream);

        std::uint64_t next_u64();

        // Uniform on [0, 1) with 53 random mantissa bits.
        double uniform();

        // Circularly symmetric complex Gaussian CN(0, 1) via Box-Muller.
        std::complex<double> standard_complex_gaussian();

        // Real standard normal N(0, 1).
        double standard_normal();

    private:
        std::uint64_t state_;
    };

    // The SplitMix64 finalizer as a pure function.
    std::uint64_t splitmix64(std::uint64_t x);
}

#endif
