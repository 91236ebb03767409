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

#ifndef FDRIS_ORCHESTRATOR_HPP
#define FDRIS_ORCHESTRATOR_HPP

#include <string>
#include <vector>

#include "fdris/active_solver.hpp"
#include "fdris/channel.hpp"
#include "fdris/delay_solver.hpp"
#include "fdris/freq_solver.hpp"
#include "fdris/rate_core.hpp"

namespace fdris
{
    enum class Scheme
    {
        ProposedFdRis,   // joint active + delay + frequency optimization
        ConventionalRis, // g = 0: angle-only surface, frequency stage skipped
        ZeroForcing      // closed-form ZF beams + passive optimization
    };

    std::string scheme_name(Scheme scheme);
    Scheme scheme_from_name(const std::string& name);

    struct SolveOptions
    {
        double tolerance = 1e-4; // bits/s/Hz, on the outer WSR change
        int max_outer = 200;
        double active_eps = 1e-10;
        RcgOptions delay;
        GcmmaOptions freq = {1e-6, 100, 50}; // deeper inner budget for the alternation
    };

    struct TraceRow
    {
        int iteration = 0;
        double wsr = 0.0;
        double surrogate = 0.0;
        RVec rates;
        double mu = 0.0;
        int delay_iters = 0;
        int freq_iters = 0;
        double wall_seconds = 0.0;
    };

    struct SolveTrace
    {
        std::vector<TraceRow> rows;
        bool converged = false;
    };

    struct SolveResult
    {
        SolutionState state;
        SolveTrace trace;
    };

    // Feasible deterministic starting point: matched-filter beams at full
    // power, zero delays, uniformly spaced frequencies.
    SolutionState initial_state(const SystemConfig& config, const ArrayLayout& layout,
                                const ChannelSet& channels);

    // Outer alternation (aux -> beams -> aux -> delays -> aux -> frequencies)
    // until the WSR change drops below the tolerance; the true WSR trace is
    // nondecreasing.
    SolveResult solve(const SystemConfig& config, const ChannelSet& channels,
                      const SolveOptions& opts = {});

    // Same alternation with g forced to 0: the frequency-distance phases vanish
    // and the frequency stage is skipped; the surface coefficients remain free.
    SolveResult solve_conventional_ris(const SystemConfig& config, const ChannelSet& channels,
                                       const SolveOptions& opts = {});

    // Zero-forcing beams (pseudo-inverse columns, water-filling power
    // allocation) alternated with the same passive solvers. Requires K <= N_t;
    // a rank-deficient stacked channel falls back to a regularized inverse with
    // a warning on stderr.
    SolveResult solve_zf(const SystemConfig& config, const ChannelSet& channels,
                         const SolveOptions& opts = {});

    SolveResult solve_scheme(Scheme scheme, const SystemConfig& config, const ChannelSet& channels,
                             const SolveOptions& opts = {});

    struct ZfBeams
    {
        std::vector<CVec> w;
        RVec allocated_power; // P_k from water-filling
        bool regularized = false;
    };

    // w_k = sqrt(P_k) column_k / ||column_k|| with columns of Z^H (Z Z^H)^-1;
    // P_k maximizes sum_k omega_k log2(1 + P_k gain_k / sigma^2) subject to
    // sum P_k = p_tmax (water level found by bisection).
    ZfBeams zf_beamform(const EffectiveChannels& eff, const RVec& weights, double p_tmax,
                        double noise_power);
}

#endif
