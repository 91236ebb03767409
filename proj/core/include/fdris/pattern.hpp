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

#ifndef FDRIS_PATTERN_HPP
#define FDRIS_PATTERN_HPP

#include <string>
#include <vector>

#include "fdris/common.hpp"
#include "fdris/rate_core.hpp"

namespace fdris
{
    // Deterministic LoS received energy at a probe position for the current
    // beams and surface coefficients, evaluated at the symbol-reference
    // instant. The AWGN floor is reported separately, never added here.
    // Returns sum over beams of
    //   zeta^2(d) zeta^2(d_br) |sum_i h_i theta_i(pos) v_i a_i  (a_bs^T w_k)|^2.
    double received_energy(const PolarPosition& position, const SolutionState& state,
                           const SystemConfig& config, const ArrayLayout& layout,
                           double t_snap = 0.0);

    // Same quantity with the path-loss prefactors removed (pure array factor);
    // for g = 0 this is constant in distance at any fixed angle.
    double received_energy_normalized(const PolarPosition& position, const SolutionState& state,
                                      const SystemConfig& config, const ArrayLayout& layout,
                                      double t_snap = 0.0);

    struct PatternGridSpec
    {
        double dist_min = 20.0;
        double dist_max = 100.0;
        int dist_count = 200;
        double angle_min = 0.0;        // elevation, radians
        double angle_max = kPi;
        int angle_count = 180;
        double azimuth = kPi / 2.0;    // fixed azimuth of the cut
        double t_snap = 0.0;
    };

    struct PatternGrid
    {
        RVec distances;            // ascending
        RVec angles;               // ascending, radians
        RMat energy;               // dist_count x angle_count, linear power
        RMat normalized;           // path-loss-normalized, linear
        double noise_floor = 0.0;  // sigma^2 of the scenario

        // Indices of strict-or-equal local maxima of the normalized grid
        // (8-neighborhood), as (dist_index, angle_index) pairs.
        std::vector<std::pair<int, int>> local_maxima() const;
    };

    PatternGrid compute_pattern(const SolutionState& state, const SystemConfig& config,
                                const ArrayLayout& layout, const PatternGridSpec& spec);

    // CSV rows: distance_m, angle_deg, energy_linear, energy_db, normalized_db
    // after a header describing the axes. dB values are floored at -200 dB.
    void pattern_to_csv(const PatternGrid& grid, const std::string& path);
    std::string pattern_to_json(const PatternGrid& grid);
    void save_pattern_json(const PatternGrid& grid, const std::string& path);
}

#endif
