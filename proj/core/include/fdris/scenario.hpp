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

#ifndef FDRIS_SCENARIO_HPP
#define FDRIS_SCENARIO_HPP

#include <string>
#include <vector>

#include "fdris/orchestrator.hpp"
#include "fdris/system_config.hpp"

namespace fdris
{
    enum class SweepAxis
    {
        None,
        Subarrays, // L, mapped to a near-square R x S split
        Antennas,  // N_t
        PowerDbm,  // P_tmax in dBm
        Weights    // weight vectors
    };

    std::string sweep_axis_name(SweepAxis axis);
    SweepAxis sweep_axis_from_name(const std::string& name);

    struct Experiment
    {
        SweepAxis axis = SweepAxis::None;
        std::vector<double> values;               // L / N_t / P_tmax(dBm) points
        std::vector<std::vector<double>> weight_sets; // used when axis == Weights
        int replicates = 1;
        std::vector<Scheme> schemes = {Scheme::ProposedFdRis};
        std::string out_dir = "out";
    };

    // SystemConfig plus the experiment block. File boundary uses degrees, dBm,
    // GHz/MHz; everything is converted to SI here.
    struct Scenario
    {
        SystemConfig system;
        Experiment experiment;

        void validate() const;
    };

    // Named presets; "paper-sec5" is the reference multi-user scenario
    // (28 GHz carrier, 4x4 subarrays of 2x2 elements, four users).
    Scenario preset_scenario(const std::string& name);

    // Strict parser: unknown keys are rejected, violated invariants reported
    // with the offending field. A missing seed defaults to 0 with a warning on
    // stderr.
    Scenario scenario_from_json_text(const std::string& text);
    Scenario load_scenario(const std::string& path);

    std::string scenario_to_json_text(const Scenario& scenario);
    void save_scenario(const Scenario& scenario, const std::string& path);

    // Applies one sweep point to a copy of the base config.
    SystemConfig apply_sweep_point(const SystemConfig& base, SweepAxis axis, double value,
                                   const std::vector<double>& weight_set = {});

    // Near-square R x S factorization used by the subarray sweep.
    std::pair<int, int> split_subarrays(int total);
}

#endif
