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

#ifndef FDRIS_SWEEP_HPP
#define FDRIS_SWEEP_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fdris/orchestrator.hpp"
#include "fdris/scenario.hpp"

namespace fdris
{
    // Channel seed of one replicate; identical for every scheme and sweep
    // point so comparisons are paired.
    std::uint64_t replicate_seed(std::uint64_t base_seed, int replicate);

    struct SweepRecord
    {
        int point = 0;            // sweep point index
        std::string label;        // human-readable point value
        double value = 0.0;       // numeric value (point index for weight sweeps)
        int replicate = 0;
        Scheme scheme = Scheme::ProposedFdRis;
        std::uint64_t channel_seed = 0;
        bool ok = false;
        std::string error;        // set when ok == false
        double wsr = 0.0;
        RVec rates;
        int iterations = 0;
        bool converged = false;
        double wall_seconds = 0.0;
    };

    struct SweepRun
    {
        Scenario scenario;
        std::vector<SweepRecord> records; // sorted by (point, replicate, scheme)
        // Convergence traces of the first replicate, keyed by (point, scheme).
        std::map<std::pair<int, int>, SolveTrace> traces;

        // Records of one (point, scheme), ordered by replicate.
        std::vector<const SweepRecord*> select(int point, Scheme scheme) const;
    };

    // Executes every (sweep point x replicate x scheme) task; failures are
    // recorded and the sweep continues. Tasks may run on up to `workers`
    // threads; results are identical regardless of the worker count.
    SweepRun run_sweep(const Scenario& scenario, const SolveOptions& opts = {}, int workers = 1);

    // Mean and standard error of the per-replicate paired differences a - b.
    struct PairedStats
    {
        double mean = 0.0;
        double stderr_mean = 0.0;
        int n = 0;
    };
    PairedStats paired_difference(const std::vector<const SweepRecord*>& a,
                                  const std::vector<const SweepRecord*>& b);

    // trace CSV columns: iteration,wsr,surrogate,rate_1..K,mu
    void write_trace_csv(const SolveTrace& trace, const std::string& path);

    // results CSV: one row per sweep-point x replicate x scheme.
    void write_sweep_csv(const SweepRun& run, const std::string& path);

    // Config echo, library version, seed and per-point aggregate statistics.
    std::string summary_to_json_text(const SweepRun& run);

    // Writes sweep_results.csv, summary.json and the first-replicate trace
    // files into out_dir (created if missing).
    void export_results(const SweepRun& run, const std::string& out_dir);

    // Solved-state report used by the single-solve command.
    std::string solution_to_json_text(const SolutionState& state, const SystemConfig& config,
                                      const SolveTrace& trace);
}

#endif
