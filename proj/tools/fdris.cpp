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

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "fdris/channel.hpp"
#include "fdris/orchestrator.hpp"
#include "fdris/pattern.hpp"
#include "fdris/scenario.hpp"
#include "fdris/sweep.hpp"

namespace
{
    constexpr int kExitOk = 0;
    constexpr int kExitValidation = 2;
    constexpr int kExitSolver = 3;

    struct CommonArgs
    {
        std::string scenario_path;
        std::string preset;
        std::optional<std::uint64_t> seed;
        std::string out_dir = "out";
        std::string scheme = "fdris";
        double tolerance = 1e-4;
        int max_outer = 200;
    };

    void add_common(CLI::App* cmd, CommonArgs& args, bool with_scheme = true)
    {
        cmd->add_option("--scenario", args.scenario_path, "Scenario JSON file");
        cmd->add_option("--preset", args.preset, "Named preset (paper-sec5)");
        cmd->add_option("--seed", args.seed, "Override the scenario RNG seed");
        cmd->add_option("--out", args.out_dir, "Output directory");
        cmd->add_option("--tol", args.tolerance, "Outer-loop WSR tolerance, bits/s/Hz");
        cmd->add_option("--max-outer", args.max_outer, "Outer-loop iteration cap");
        if (with_scheme)
            cmd->add_option("--scheme", args.scheme, "Scheme: fdris, ris or zf");
    }

    fdris::Scenario resolve_scenario(const CommonArgs& args)
    {
        fdris::Scenario sc;
        if (!args.scenario_path.empty())
            sc = fdris::load_scenario(args.scenario_path);
        else if (!args.preset.empty())
            sc = fdris::preset_scenario(args.preset);
        else
            throw std::invalid_argument("either --scenario or --preset is required");
        if (args.seed.has_value())
            sc.system.seed = *args.seed;
        return sc;
    }

    fdris::SolveOptions solve_options(const CommonArgs& args)
    {
        fdris::SolveOptions opts;
        opts.tolerance = args.tolerance;
        opts.max_outer = args.max_outer;
        return opts;
    }

    int cmd_validate(const CommonArgs& args)
    {
        const fdris::Scenario sc = resolve_scenario(args);
        sc.validate();
        std::cout << "scenario OK: " << sc.system.n_users() << " users, L = "
                  << sc.system.shape.subarrays() << ", N_t = " << sc.system.n_tx << "\n";
        return kExitOk;
    }

    int cmd_solve(const CommonArgs& args)
    {
        const fdris::Scenario sc = resolve_scenario(args);
        const fdris::Scheme scheme = fdris::scheme_from_name(args.scheme);
        const fdris::ArrayLayout layout(sc.system.shape);
        const fdris::ChannelSet channels =
            fdris::realize_channels(sc.system, layout, sc.system.seed);
        const fdris::SolveResult res =
            fdris::solve_scheme(scheme, sc.system, channels, solve_options(args));

        std::filesystem::create_directories(args.out_dir);
        const std::filesystem::path dir(args.out_dir);
        std::ofstream solution(dir / "solution.json");
        solution << fdris::solution_to_json_text(res.state, sc.system, res.trace);
        solution.close();
        fdris::write_trace_csv(res.trace, (dir / "trace.csv").string());

        std::cout << "scheme=" << fdris::scheme_name(scheme) << " wsr=" << res.state.wsr
                  << " bits/s/Hz, iterations=" << res.trace.rows.size()
                  << (res.trace.converged ? " (converged)" : " (iteration cap)") << "\n";
        std::cout << "wrote " << (dir / "solution.json").string() << " and "
                  << (dir / "trace.csv").string() << "\n";
        return kExitOk;
    }

    int cmd_pattern(const CommonArgs& args, const fdris::PatternGridSpec& spec_in,
                    double azimuth_deg)
    {
        const fdris::Scenario sc = resolve_scenario(args);
        const fdris::Scheme scheme = fdris::scheme_from_name(args.scheme);
        const fdris::ArrayLayout layout(sc.system.shape);
        const fdris::ChannelSet channels =
            fdris::realize_channels(sc.system, layout, sc.system.seed);
        const fdris::SolveResult res =
            fdris::solve_scheme(scheme, sc.system, channels, solve_options(args));

        fdris::PatternGridSpec spec = spec_in;
        spec.azimuth = fdris::deg2rad(azimuth_deg);
        // The conventional scheme runs with g = 0; mirror that in the export.
        fdris::SystemConfig cfg = sc.system;
        if (scheme == fdris::Scheme::ConventionalRis)
            cfg.harmonic = 0;
        const fdris::PatternGrid grid =
            fdris::compute_pattern(res.state, cfg, layout, spec);

        std::filesystem::create_directories(args.out_dir);
        const std::filesystem::path dir(args.out_dir);
        fdris::pattern_to_csv(grid, (dir / "pattern.csv").string());
        fdris::save_pattern_json(grid, (dir / "pattern.json").string());
        std::cout << "wrote " << (dir / "pattern.csv").string() << " ("
                  << grid.distances.size() << " x " << grid.angles.size() << " grid), wsr="
                  << res.state.wsr << "\n";
        return kExitOk;
    }

    int cmd_sweep(const CommonArgs& args, int replicates, int workers)
    {
        fdris::Scenario sc = resolve_scenario(args);
        if (replicates > 0)
            sc.experiment.replicates = replicates;
        if (!args.out_dir.empty())
            sc.experiment.out_dir = args.out_dir;
        const fdris::SweepRun run = fdris::run_sweep(sc, solve_options(args), workers);
        fdris::export_results(run, sc.experiment.out_dir);
        int failed = 0;
        for (const fdris::SweepRecord& rec : run.records)
            if (!rec.ok)
                ++failed;
        std::cout << "sweep finished: " << run.records.size() << " solves, " << failed
                  << " failed; results in " << sc.experiment.out_dir << "\n";
        return failed == static_cast<int>(run.records.size()) && !run.records.empty()
                   ? kExitSolver
                   : kExitOk;
    }

    int cmd_baselines(const CommonArgs& args)
    {
        fdris::Scenario sc = resolve_scenario(args);
        const fdris::ArrayLayout layout(sc.system.shape);
        const fdris::ChannelSet channels =
            fdris::realize_channels(sc.system, layout, sc.system.seed);

        std::filesystem::create_directories(args.out_dir);
        const std::filesystem::path dir(args.out_dir);
        std::ofstream csv(dir / "baselines.csv");
        csv << "scheme,wsr,iterations,converged\n";
        csv.precision(12);
        for (const fdris::Scheme scheme : sc.experiment.schemes)
        {
            const fdris::SolveResult res =
                fdris::solve_scheme(scheme, sc.system, channels, solve_options(args));
            std::cout << fdris::scheme_name(scheme) << ": wsr=" << res.state.wsr
                      << " bits/s/Hz in " << res.trace.rows.size() << " iterations\n";
            csv << fdris::scheme_name(scheme) << ',' << res.state.wsr << ','
                << res.trace.rows.size() << ',' << (res.trace.converged ? 1 : 0) << '\n';
            fdris::write_trace_csv(
                res.trace, (dir / ("trace_" + fdris::scheme_name(scheme) + ".csv")).string());
        }
        std::cout << "wrote " << (dir / "baselines.csv").string() << "\n";
        return kExitOk;
    }
}

int main(int argc, char** argv)
{
    CLI::App app{"Multi-subarray frequency-diverse RIS network simulator and optimizer"};
    app.require_subcommand(1);

    CommonArgs args;

    CLI::App* validate = app.add_subcommand("validate", "Load and validate a scenario");
    add_common(validate, args, false);

    CLI::App* solve = app.add_subcommand("solve", "Solve one scenario with one scheme");
    add_common(solve, args);

    CLI::App* pattern =
        app.add_subcommand("pattern", "Solve, then export the distance-angle energy pattern");
    add_common(pattern, args);
    fdris::PatternGridSpec spec;
    double azimuth_deg = 90.0;
    pattern->add_option("--dist-min", spec.dist_min, "Pattern grid: minimum distance, m");
    pattern->add_option("--dist-max", spec.dist_max, "Pattern grid: maximum distance, m");
    pattern->add_option("--dist-points", spec.dist_count, "Pattern grid: distance samples");
    pattern->add_option("--angle-points", spec.angle_count, "Pattern grid: elevation samples");
    pattern->add_option("--azimuth-deg", azimuth_deg, "Fixed azimuth of the pattern cut");

    CLI::App* sweep = app.add_subcommand("sweep", "Run the scenario's experiment block");
    add_common(sweep, args, false);
    int replicates = 0;
    int workers = 1;
    sweep->add_option("--replicates", replicates, "Override the replicate count");
    sweep->add_option("--workers", workers, "Concurrent solver workers");

    CLI::App* baselines =
        app.add_subcommand("baselines", "Solve all schemes on one shared channel realization");
    add_common(baselines, args, false);

    CLI11_PARSE(app, argc, argv);

    try
    {
        if (app.got_subcommand(validate))
            return cmd_validate(args);
        if (app.got_subcommand(solve))
            return cmd_solve(args);
        if (app.got_subcommand(pattern))
            return cmd_pattern(args, spec, azimuth_deg);
        if (app.got_subcommand(sweep))
            return cmd_sweep(args, replicates, workers);
        if (app.got_subcommand(baselines))
            return cmd_baselines(args);
    }
    catch (const std::invalid_argument& err)
    {
        std::cerr << "validation error: " << err.what() << "\n";
        return kExitValidation;
    }
    catch (const std::exception& err)
    {
        std::cerr << "solver error: " << err.what() << "\n";
        return kExitSolver;
    }
    return kExitOk;
}
