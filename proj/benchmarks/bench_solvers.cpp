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

#include <benchmark/benchmark.h>

#include "fdris/orchestrator.hpp"
#include "fdris/pattern.hpp"
#include "fdris/scenario.hpp"

namespace
{
    using namespace fdris;

    struct Fixture
    {
        SystemConfig config;
        ArrayLayout layout;
        ChannelSet channels;
        SolutionState state;
        EffectiveChannels eff;

        explicit Fixture(int subarrays)
            : config(preset_scenario("paper-sec5").system), layout(make_layout(subarrays))
        {
            const auto [r, s] = split_subarrays(subarrays);
            config.shape.R = r;
            config.shape.S = s;
            channels = realize_channels(config, layout, 1);
            state = initial_state(config, layout, channels);
            eff = effective_channels(config, layout, channels, state.theta_tilde, state.f);
            state.aux = update_aux(state.w, eff, config.noise_power);
        }

        static ArrayLayout make_layout(int subarrays)
        {
            SystemConfig cfg = preset_scenario("paper-sec5").system;
            const auto [r, s] = split_subarrays(subarrays);
            cfg.shape.R = r;
            cfg.shape.S = s;
            return ArrayLayout(cfg.shape);
        }
    };
}

static void BM_UpdateAux(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    for (auto _ : state)
    {
        auto aux = update_aux(fx.state.w, fx.eff, fx.config.noise_power);
        benchmark::DoNotOptimize(aux);
    }
}
BENCHMARK(BM_UpdateAux)->Arg(4)->Arg(16);

static void BM_ActiveSolve(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    for (auto _ : state)
    {
        auto res = solve_active(fx.eff, fx.state.aux, fx.config.weights, fx.config.p_tmax);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_ActiveSolve)->Arg(4)->Arg(16);

static void BM_DelayQuadraticAssembly(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    for (auto _ : state)
    {
        auto quad = assemble_delay_quadratic(fx.config, fx.layout, fx.channels, fx.state.w,
                                             fx.state.aux, fx.state.f);
        benchmark::DoNotOptimize(quad);
    }
}
BENCHMARK(BM_DelayQuadraticAssembly)->Arg(4)->Arg(16);

static void BM_DelayRcg(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    const QuadraticForm quad = assemble_delay_quadratic(fx.config, fx.layout, fx.channels,
                                                        fx.state.w, fx.state.aux, fx.state.f);
    RcgOptions opts;
    opts.max_iters = 50;
    for (auto _ : state)
    {
        auto res = maximize_on_circles(quad, fx.state.theta_tilde.conjugate(), opts);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_DelayRcg)->Arg(4)->Arg(16);

static void BM_FreqGradient(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    const FreqObjective obj = assemble_freq_objective(fx.config, fx.layout, fx.channels,
                                                      fx.state.w, fx.state.aux, fx.state.theta_tilde);
    for (auto _ : state)
    {
        auto grad = freq_gradient(fx.state.f, obj);
        benchmark::DoNotOptimize(grad);
    }
}
BENCHMARK(BM_FreqGradient)->Arg(4)->Arg(16);

static void BM_GcmmaStep(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    const FreqObjective obj = assemble_freq_objective(fx.config, fx.layout, fx.channels,
                                                      fx.state.w, fx.state.aux, fx.state.theta_tilde);
    GcmmaOptions opts;
    opts.outer_cap = 10;
    for (auto _ : state)
    {
        auto res = gcmma_step(fx.state.f, obj, opts);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_GcmmaStep)->Arg(4)->Arg(16);

static void BM_FullSolve(benchmark::State& state)
{
    Fixture fx(static_cast<int>(state.range(0)));
    SolveOptions opts;
    opts.max_outer = 10;
    for (auto _ : state)
    {
        auto res = solve(fx.config, fx.channels, opts);
        benchmark::DoNotOptimize(res);
    }
}
BENCHMARK(BM_FullSolve)->Arg(4)->Arg(16);

static void BM_PatternGrid(benchmark::State& state)
{
    Fixture fx(16);
    PatternGridSpec spec;
    spec.dist_count = 50;
    spec.angle_count = 45;
    for (auto _ : state)
    {
        auto grid = compute_pattern(fx.state, fx.config, fx.layout, spec);
        benchmark::DoNotOptimize(grid);
    }
}
BENCHMARK(BM_PatternGrid);

BENCHMARK_MAIN();
