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

#include "fdris/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <iostream>
#include <stdexcept>

namespace fdris
{
    namespace
    {
        double seconds_since(const std::chrono::steady_clock::time_point& start)
        {
            return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        }

        RVec uniform_frequencies(const SystemConfig& config)
        {
            const int n = config.shape.subarrays();
            RVec f(n);
            if (n == 1)
            {
                f(0) = 0.5 * (config.f_min + config.f_max);
                return f;
            }
            const double step = (config.f_max - config.f_min) / static_cast<double>(n - 1);
            for (int l = 0; l < n; ++l)
                f(l) = config.f_min + step * l;
            return f;
        }

        // One alternation pass shared by the proposed scheme and the baselines.
        SolveResult run_alternation(const SystemConfig& config, const ChannelSet& channels,
                                    const SolveOptions& opts, Scheme scheme)
        {
            config.validate();
            const auto start = std::chrono::steady_clock::now();
            const ArrayLayout layout(config.shape);
            SolutionState state = initial_state(config, layout, channels);

            EffectiveChannels eff =
                effective_channels(config, layout, channels, state.theta_tilde, state.f);
            state.wsr = weighted_sum_rate(state.w, eff, config.noise_power, config.weights);

            const bool optimize_freq =
                scheme != Scheme::ConventionalRis && config.harmonic != 0 &&
                config.f_max > config.f_min && config.shape.subarrays() > 0;

            SolveResult result;
            double prev_wsr = state.wsr;
            for (int q = 1; q <= opts.max_outer; ++q)
            {
                TraceRow row;
                row.iteration = q;

                // Beam stage: dual bisection for the proposed/conventional
                // schemes, closed-form ZF otherwise.
                state.aux = update_aux(state.w, eff, config.noise_power);
                if (scheme == Scheme::ZeroForcing)
                {
                    const ZfBeams zf =
                        zf_beamform(eff, config.weights, config.p_tmax, config.noise_power);
                    state.w = zf.w;
                    row.mu = 0.0;
                }
                else
                {
                    const ActiveSolveResult active =
                        solve_active(eff, state.aux, config.weights, config.p_tmax, opts.active_eps);
                    state.w = active.w;
                    row.mu = active.mu;
                }

                // Delay stage.
                state.aux = update_aux(state.w, eff, config.noise_power);
                const DelaySolveResult delays =
                    solve_delays(config, layout, channels, state, state.aux, opts.delay);
                state.theta_tilde = delays.theta_tilde;
                if (delays.tau.size() > 0)
                    state.tau = delays.tau;
                row.delay_iters = delays.iterations;
                eff = effective_channels(config, layout, channels, state.theta_tilde, state.f);

                // Frequency stage.
                if (optimize_freq)
                {
                    state.aux = update_aux(state.w, eff, config.noise_power);
                    const FreqObjective objective = assemble_freq_objective(
                        config, layout, channels, state.w, state.aux, state.theta_tilde);
                    const GcmmaResult freq = gcmma_step(state.f, objective, opts.freq);
                    state.f = freq.f;
                    row.freq_iters = freq.outer_iters;
                    if (config.harmonic != 0)
                        state.tau =
                            delays_from_phases(state.theta_tilde, state.f, config.harmonic, layout);
                    eff = effective_channels(config, layout, channels, state.theta_tilde, state.f);
                }

                state.wsr = weighted_sum_rate(state.w, eff, config.noise_power, config.weights);
                row.wsr = state.wsr;
                row.surrogate =
                    surrogate_wsr(state.w, eff, config.noise_power, config.weights, state.aux);
                row.rates = per_user_rates(state.w, eff, config.noise_power);
                row.wall_seconds = seconds_since(start);
                result.trace.rows.push_back(row);

                if (std::abs(state.wsr - prev_wsr) <= opts.tolerance)
                {
                    result.trace.converged = true;
                    break;
                }
                prev_wsr = state.wsr;
            }

            result.state = std::move(state);
            return result;
        }
    }

    std::string scheme_name(Scheme scheme)
    {
        switch (scheme)
        {
        case Scheme::ProposedFdRis: return "fdris";
        case Scheme::ConventionalRis: return "ris";
        case Scheme::ZeroForcing: return "zf";
        }
        return "unknown";
    }

    Scheme scheme_from_name(const std::string& name)
    {
        if (name == "fdris")
            return Scheme::ProposedFdRis;
        if (name == "ris")
            return Scheme::ConventionalRis;
        if (name == "zf")
            return Scheme::ZeroForcing;
        throw std::invalid_argument("unknown scheme '" + name + "' (expected fdris, ris or zf)");
    }

    SolutionState initial_state(const SystemConfig& config, const ArrayLayout& layout,
                                const ChannelSet& channels)
    {
        SolutionState state;
        state.f = uniform_frequencies(config);
        state.tau = RVec::Zero(layout.elements());
        state.theta_tilde = CVec::Ones(layout.elements());

        const EffectiveChannels eff =
            effective_channels(config, layout, channels, state.theta_tilde, state.f);
        const int n_users = config.n_users();
        state.w.resize(static_cast<size_t>(n_users));
        double total = 0.0;
        for (int k = 0; k < n_users; ++k)
        {
            state.w[static_cast<size_t>(k)] = eff.rows.row(k).adjoint();
            total += state.w[static_cast<size_t>(k)].squaredNorm();
        }
        const double scale = (total > 0.0) ? std::sqrt(config.p_tmax / total) : 0.0;
        for (CVec& wk : state.w)
            wk *= scale;
        return state;
    }

    SolveResult solve(const SystemConfig& config, const ChannelSet& channels,
                      const SolveOptions& opts)
    {
        return run_alternation(config, channels, opts, Scheme::ProposedFdRis);
    }

    SolveResult solve_conventional_ris(const SystemConfig& config, const ChannelSet& channels,
                                       const SolveOptions& opts)
    {
        SystemConfig reduced = config;
        reduced.harmonic = 0; // disables the frequency-distance phases
        return run_alternation(reduced, channels, opts, Scheme::ConventionalRis);
    }

    SolveResult solve_zf(const SystemConfig& config, const ChannelSet& channels,
                         const SolveOptions& opts)
    {
        if (config.n_users() > config.n_tx)
            throw std::invalid_argument("solve_zf: needs K <= N_t");
        return run_alternation(config, channels, opts, Scheme::ZeroForcing);
    }

    SolveResult solve_scheme(Scheme scheme, const SystemConfig& config, const ChannelSet& channels,
                             const SolveOptions& opts)
    {
        switch (scheme)
        {
        case Scheme::ProposedFdRis: return solve(config, channels, opts);
        case Scheme::ConventionalRis: return solve_conventional_ris(config, channels, opts);
        case Scheme::ZeroForcing: return solve_zf(config, channels, opts);
        }
        throw std::invalid_argument("solve_scheme: unknown scheme");
    }

    ZfBeams zf_beamform(const EffectiveChannels& eff, const RVec& weights, double p_tmax,
                        double noise_power)
    {
        const int n_users = eff.n_users();
        const int n_tx = static_cast<int>(eff.rows.cols());
        if (n_users > n_tx)
            throw std::invalid_argument("zf_beamform: needs K <= N_t");

        const CMat z = eff.rows; // K x N_t
        CMat gram = z * z.adjoint();
        Eigen::FullPivLU<CMat> lu(gram);
        ZfBeams out;
        if (lu.rank() < n_users)
        {
            std::cerr << "zf_beamform: stacked channel is rank-deficient, regularizing\n";
            const double ridge = 1e-12 * std::max(1.0, gram.cwiseAbs().maxCoeff());
            gram += ridge * CMat::Identity(n_users, n_users);
            out.regularized = true;
        }
        const CMat pinv_cols = z.adjoint() * gram.inverse(); // N_t x K

        // Per-user gains of the interference-free parallel channels.
        RVec gain(n_users);
        std::vector<CVec> directions(static_cast<size_t>(n_users));
        for (int k = 0; k < n_users; ++k)
        {
            const double col_norm = pinv_cols.col(k).norm();
            directions[static_cast<size_t>(k)] =
                (col_norm > 0.0) ? CVec(pinv_cols.col(k) / col_norm)
                                 : CVec(CVec::Zero(n_tx));
            gain(k) = (col_norm > 0.0) ? 1.0 / (col_norm * col_norm) : 0.0;
        }

        // Water-filling on sum_k omega_k log2(1 + P_k gain_k / sigma^2):
        // P_k(nu) = max(0, omega_k / nu - sigma^2 / gain_k), bisect nu so that
        // sum_k P_k = p_tmax.
        RVec power = RVec::Zero(n_users);
        if (p_tmax > 0.0 && gain.maxCoeff() > 0.0)
        {
            const auto allocation = [&](double nu) {
                RVec p(n_users);
                for (int k = 0; k < n_users; ++k)
                    p(k) = (gain(k) > 0.0 && weights(k) > 0.0)
                               ? std::max(0.0, weights(k) / nu - noise_power / gain(k))
                               : 0.0;
                return p;
            };
            double nu_hi = 0.0;
            for (int k = 0; k < n_users; ++k)
                if (gain(k) > 0.0)
                    nu_hi = std::max(nu_hi, weights(k) * gain(k) / noise_power);
            if (nu_hi > 0.0)
            {
                double nu_lo = nu_hi;
                while (allocation(nu_lo).sum() < p_tmax)
                    nu_lo *= 0.5;
                for (int it = 0; it < 200; ++it)
                {
                    const double nu = 0.5 * (nu_lo + nu_hi);
                    if (allocation(nu).sum() > p_tmax)
                        nu_lo = nu;
                    else
                        nu_hi = nu;
                }
                power = allocation(0.5 * (nu_lo + nu_hi));
                const double total = power.sum();
                if (total > 0.0)
                    power *= p_tmax / total; // exact budget
            }
        }

        out.w.resize(static_cast<size_t>(n_users));
        for (int k = 0; k < n_users; ++k)
            out.w[static_cast<size_t>(k)] =
                std::sqrt(power(k)) * directions[static_cast<size_t>(k)];
        out.allocated_power = power;
        return out;
    }
}
