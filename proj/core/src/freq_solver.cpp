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

#include "fdris/freq_solver.hpp"

#include <cmath>
#include <iostream>
#include <stdexcept>

namespace fdris
{
    namespace
    {
        constexpr double kLn2 = 0.6931471805599453;
    }

    CVec FreqObjective::phase_vector(int k, const RVec& f) const
    {
        const RVec& dist = user_distances[static_cast<size_t>(k)];
        const cxd front = amplitude * jexp(-initial_phase);
        CVec v(dist.size());
        for (int i = 0; i < dist.size(); ++i)
        {
            const double fl = f(subarray[static_cast<size_t>(i)] - 1);
            v(i) = front * jexp(kTwoPi * harmonic * fl * dist(i) / kSpeedOfLight);
        }
        return v;
    }

    FreqObjective assemble_freq_objective(const SystemConfig& config, const ArrayLayout& layout,
                                          const ChannelSet& channels, const std::vector<CVec>& w,
                                          const MmseAux& aux, const CVec& theta_tilde_coeffs)
    {
        const int total = layout.elements();
        const int n_users = config.n_users();

        CMat beams(config.n_tx, n_users);
        for (int j = 0; j < n_users; ++j)
            beams.col(j) = w[static_cast<size_t>(j)];

        FreqObjective obj;
        obj.D.resize(static_cast<size_t>(n_users));
        obj.d.resize(static_cast<size_t>(n_users));
        obj.user_distances.resize(static_cast<size_t>(n_users));
        obj.subarray.resize(static_cast<size_t>(total));
        for (int i = 1; i <= total; ++i)
            obj.subarray[static_cast<size_t>(i - 1)] = layout.subarray_of_element(i);
        obj.n_subarrays = layout.subarrays();
        obj.harmonic = config.harmonic;
        obj.amplitude = config.amplitude;
        obj.initial_phase = config.initial_phase;
        obj.f_min = config.f_min;
        obj.f_max = config.f_max;
        obj.C = 0.0;

        for (int k = 0; k < n_users; ++k)
        {
            const double wk = config.weights(k) * aux.weight(k) / kLn2;
            const cxd u = aux.receive(k);
            const CVec scale =
                channels.h_ru[static_cast<size_t>(k)].cwiseProduct(theta_tilde_coeffs);
            // M_k = Diag(h_ru,k) Theta_tilde H_BR folded against all beams.
            const CMat mixed = scale.asDiagonal() * (channels.h_br * beams); // I x K
            CMat Dk = (wk * std::norm(u)) * (mixed * mixed.adjoint());
            obj.D[static_cast<size_t>(k)] = 0.5 * (Dk + Dk.adjoint()).eval();
            obj.d[static_cast<size_t>(k)] = wk * std::conj(u) * mixed.col(k);
            obj.C -= config.weights(k) *
                     (aux.weight(k) * (1.0 + std::norm(u) * config.noise_power) -
                      std::log(aux.weight(k)) - 1.0) /
                     kLn2;
            const RVec gamma = layout.path_offsets(config.users[static_cast<size_t>(k)]);
            obj.user_distances[static_cast<size_t>(k)] =
                RVec::Constant(total, config.users[static_cast<size_t>(k)].distance) + gamma;
        }
        return obj;
    }

    double eval_freq_objective(const RVec& f, const FreqObjective& objective)
    {
        double total = 0.0;
        for (int k = 0; k < static_cast<int>(objective.D.size()); ++k)
        {
            const CVec v = objective.phase_vector(k, f);
            total += std::real(cxd(v.adjoint() * (objective.D[static_cast<size_t>(k)] * v)));
            total -= 2.0 * std::real(cxd(v.adjoint() * objective.d[static_cast<size_t>(k)]));
        }
        return total - objective.C;
    }

    RVec freq_gradient(const RVec& f, const FreqObjective& objective)
    {
        RVec grad = RVec::Zero(objective.n_subarrays);
        const double rate = kTwoPi * objective.harmonic / kSpeedOfLight;
        for (int k = 0; k < static_cast<int>(objective.D.size()); ++k)
        {
            const CVec v = objective.phase_vector(k, f);
            const RVec& dist = objective.user_distances[static_cast<size_t>(k)];
            const CVec residual =
                objective.D[static_cast<size_t>(k)] * v - objective.d[static_cast<size_t>(k)];
            // dv_i/df_l = j (2 pi g d_i / c) v_i, nonzero only for i in subarray l.
            for (int i = 0; i < v.size(); ++i)
            {
                const cxd dv = cxd(0.0, rate * dist(i)) * v(i);
                grad(objective.subarray[static_cast<size_t>(i)] - 1) +=
                    2.0 * std::real(std::conj(dv) * residual(i));
            }
        }
        return grad;
    }

    double MmaSubproblem::value(const RVec& f) const
    {
        double total = a;
        for (int l = 0; l < f.size(); ++l)
            total += p(l) / (upper(l) - f(l)) + q(l) / (f(l) - lower(l));
        return total;
    }

    RVec MmaSubproblem::gradient(const RVec& f) const
    {
        RVec g(f.size());
        for (int l = 0; l < f.size(); ++l)
        {
            const double du = upper(l) - f(l);
            const double dl = f(l) - lower(l);
            g(l) = p(l) / (du * du) - q(l) / (dl * dl);
        }
        return g;
    }

    MmaSubproblem build_mma(const RVec& f_center, double g_value, const RVec& gradient,
                            const MmaHistory& history, double rho, int z,
                            const FreqObjective& objective)
    {
        const int n = static_cast<int>(f_center.size());
        const double span = objective.f_max - objective.f_min;
        if (!(rho > 0.0))
            throw std::invalid_argument("build_mma: conservative factor must be positive");

        MmaSubproblem sub;
        sub.f_center = f_center;
        sub.rho = rho;
        sub.upper.resize(n);
        sub.lower.resize(n);
        sub.p.resize(n);
        sub.q.resize(n);
        sub.f_low.resize(n);
        sub.f_up.resize(n);

        const bool have_history = z >= 3 && history.f_prev2.size() == n &&
                                  history.upper_prev.size() == n;
        for (int l = 0; l < n; ++l)
        {
            if (!have_history)
            {
                sub.upper(l) = f_center(l) + span;
                sub.lower(l) = f_center(l) - span;
            }
            else
            {
                // Per-coordinate asymptote adaptation: contract on oscillation,
                // relax on steady progress.
                double gamma = 1.0;
                if (history.f_prev3.size() == n)
                {
                    const double swing = (f_center(l) - history.f_prev2(l)) *
                                         (history.f_prev2(l) - history.f_prev3(l));
                    if (swing < 0.0)
                        gamma = 0.7;
                    else if (swing > 0.0)
                        gamma = 1.2;
                }
                sub.upper(l) = f_center(l) + gamma * (history.upper_prev(l) - history.f_prev2(l));
                sub.lower(l) = f_center(l) - gamma * (history.f_prev2(l) - history.lower_prev(l));
            }

            const double gplus = std::max(0.0, gradient(l));
            const double gminus = std::max(0.0, -gradient(l));
            const double base = (span > 0.0) ? rho / span : rho;
            // Asymmetric coefficients keep the first-derivative match exact:
            // dghat/df_l(f_center) = y_p - y_q = gplus - gminus = dg/df_l.
            const double y_p = 1.001 * gplus + 0.001 * gminus + base;
            const double y_q = 0.001 * gplus + 1.001 * gminus + base;
            const double du = sub.upper(l) - f_center(l);
            const double dl = f_center(l) - sub.lower(l);
            sub.p(l) = du * du * y_p;
            sub.q(l) = dl * dl * y_q;

            sub.f_low(l) = std::max({objective.f_min, sub.lower(l) + 0.1 * dl,
                                     f_center(l) - 0.5 * span});
            sub.f_up(l) = std::min({objective.f_max, sub.upper(l) - 0.1 * du,
                                    f_center(l) + 0.5 * span});
        }

        double offset = 0.0;
        for (int l = 0; l < n; ++l)
            offset += sub.p(l) / (sub.upper(l) - f_center(l)) +
                      sub.q(l) / (f_center(l) - sub.lower(l));
        sub.a = g_value - offset;
        return sub;
    }

    RVec solve_mma(const MmaSubproblem& sub)
    {
        const int n = static_cast<int>(sub.f_center.size());
        RVec f(n);
        for (int l = 0; l < n; ++l)
        {
            double candidate;
            if (sub.p(l) <= 0.0 && sub.q(l) <= 0.0)
                candidate = sub.f_center(l); // flat coordinate
            else if (sub.p(l) <= 0.0)
                candidate = sub.f_up(l); // ghat strictly decreasing
            else
            {
                const double ratio = std::sqrt(sub.q(l) / sub.p(l));
                candidate = (sub.upper(l) * ratio + sub.lower(l)) / (1.0 + ratio);
            }
            f(l) = std::min(std::max(candidate, sub.f_low(l)), sub.f_up(l));
        }
        return f;
    }

    GcmmaResult gcmma_step(const RVec& f0, const FreqObjective& objective,
                           const GcmmaOptions& opts, const GcmmaCallback& callback)
    {
        GcmmaResult out;
        out.f = f0;
        out.g_value = eval_freq_objective(f0, objective);
        out.g_trace.push_back(out.g_value);

        const double span = objective.f_max - objective.f_min;
        if (!(span > 0.0))
            return out; // box degenerate: frequencies fixed

        const double rho_floor = 1e-5 * std::max(1.0, std::abs(out.g_value)) / span;
        MmaHistory history;
        RVec f_prev = f0;
        double g_prev = out.g_value;

        for (int z = 1; z <= opts.outer_cap; ++z)
        {
            const RVec grad = freq_gradient(f_prev, objective);
            if (grad.cwiseAbs().maxCoeff() == 0.0)
            {
                // Flat objective (e.g. zero harmonic): nothing to move.
                out.outer_iters = z;
                out.g_trace.push_back(g_prev);
                if (callback)
                    callback(z, g_prev, g_prev, f_prev);
                break;
            }
            double rho = std::max(span / (10.0 * f_prev.size()) * grad.cwiseAbs().sum(), rho_floor);
            if (z == 1)
                out.rho_initial = rho;

            MmaSubproblem sub = build_mma(f_prev, g_prev, grad, history, rho, z, objective);
            RVec f_cand = solve_mma(sub);
            double ghat = sub.value(f_cand);
            double g_cand = eval_freq_objective(f_cand, objective);

            const double slack = 1e-12 * std::max(1.0, std::abs(g_cand));
            int x = 0;
            while (ghat < g_cand - slack && x < opts.inner_cap)
            {
                const double delta = g_cand - ghat;
                rho = std::min(1.1 * (rho + delta), 10.0 * rho);
                sub = build_mma(f_prev, g_prev, grad, history, rho, z, objective);
                f_cand = solve_mma(sub);
                ghat = sub.value(f_cand);
                g_cand = eval_freq_objective(f_cand, objective);
                ++x;
            }
            if (ghat < g_cand - slack)
            {
                // Inner cap reached without a conservative approximation: fall
                // back to the last conservative iterate, the expansion point.
                out.conservative = false;
                std::cerr << "gcmma_step: inner cap reached, keeping the expansion point\n";
                f_cand = f_prev;
                g_cand = g_prev;
                ghat = g_prev;
            }

            history.f_prev3 = history.f_prev2;
            history.f_prev2 = f_prev;
            history.upper_prev = sub.upper;
            history.lower_prev = sub.lower;

            f_prev = f_cand;
            const double g_old = g_prev;
            g_prev = g_cand;
            out.f = f_prev;
            out.g_value = g_prev;
            out.outer_iters = z;
            out.g_trace.push_back(g_prev);
            if (callback)
                callback(z, g_prev, ghat, f_prev);

            if (std::abs(g_prev - g_old) <= opts.tolerance_rel * std::max(1.0, std::abs(g_prev)))
                break;
        }
        return out;
    }
}
