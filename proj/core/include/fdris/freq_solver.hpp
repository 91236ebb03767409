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

#ifndef FDRIS_FREQ_SOLVER_HPP
#define FDRIS_FREQ_SOLVER_HPP

#include <functional>
#include <vector>

#include "fdris/common.hpp"
#include "fdris/rate_core.hpp"

namespace fdris
{
    // Frequency-domain objective g(f) = sum_k v_k^H D_k v_k - 2 Re(v_k^H d_k) - C,
    // where v_k = conj(diag(Theta_k)) depends on f through each subarray's
    // frequency-distance phases. Minimizing g maximizes the surrogate sum rate.
    struct FreqObjective
    {
        std::vector<CMat> D;       // per user, I x I Hermitian PSD, weights folded in
        std::vector<CVec> d;       // per user, length I
        double C = 0.0;

        // Geometry needed to map f -> v_k.
        std::vector<RVec> user_distances; // per user, d^{rk}_i = d_rk + Gamma_i
        std::vector<int> subarray;        // per element, 1-based subarray index
        int n_subarrays = 0;
        int harmonic = 0;
        double amplitude = 1.0;
        double initial_phase = 0.0;
        double f_min = 0.0;
        double f_max = 0.0;

        // v_k(f) for one user.
        CVec phase_vector(int k, const RVec& f) const;
    };

    FreqObjective assemble_freq_objective(const SystemConfig& config, const ArrayLayout& layout,
                                          const ChannelSet& channels, const std::vector<CVec>& w,
                                          const MmseAux& aux, const CVec& theta_tilde_coeffs);

    double eval_freq_objective(const RVec& f, const FreqObjective& objective);

    // Analytic dg/df_l; entries of dv_k/df_l vanish outside subarray l.
    RVec freq_gradient(const RVec& f, const FreqObjective& objective);

    // Separable convex approximation around f_center:
    //   ghat(f) = sum_l p_l / (u_l - f_l) + q_l / (f_l - o_l) + a.
    struct MmaSubproblem
    {
        RVec f_center; // expansion point f^{(z-1)}
        RVec upper;    // asymptotes u_l
        RVec lower;    // asymptotes o_l
        RVec p;
        RVec q;
        RVec f_low;    // move limits
        RVec f_up;
        double a = 0.0;
        double rho = 0.0;

        double value(const RVec& f) const;
        RVec gradient(const RVec& f) const;
    };

    // Asymptote history carried between outer iterations.
    struct MmaHistory
    {
        RVec f_prev2;  // f^{(z-2)}, empty before the second iteration
        RVec f_prev3;  // f^{(z-3)}, empty before the third iteration
        RVec upper_prev;
        RVec lower_prev;
    };

    // Builds the subproblem at f_center for outer iteration z (1-based). The
    // approximation matches g and its gradient at f_center.
    MmaSubproblem build_mma(const RVec& f_center, double g_value, const RVec& gradient,
                            const MmaHistory& history, double rho, int z,
                            const FreqObjective& objective);

    // Closed-form box-constrained minimizer of the separable approximation.
    RVec solve_mma(const MmaSubproblem& sub);

    struct GcmmaOptions
    {
        double tolerance_rel = 1e-6; // outer stop on |delta g| <= tol * max(1, |g|)
        int outer_cap = 100;
        int inner_cap = 20;
    };

    struct GcmmaResult
    {
        RVec f;
        double g_value = 0.0;
        int outer_iters = 0;
        bool conservative = true;           // false if any inner loop hit its cap
        double rho_initial = 0.0;           // conservative factor used at z = 1
        std::vector<double> g_trace;        // g at each accepted outer iterate
    };

    // Called once per accepted outer iterate with (z, g(f), ghat(f), f).
    using GcmmaCallback = std::function<void(int, double, double, const RVec&)>;

    // Outer/inner GCMMA loop: each accepted iterate satisfies ghat >= g
    // (conservative approximation), giving monotone descent of g. The
    // conservative factor rho is re-derived from the gradient each outer
    // iteration and inflated via rho <- min(1.1 (rho + delta), 10 rho) inside.
    GcmmaResult gcmma_step(const RVec& f0, const FreqObjective& objective,
                           const GcmmaOptions& opts = {}, const GcmmaCallback& callback = {});
}

#endif
