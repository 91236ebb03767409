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

#ifndef FDRIS_DELAY_SOLVER_HPP
#define FDRIS_DELAY_SOLVER_HPP

#include <functional>
#include <vector>

#include "fdris/common.hpp"
#include "fdris/rate_core.hpp"

namespace fdris
{
    // f(theta) = -theta^H B theta + 2 Re(theta^H b) + C over unit-modulus theta,
    // where theta is the conjugate of the delay coefficient vector.
    struct QuadraticForm
    {
        CMat B;       // I x I Hermitian PSD
        CVec b;       // length I
        double C = 0.0;

        double value(const CVec& theta) const;
    };

    // Builds (B, b, C) so that value(conj(theta_tilde)) equals the weighted
    // surrogate sum rate for the given aux, beams and frequencies.
    QuadraticForm assemble_delay_quadratic(const SystemConfig& config, const ArrayLayout& layout,
                                           const ChannelSet& channels, const std::vector<CVec>& w,
                                           const MmseAux& aux, const RVec& frequencies);

    // grad f = -2 B theta + 2 b.
    CVec euclidean_grad(const CVec& theta, const QuadraticForm& quad);

    // Tangent-space projection: grad_i = g_i - Re(g_i conj(theta_i)) theta_i.
    CVec riemannian_grad(const CVec& theta, const CVec& euclid_grad);

    // Polak-Ribiere direction update. Inputs must already live in the tangent
    // space at the current point; beta is reset to 0 (steepest ascent) when it
    // turns negative or the previous gradient vanished, and the combined
    // direction is replaced by the gradient when it is not an ascent direction.
    struct PolakRibiereResult
    {
        double beta = 0.0;
        CVec direction;
    };
    // prev_grad_norm_sq is the squared norm of the untransported previous
    // gradient; pass 0 (or negative) to fall back to the transported one.
    PolakRibiereResult polak_ribiere(const CVec& grad, const CVec& prev_grad_transported,
                                     const CVec& prev_dir_transported,
                                     double prev_grad_norm_sq = 0.0);

    // Entrywise x_i / |x_i|; entries with |x_i| below 1e-300 keep the fallback.
    CVec retract_to_circles(const CVec& x, const CVec& fallback);

    struct RcgOptions
    {
        double tolerance = 1e-8;  // stop when |f(e+1) - f(e)| <= tolerance
        int max_iters = 500;
        double armijo_coeff = 1e-4;
        double backtrack = 0.5;
        int max_backtracks = 50;
    };

    struct RcgResult
    {
        CVec theta;
        double value = 0.0;
        int iterations = 0;
        double grad_norm = 0.0; // Riemannian gradient norm at termination
    };

    // Called once per accepted iterate with (iteration, objective, theta).
    using RcgCallback = std::function<void(int, double, const CVec&)>;

    // Maximizes the quadratic over the product of unit circles by Riemannian
    // conjugate gradient with Armijo backtracking; monotone ascent.
    RcgResult maximize_on_circles(const QuadraticForm& quad, const CVec& theta0,
                                  const RcgOptions& opts = {}, const RcgCallback& callback = {});

    struct DelaySolveResult
    {
        CVec theta_tilde; // conj of the optimized theta
        RVec tau;         // empty when g == 0 (no delay realization exists)
        double value = 0.0;
        int iterations = 0;
    };

    // Full subproblem: assemble, optimize from the state's current coefficients
    // and recover the nonnegative delays (g != 0).
    DelaySolveResult solve_delays(const SystemConfig& config, const ArrayLayout& layout,
                                  const ChannelSet& channels, const SolutionState& state,
                                  const MmseAux& aux, const RcgOptions& opts = {});
}

#endif
