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

#ifndef FDRIS_ACTIVE_SOLVER_HPP
#define FDRIS_ACTIVE_SOLVER_HPP

#include <vector>

#include "fdris/common.hpp"
#include "fdris/rate_core.hpp"

namespace fdris
{
    // Quadratic data of the beamforming surrogate:
    //   A_hat = sum_k (omega_k W_k / ln 2) |u_k|^2 g_k^H g_k  (Hermitian PSD),
    //   a_k   = g_k^H u_k.
    struct ActiveQuadratics
    {
        CMat a_hat;
        std::vector<CVec> a;
    };

    ActiveQuadratics assemble_quadratics(const EffectiveChannels& eff, const MmseAux& aux,
                                         const RVec& weights);

    // w_j(mu) = (A_hat + mu I)^dagger (omega_j W_j / ln 2) a_j. At mu = 0 a true
    // pseudo-inverse is used (Hermitian eigendecomposition, relative eigenvalue
    // cutoff 1e-12); for mu > 0 the matrix is positive definite.
    std::vector<CVec> w_opt(double mu, const ActiveQuadratics& quad, const MmseAux& aux,
                            const RVec& weights);

    // P(mu) = sum_k ||w_k(mu)||^2; nonincreasing in mu >= 0.
    double total_power(double mu, const ActiveQuadratics& quad, const MmseAux& aux,
                       const RVec& weights);

    struct ActiveSolveResult
    {
        std::vector<CVec> w;
        double mu = 0.0;           // dual variable at the returned point
        double power = 0.0;        // P(mu)
        int bisection_iters = 0;   // 0 when the mu = 0 branch was taken
    };

    // Dual bisection: returns w(0) when P(0) <= p_tmax, otherwise brackets mu
    // (doubling from 1, at most 60 times) and bisects until the bracket width
    // is <= eps. Throws std::runtime_error if no bracket is found.
    ActiveSolveResult solve_active(const EffectiveChannels& eff, const MmseAux& aux,
                                   const RVec& weights, double p_tmax, double eps = 1e-10);
}

#endif
