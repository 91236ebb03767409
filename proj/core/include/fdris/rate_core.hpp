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

#ifndef FDRIS_RATE_CORE_HPP
#define FDRIS_RATE_CORE_HPP

#include <vector>

#include "fdris/channel.hpp"
#include "fdris/common.hpp"
#include "fdris/system_config.hpp"

namespace fdris
{
    // Cascaded rows g_k = h_ru,k^T Theta_tilde Theta_k H_BR, one per user.
    // Must be recomputed whenever tau/theta_tilde, f, or the realization change.
    struct EffectiveChannels
    {
        CMat rows; // K x N_t

        Eigen::RowVectorXcd row(int k) const { return rows.row(k); }
        int n_users() const { return static_cast<int>(rows.rows()); }
    };

    EffectiveChannels effective_channels(const SystemConfig& config, const ArrayLayout& layout,
                                         const ChannelSet& channels, const CVec& theta_tilde_coeffs,
                                         const RVec& frequencies);

    // Per-user MMSE auxiliary variables; W * E == 1 at the update point.
    struct MmseAux
    {
        RVec weight;      // W_k > 0
        CVec receive;     // u_k
        RVec mse;         // E_k > 0

        int n_users() const { return static_cast<int>(weight.size()); }
    };

    // Current iterate of all optimization variables.
    struct SolutionState
    {
        std::vector<CVec> w;  // beamformers, length N_t each
        CVec theta_tilde;     // delay-induced unit-modulus coefficients, length I
        RVec tau;             // delays in seconds, length I
        RVec f;               // modulation frequencies, length L
        MmseAux aux;
        double wsr = 0.0;     // weighted sum rate, bits/s/Hz

        double total_power() const;
    };

    // R_k = log2(1 + |g_k w_k|^2 / (sum_{j != k} |g_k w_j|^2 + sigma^2)).
    double rate_of_user(int k, const std::vector<CVec>& w, const EffectiveChannels& eff,
                        double noise_power);

    RVec per_user_rates(const std::vector<CVec>& w, const EffectiveChannels& eff,
                        double noise_power);

    double weighted_sum_rate(const std::vector<CVec>& w, const EffectiveChannels& eff,
                             double noise_power, const RVec& weights);

    // Optimal (u_k, E_k, W_k) for the current beams and passive state. The MSE
    // is accumulated from nonnegative terms so W_k stays accurate at high SINR;
    // an all-zero signal-and-noise situation degenerates to u = 0, E = 1, W = 1.
    MmseAux update_aux(const std::vector<CVec>& w, const EffectiveChannels& eff,
                       double noise_power);

    // Sum_k omega_k (ln W_k - W_k E_k(state) + 1) / ln 2 with aux held fixed.
    // Equals the true weighted sum rate when aux was just updated at this state
    // and lower-bounds it everywhere else.
    double surrogate_wsr(const std::vector<CVec>& w, const EffectiveChannels& eff,
                         double noise_power, const RVec& weights, const MmseAux& aux);
}

#endif
