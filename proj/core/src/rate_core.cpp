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

#include "fdris/rate_core.hpp"

#include <cmath>
#include <stdexcept>

namespace fdris
{
    namespace
    {
        constexpr double kLn2 = 0.6931471805599453;
    }

    EffectiveChannels effective_channels(const SystemConfig& config, const ArrayLayout& layout,
                                         const ChannelSet& channels, const CVec& theta_tilde_coeffs,
                                         const RVec& frequencies)
    {
        const int n_users = config.n_users();
        ModulationParams mod = config.modulation(frequencies, RVec::Zero(layout.elements()));
        EffectiveChannels eff;
        eff.rows.resize(n_users, config.n_tx);
        for (int k = 0; k < n_users; ++k)
        {
            const CVec tk = theta_k(mod, layout, config.users[static_cast<size_t>(k)]);
            const CVec scale =
                channels.h_ru[static_cast<size_t>(k)].cwiseProduct(theta_tilde_coeffs).cwiseProduct(tk);
            eff.rows.row(k) = scale.transpose() * channels.h_br;
        }
        return eff;
    }

    double SolutionState::total_power() const
    {
        double p = 0.0;
        for (const CVec& wk : w)
            p += wk.squaredNorm();
        return p;
    }

    double rate_of_user(int k, const std::vector<CVec>& w, const EffectiveChannels& eff,
                        double noise_power)
    {
        const int n_users = eff.n_users();
        if (k < 0 || k >= n_users)
            throw std::out_of_range("rate_of_user: user index out of range");
        double signal = 0.0;
        double interference = 0.0;
        for (int j = 0; j < static_cast<int>(w.size()); ++j)
        {
            const double p = std::norm(cxd(eff.rows.row(k) * w[static_cast<size_t>(j)]));
            if (j == k)
                signal = p;
            else
                interference += p;
        }
        return std::log2(1.0 + signal / (interference + noise_power));
    }

    RVec per_user_rates(const std::vector<CVec>& w, const EffectiveChannels& eff,
                        double noise_power)
    {
        RVec rates(eff.n_users());
        for (int k = 0; k < eff.n_users(); ++k)
            rates(k) = rate_of_user(k, w, eff, noise_power);
        return rates;
    }

    double weighted_sum_rate(const std::vector<CVec>& w, const EffectiveChannels& eff,
                             double noise_power, const RVec& weights)
    {
        return weights.dot(per_user_rates(w, eff, noise_power));
    }

    MmseAux update_aux(const std::vector<CVec>& w, const EffectiveChannels& eff,
                       double noise_power)
    {
        const int n_users = eff.n_users();
        MmseAux aux;
        aux.weight.resize(n_users);
        aux.receive.resize(n_users);
        aux.mse.resize(n_users);
        for (int k = 0; k < n_users; ++k)
        {
            cxd desired = 0.0;
            double denom = noise_power;
            double interference = noise_power;
            for (int j = 0; j < static_cast<int>(w.size()); ++j)
            {
                const cxd gw = eff.rows.row(k) * w[static_cast<size_t>(j)];
                denom += std::norm(gw);
                if (j == k)
                    desired = gw;
                else
                    interference += std::norm(gw);
            }
            if (!(denom > 0.0))
            {
                aux.receive(k) = 0.0;
                aux.mse(k) = 1.0;
                aux.weight(k) = 1.0;
                continue;
            }
            const cxd u = desired / denom;
            // Nonnegative-term form of the MSE; avoids the denom - |desired|^2
            // cancellation at high SINR.
            const double mse = std::norm(u) * interference + std::norm(std::conj(u) * desired - 1.0);
            aux.receive(k) = u;
            aux.mse(k) = mse;
            aux.weight(k) = 1.0 / mse;
        }
        return aux;
    }

    double surrogate_wsr(const std::vector<CVec>& w, const EffectiveChannels& eff,
                         double noise_power, const RVec& weights, const MmseAux& aux)
    {
        const int n_users = eff.n_users();
        double total = 0.0;
        for (int k = 0; k < n_users; ++k)
        {
            const cxd u = aux.receive(k);
            cxd desired = 0.0;
            double interference = noise_power;
            for (int j = 0; j < static_cast<int>(w.size()); ++j)
            {
                const cxd gw = eff.rows.row(k) * w[static_cast<size_t>(j)];
                if (j == k)
                    desired = gw;
                else
                    interference += std::norm(gw);
            }
            const double mse = std::norm(u) * interference + std::norm(std::conj(u) * desired - 1.0);
            total += weights(k) * (std::log(aux.weight(k)) - aux.weight(k) * mse + 1.0) / kLn2;
        }
        return total;
    }
}
