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

#include "fdris/system_config.hpp"

#include <stdexcept>

namespace fdris
{
    void SystemConfig::validate() const
    {
        shape.validate();
        if (!(amplitude > 0.0) || amplitude > 1.0)
            throw std::invalid_argument("SystemConfig: amplitude A0 must lie in (0, 1]");
        if (!(f_min > 0.0))
            throw std::invalid_argument("SystemConfig: f_min must be positive");
        if (f_min > f_max)
            throw std::invalid_argument("SystemConfig: f_min must not exceed f_max");
        if (n_tx < 1)
            throw std::invalid_argument("SystemConfig: need at least one BS antenna");
        bs.validate();
        if (users.empty())
            throw std::invalid_argument("SystemConfig: need at least one user");
        for (const PolarPosition& user : users)
            user.validate();
        if (weights.size() != n_users())
            throw std::invalid_argument("SystemConfig: weights must have one entry per user");
        for (int k = 0; k < weights.size(); ++k)
            if (weights(k) < 0.0)
                throw std::invalid_argument("SystemConfig: weights must be nonnegative");
        if (p_tmax < 0.0)
            throw std::invalid_argument("SystemConfig: power budget must be nonnegative");
        if (!(noise_power > 0.0))
            throw std::invalid_argument("SystemConfig: noise power must be positive");
        if (rician_beta < 0.0)
            throw std::invalid_argument("SystemConfig: Rician factor must be nonnegative");
        if (!(path_loss.zeta0 > 0.0) || path_loss.alpha_br < 0.0 || path_loss.alpha_ru < 0.0)
            throw std::invalid_argument("SystemConfig: invalid path-loss model");
    }

    ModulationParams SystemConfig::modulation(const RVec& frequencies, const RVec& delays) const
    {
        ModulationParams mod;
        mod.g = harmonic;
        mod.amplitude = amplitude;
        mod.initial_phase = initial_phase;
        mod.frequencies = frequencies;
        mod.delays = delays;
        return mod;
    }
}
