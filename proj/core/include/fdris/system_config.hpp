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

#ifndef FDRIS_SYSTEM_CONFIG_HPP
#define FDRIS_SYSTEM_CONFIG_HPP

#include <cstdint>
#include <vector>

#include "fdris/array_model.hpp"
#include "fdris/common.hpp"

namespace fdris
{
    // Large-scale gain model: amplitude factor sqrt(zeta0 * d^-alpha), with
    // separate exponents for the BS->surface and surface->user links.
    struct PathLossModel
    {
        double zeta0 = 1.0;    // linear power gain at 1 m
        double alpha_br = 2.2; // BS -> surface exponent
        double alpha_ru = 2.2; // surface -> user exponent
    };

    // Complete scenario description in SI units.
    struct SystemConfig
    {
        ArrayShape shape;
        int harmonic = 1;           // retained harmonic order g
        double amplitude = 1.0;     // A0
        double initial_phase = 0.0; // phi0 in radians
        double f_min = 0.0;         // modulation frequency lower bound, Hz
        double f_max = 0.0;         // upper bound, Hz
        int n_tx = 1;               // BS antennas N_t
        PolarPosition bs;           // BS as seen from the surface
        std::vector<PolarPosition> users;
        RVec weights;              // omega_k, length K
        double p_tmax = 1.0;       // BS power budget, W
        double noise_power = 1e-14; // sigma_k^2, W (same for all users)
        PathLossModel path_loss;
        double rician_beta = 10.0; // linear Rician factor
        std::uint64_t seed = 0;

        int n_users() const { return static_cast<int>(users.size()); }

        // Throws std::invalid_argument on the first violated invariant.
        void validate() const;

        // Modulation context for a given frequency/delay assignment.
        ModulationParams modulation(const RVec& frequencies, const RVec& delays) const;
    };
}

#endif
