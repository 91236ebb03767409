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

#ifndef FDRIS_ARRAY_MODEL_HPP
#define FDRIS_ARRAY_MODEL_HPP

#include <utility>
#include <vector>

#include "fdris/common.hpp"

namespace fdris
{
    // Surface split into an R x S grid of subarrays, each holding M x N
    // elements. All math-layer indices (element i, grid (i_z, i_y), subarray l)
    // are 1-based.
    struct ArrayShape
    {
        int R = 1; // subarray rows
        int S = 1; // subarray columns
        int M = 1; // element rows per subarray
        int N = 1; // element columns per subarray
        double spacing = 0.0;    // element spacing d in meters
        double wavelength = 0.0; // carrier wavelength in meters

        int rows() const { return R * M; }    // I_z
        int cols() const { return S * N; }    // I_y
        int elements() const { return rows() * cols(); } // I
        int subarrays() const { return R * S; }          // L

        // Throws std::invalid_argument on violated invariants.
        void validate() const;
    };

    // Time-modulation settings: one retained harmonic of order g with identical
    // per-element amplitude A0 and initial phase phi0; per-subarray modulation
    // frequencies f (length L) and per-element delays tau (length I).
    struct ModulationParams
    {
        int g = 1;
        double amplitude = 1.0;     // A0 in (0, 1]
        double initial_phase = 0.0; // phi0 in radians
        RVec frequencies;           // f_l in Hz, length L
        RVec delays;                // tau_i in seconds, length I
    };

    // (distance, azimuth theta, elevation phi) of a link endpoint as seen from
    // the surface reference element.
    struct PolarPosition
    {
        double distance = 1.0; // meters
        double azimuth = 0.0;  // theta in [0, pi]
        double elevation = 0.0; // phi in [0, pi]

        void validate() const;
    };

    // Element index i (1-based) to grid position (i_z, i_y), both 1-based.
    std::pair<int, int> element_to_grid(int i, const ArrayShape& shape);

    // Grid position to its subarray index l in [1, L].
    int subarray_of(int iz, int iy, const ArrayShape& shape);

    // Precomputed index maps so per-element loops avoid div/mod.
    class ArrayLayout
    {
    public:
        explicit ArrayLayout(const ArrayShape& shape);

        const ArrayShape& shape() const { return shape_; }
        int elements() const { return shape_.elements(); }
        int subarrays() const { return shape_.subarrays(); }

        // Subarray index (1-based) of 1-based element i.
        int subarray_of_element(int i) const { return subarray_[static_cast<size_t>(i - 1)]; }

        // 1-based element indices of subarray l, ascending; each list has M*N entries.
        const std::vector<int>& elements_of_subarray(int l) const
        {
            return members_[static_cast<size_t>(l - 1)];
        }

        // Planar path-length offsets Gamma_i relative to the reference element
        // for a far-field endpoint in direction (azimuth, elevation); length I.
        RVec path_offsets(const PolarPosition& pos) const;

    private:
        ArrayShape shape_;
        std::vector<int> subarray_;              // per element, 1-based values
        std::vector<std::vector<int>> members_;  // per subarray
        RVec coord_z_;                           // (i_z - 1) * d per element
        RVec coord_y_;                           // (i_y - 1) * d per element
    };

    // Fourier series coefficient of the sawtooth phase modulation
    //   (1/T) * integral_0^T A0 e^{j(phi0 + P t)} e^{-j 2 pi z t / T} dt.
    // Closed form j A0 e^{j phi0} (1 - e^{j(PT - 2 z pi)}) / (PT - 2 z pi);
    // the removable singularity at PT = 2 z pi returns A0 e^{j phi0}.
    cxd fourier_coefficient(double phase_slope, double period, int harmonic,
                            double amplitude = 1.0, double initial_phase = 0.0);

    // LoS steering factorization for the BS -> surface link: the rank-1 LoS
    // matrix equals ris * bs.transpose().
    struct BsRisSteering
    {
        CVec ris; // length I, entry i = e^{-j 2 pi Gamma_i / lambda}
        CVec bs;  // length N_t, entry n = e^{-j 2 pi (n-1) d sin(theta) sin(phi) / lambda}
    };
    BsRisSteering steering_br(const ArrayLayout& layout, const PolarPosition& bs, int n_tx);

    // LoS vector toward a user/probe position, entry i = e^{-j 2 pi Gamma_i / lambda}.
    CVec los_vector(const ArrayLayout& layout, const PolarPosition& pos);

    // Delay-induced phase coefficients, entry i = e^{-j 2 pi g f_l(i) tau_i};
    // unit modulus by construction.
    CVec theta_tilde(const ModulationParams& mod, const ArrayLayout& layout);

    // Frequency-distance phase coefficients toward one user, evaluated at the
    // symbol-reference instant t = 0:
    //   theta^k_i = A0 e^{j phi0} e^{-j 2 pi g f_l(i) d^{rk}_i / c},
    // with d^{rk}_i = user.distance + Gamma_i; modulus A0 per entry.
    CVec theta_k(const ModulationParams& mod, const ArrayLayout& layout, const PolarPosition& user);

    // Smallest nonnegative delays realizing the unit-modulus coefficients:
    // theta_tilde(delays_from_phases(v), .) == v entrywise. Requires g != 0 and
    // positive frequencies; throws std::invalid_argument otherwise.
    RVec delays_from_phases(const CVec& coeffs, const RVec& frequencies, int g,
                            const ArrayLayout& layout);
}

#endif
