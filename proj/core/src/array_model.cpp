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

#include "fdris/array_model.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fdris
{
    void ArrayShape::validate() const
    {
        if (R < 1 || S < 1 || M < 1 || N < 1)
            throw std::invalid_argument("ArrayShape: R, S, M, N must all be >= 1");
        if (!(spacing > 0.0))
            throw std::invalid_argument("ArrayShape: element spacing must be positive");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("ArrayShape: wavelength must be positive");
    }

    void PolarPosition::validate() const
    {
        if (!(distance > 0.0))
            throw std::invalid_argument("PolarPosition: distance must be positive");
        if (azimuth < 0.0 || azimuth > kPi)
            throw std::invalid_argument("PolarPosition: azimuth must lie in [0, pi]");
        if (elevation < 0.0 || elevation > kPi)
            throw std::invalid_argument("PolarPosition: elevation must lie in [0, pi]");
    }

    std::pair<int, int> element_to_grid(int i, const ArrayShape& shape)
    {
        const int total = shape.elements();
        if (i < 1 || i > total)
            throw std::out_of_range("element_to_grid: element index " + std::to_string(i) +
                                    " outside [1, " + std::to_string(total) + "]");
        const int iy_count = shape.cols();
        // 1-based remainder: i_y in [1, I_y] (a bare mod would give 0 at multiples of I_y).
        const int iz = (i + iy_count - 1) / iy_count;
        const int iy = (i - 1) % iy_count + 1;
        return {iz, iy};
    }

    int subarray_of(int iz, int iy, const ArrayShape& shape)
    {
        if (iz < 1 || iz > shape.rows() || iy < 1 || iy > shape.cols())
            throw std::out_of_range("subarray_of: grid index out of range");
        const int block_row = (iz + shape.M - 1) / shape.M; // ceil(iz / M)
        const int block_col = (iy + shape.N - 1) / shape.N; // ceil(iy / N)
        return (block_row - 1) * shape.S + block_col;
    }

    ArrayLayout::ArrayLayout(const ArrayShape& shape) : shape_(shape)
    {
        shape_.validate();
        const int total = shape_.elements();
        subarray_.resize(static_cast<size_t>(total));
        members_.resize(static_cast<size_t>(shape_.subarrays()));
        coord_z_.resize(total);
        coord_y_.resize(total);
        for (int i = 1; i <= total; ++i)
        {
            const auto [iz, iy] = element_to_grid(i, shape_);
            const int l = subarray_of(iz, iy, shape_);
            subarray_[static_cast<size_t>(i - 1)] = l;
            members_[static_cast<size_t>(l - 1)].push_back(i);
            coord_z_(i - 1) = (iz - 1) * shape_.spacing;
            coord_y_(i - 1) = (iy - 1) * shape_.spacing;
        }
    }

    RVec ArrayLayout::path_offsets(const PolarPosition& pos) const
    {
        const double cz = std::cos(pos.azimuth);
        const double cy = std::sin(pos.azimuth) * std::cos(pos.elevation);
        return coord_z_ * cz + coord_y_ * cy;
    }

    cxd fourier_coefficient(double phase_slope, double period, int harmonic,
                            double amplitude, double initial_phase)
    {
        if (!(period > 0.0))
            throw std::invalid_argument("fourier_coefficient: period must be positive");
        const double pt = phase_slope * period;
        const double target = kTwoPi * static_cast<double>(harmonic);
        const double x = pt - target;
        const cxd front = amplitude * jexp(initial_phase);
        if (std::abs(x) <= 1e-12 * std::max({1.0, std::abs(pt), std::abs(target)}))
            return front;
        return cxd(0.0, 1.0) * front * (1.0 - jexp(x)) / x;
    }

    BsRisSteering steering_br(const ArrayLayout& layout, const PolarPosition& bs, int n_tx)
    {
        if (n_tx < 1)
            throw std::invalid_argument("steering_br: need at least one BS antenna");
        const double lambda = layout.shape().wavelength;
        BsRisSteering out;
        out.ris = los_vector(layout, bs);
        out.bs.resize(n_tx);
        const double axis = layout.shape().spacing * std::sin(bs.azimuth) * std::sin(bs.elevation);
        for (int n = 0; n < n_tx; ++n)
            out.bs(n) = jexp(-kTwoPi * static_cast<double>(n) * axis / lambda);
        return out;
    }

    CVec los_vector(const ArrayLayout& layout, const PolarPosition& pos)
    {
        const double lambda = layout.shape().wavelength;
        const RVec gamma = layout.path_offsets(pos);
        CVec v(layout.elements());
        for (int i = 0; i < v.size(); ++i)
            v(i) = jexp(-kTwoPi * gamma(i) / lambda);
        return v;
    }

    CVec theta_tilde(const ModulationParams& mod, const ArrayLayout& layout)
    {
        const int total = layout.elements();
        if (mod.frequencies.size() != layout.subarrays())
            throw std::invalid_argument("theta_tilde: frequency vector must have one entry per subarray");
        if (mod.delays.size() != total)
            throw std::invalid_argument("theta_tilde: delay vector must have one entry per element");
        CVec v(total);
        for (int i = 0; i < total; ++i)
        {
            const double fl = mod.frequencies(layout.subarray_of_element(i + 1) - 1);
            v(i) = jexp(-kTwoPi * mod.g * fl * mod.delays(i));
        }
        return v;
    }

    CVec theta_k(const ModulationParams& mod, const ArrayLayout& layout, const PolarPosition& user)
    {
        const int total = layout.elements();
        if (mod.frequencies.size() != layout.subarrays())
            throw std::invalid_argument("theta_k: frequency vector must have one entry per subarray");
        const RVec gamma = layout.path_offsets(user);
        const cxd front = mod.amplitude * jexp(mod.initial_phase);
        CVec v(total);
        for (int i = 0; i < total; ++i)
        {
            const double fl = mod.frequencies(layout.subarray_of_element(i + 1) - 1);
            const double dist = user.distance + gamma(i);
            v(i) = front * jexp(-kTwoPi * mod.g * fl * dist / kSpeedOfLight);
        }
        return v;
    }

    RVec delays_from_phases(const CVec& coeffs, const RVec& frequencies, int g,
                            const ArrayLayout& layout)
    {
        if (g == 0)
            throw std::invalid_argument("delays_from_phases: g = 0 offers no phase control via delay");
        if (coeffs.size() != layout.elements())
            throw std::invalid_argument("delays_from_phases: coefficient vector has wrong length");
        if (frequencies.size() != layout.subarrays())
            throw std::invalid_argument("delays_from_phases: frequency vector has wrong length");
        RVec tau(coeffs.size());
        for (int i = 0; i < coeffs.size(); ++i)
        {
            const double fl = frequencies(layout.subarray_of_element(i + 1) - 1);
            if (!(fl > 0.0))
                throw std::invalid_argument("delays_from_phases: frequencies must be positive");
            const double rate = static_cast<double>(g) * fl; // cycles per second of the delay phase
            // Need 2 pi * rate * tau == -arg(v_i) (mod 2 pi) with tau >= 0 minimal.
            double target = (rate > 0.0) ? -std::arg(coeffs(i)) : std::arg(coeffs(i));
            target = std::fmod(target, kTwoPi);
            if (target < 0.0)
                target += kTwoPi;
            tau(i) = target / (kTwoPi * std::abs(rate));
        }
        return tau;
    }
}
