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

#ifndef FDRIS_CHANNEL_HPP
#define FDRIS_CHANNEL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdris/common.hpp"
#include "fdris/system_config.hpp"

namespace fdris
{
    enum class Link
    {
        BsToRis,
        RisToUser
    };

    // Amplitude path-loss factor sqrt(zeta0 * d^-alpha); d must be positive.
    double path_loss(double distance, const PathLossModel& model, Link link);

    // One Rician realization of all links.
    struct ChannelSet
    {
        CMat h_br;               // I x N_t
        std::vector<CVec> h_ru;  // per user, length I
        double zeta_br = 1.0;    // amplitude path loss of the BS link
        RVec zeta_ru;            // per-user amplitude path loss
        double beta = 0.0;       // linear Rician factor used
        std::uint64_t seed = 0;
    };

    // Deterministic given (config, seed): LoS parts from the steering geometry,
    // NLoS parts i.i.d. CN(0,1) drawn from derived counter-based streams
    // (stream 0 for the BS link, stream 1+k for user k).
    ChannelSet realize_channels(const SystemConfig& config, const ArrayLayout& layout,
                                std::uint64_t seed);

    // JSON round-trip for regression tests; complex values stored as [re, im].
    std::string channels_to_json(const ChannelSet& channels);
    ChannelSet channels_from_json(const std::string& text);
    void save_channels(const ChannelSet& channels, const std::string& path);
    ChannelSet load_channels(const std::string& path);
}

#endif
