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

#include "fdris/channel.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "fdris/rng.hpp"

namespace fdris
{
    namespace
    {
        using nlohmann::json;

        json complex_vector_to_json(const CVec& v)
        {
            json arr = json::array();
            for (int i = 0; i < v.size(); ++i)
                arr.push_back({v(i).real(), v(i).imag()});
            return arr;
        }

        CVec complex_vector_from_json(const json& arr)
        {
            CVec v(static_cast<int>(arr.size()));
            for (int i = 0; i < v.size(); ++i)
                v(i) = cxd(arr.at(i).at(0).get<double>(), arr.at(i).at(1).get<double>());
            return v;
        }
    }

    double path_loss(double distance, const PathLossModel& model, Link link)
    {
        if (!(distance > 0.0))
            throw std::invalid_argument("path_loss: distance must be positive");
        const double alpha = (link == Link::BsToRis) ? model.alpha_br : model.alpha_ru;
        return std::sqrt(model.zeta0 * std::pow(distance, -alpha));
    }

    ChannelSet realize_channels(const SystemConfig& config, const ArrayLayout& layout,
                                std::uint64_t seed)
    {
        const int total = layout.elements();
        const int n_tx = config.n_tx;
        const int n_users = config.n_users();
        const double beta = config.rician_beta;
        const double los_scale = std::sqrt(beta / (1.0 + beta));
        const double nlos_scale = std::sqrt(1.0 / (1.0 + beta));

        ChannelSet out;
        out.beta = beta;
        out.seed = seed;
        out.zeta_br = path_loss(config.bs.distance, config.path_loss, Link::BsToRis);
        out.zeta_ru.resize(n_users);

        const BsRisSteering steer = steering_br(layout, config.bs, n_tx);

        // BS link: draws ordered element-major (i outer, antenna inner).
        Rng rng_br = Rng::derive(seed, 0);
        out.h_br.resize(total, n_tx);
        for (int i = 0; i < total; ++i)
            for (int n = 0; n < n_tx; ++n)
            {
                const cxd los = steer.ris(i) * steer.bs(n);
                const cxd nlos = rng_br.standard_complex_gaussian();
                out.h_br(i, n) = out.zeta_br * (los_scale * los + nlos_scale * nlos);
            }

        out.h_ru.resize(static_cast<size_t>(n_users));
        for (int k = 0; k < n_users; ++k)
        {
            const PolarPosition& user = config.users[static_cast<size_t>(k)];
            out.zeta_ru(k) = path_loss(user.distance, config.path_loss, Link::RisToUser);
            const CVec los = los_vector(layout, user);
            Rng rng_k = Rng::derive(seed, static_cast<std::uint64_t>(k) + 1);
            CVec h(total);
            for (int i = 0; i < total; ++i)
                h(i) = out.zeta_ru(k) *
                       (los_scale * los(i) + nlos_scale * rng_k.standard_complex_gaussian());
            out.h_ru[static_cast<size_t>(k)] = std::move(h);
        }
        return out;
    }

    std::string channels_to_json(const ChannelSet& channels)
    {
        json j;
        j["elements"] = channels.h_br.rows();
        j["n_tx"] = channels.h_br.cols();
        j["n_users"] = channels.h_ru.size();
        j["beta"] = channels.beta;
        j["seed"] = channels.seed;
        j["zeta_br"] = channels.zeta_br;
        j["zeta_ru"] = std::vector<double>(channels.zeta_ru.data(),
                                           channels.zeta_ru.data() + channels.zeta_ru.size());
        json rows = json::array();
        for (int i = 0; i < channels.h_br.rows(); ++i)
            rows.push_back(complex_vector_to_json(channels.h_br.row(i).transpose()));
        j["h_br"] = rows;
        json users = json::array();
        for (const CVec& h : channels.h_ru)
            users.push_back(complex_vector_to_json(h));
        j["h_ru"] = users;
        return j.dump();
    }

    ChannelSet channels_from_json(const std::string& text)
    {
        const json j = json::parse(text);
        ChannelSet out;
        const int total = j.at("elements").get<int>();
        const int n_tx = j.at("n_tx").get<int>();
        out.beta = j.at("beta").get<double>();
        out.seed = j.at("seed").get<std::uint64_t>();
        out.zeta_br = j.at("zeta_br").get<double>();
        const auto zr = j.at("zeta_ru").get<std::vector<double>>();
        out.zeta_ru = Eigen::Map<const RVec>(zr.data(), static_cast<int>(zr.size()));
        out.h_br.resize(total, n_tx);
        const json& rows = j.at("h_br");
        if (static_cast<int>(rows.size()) != total)
            throw std::runtime_error("channels_from_json: h_br row count mismatch");
        for (int i = 0; i < total; ++i)
            out.h_br.row(i) = complex_vector_from_json(rows.at(static_cast<size_t>(i))).transpose();
        for (const json& arr : j.at("h_ru"))
            out.h_ru.push_back(complex_vector_from_json(arr));
        return out;
    }

    void save_channels(const ChannelSet& channels, const std::string& path)
    {
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("save_channels: cannot open " + path);
        file << channels_to_json(channels);
    }

    ChannelSet load_channels(const std::string& path)
    {
        std::ifstream file(path);
        if (!file)
            throw std::runtime_error("load_channels: cannot open " + path);
        std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
        return channels_from_json(text);
    }
}
