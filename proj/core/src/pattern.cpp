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

#include "fdris/pattern.hpp"

#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <stdexcept>

#include "fdris/channel.hpp"

namespace fdris
{
    namespace
    {
        constexpr double kDbFloor = -200.0;

        double floored_db(double linear)
        {
            if (!(linear > 0.0))
                return kDbFloor;
            return std::max(kDbFloor, 10.0 * std::log10(linear));
        }

        // Array factor per beam: sum_i h_i theta_i v_i a_i times the BS-side
        // steering response of the beam. Path loss excluded.
        double normalized_energy(const PolarPosition& position, const SolutionState& state,
                                 const SystemConfig& config, const ArrayLayout& layout,
                                 double t_snap)
        {
            const int total = layout.elements();
            const ModulationParams mod = config.modulation(state.f, state.tau);
            const RVec gamma = layout.path_offsets(position);
            const double lambda = config.shape.wavelength;
            const cxd front = mod.amplitude * jexp(mod.initial_phase);

            const BsRisSteering steer = steering_br(layout, config.bs, config.n_tx);
            cxd surface_sum = 0.0;
            for (int i = 0; i < total; ++i)
            {
                const double fl = state.f(layout.subarray_of_element(i + 1) - 1);
                const double dist = position.distance + gamma(i);
                const cxd theta_pos =
                    front * jexp(kTwoPi * mod.g * fl * (t_snap - dist / kSpeedOfLight));
                const cxd geometric = jexp(-kTwoPi * gamma(i) / lambda);
                surface_sum += geometric * theta_pos * state.theta_tilde(i) * steer.ris(i);
            }

            double energy = 0.0;
            for (const CVec& wk : state.w)
            {
                const cxd bs_factor = steer.bs.transpose() * wk;
                energy += std::norm(surface_sum * bs_factor);
            }
            return energy;
        }
    }

    double received_energy_normalized(const PolarPosition& position, const SolutionState& state,
                                      const SystemConfig& config, const ArrayLayout& layout,
                                      double t_snap)
    {
        return normalized_energy(position, state, config, layout, t_snap);
    }

    double received_energy(const PolarPosition& position, const SolutionState& state,
                           const SystemConfig& config, const ArrayLayout& layout, double t_snap)
    {
        const double zeta_probe = path_loss(position.distance, config.path_loss, Link::RisToUser);
        const double zeta_br = path_loss(config.bs.distance, config.path_loss, Link::BsToRis);
        return zeta_probe * zeta_probe * zeta_br * zeta_br *
               normalized_energy(position, state, config, layout, t_snap);
    }

    std::vector<std::pair<int, int>> PatternGrid::local_maxima() const
    {
        std::vector<std::pair<int, int>> peaks;
        const int nd = static_cast<int>(normalized.rows());
        const int na = static_cast<int>(normalized.cols());
        for (int i = 0; i < nd; ++i)
            for (int j = 0; j < na; ++j)
            {
                const double v = normalized(i, j);
                bool is_peak = true;
                for (int di = -1; di <= 1 && is_peak; ++di)
                    for (int dj = -1; dj <= 1 && is_peak; ++dj)
                    {
                        if (di == 0 && dj == 0)
                            continue;
                        const int ni = i + di;
                        const int nj = j + dj;
                        if (ni < 0 || ni >= nd || nj < 0 || nj >= na)
                            continue;
                        if (normalized(ni, nj) > v)
                            is_peak = false;
                    }
                if (is_peak)
                    peaks.emplace_back(i, j);
            }
        return peaks;
    }

    PatternGrid compute_pattern(const SolutionState& state, const SystemConfig& config,
                                const ArrayLayout& layout, const PatternGridSpec& spec)
    {
        if (spec.dist_count < 1 || spec.angle_count < 1)
            throw std::invalid_argument("compute_pattern: grid must have at least one cell");
        if (!(spec.dist_min > 0.0) || spec.dist_max < spec.dist_min ||
            spec.angle_max < spec.angle_min)
            throw std::invalid_argument("compute_pattern: invalid grid bounds");

        PatternGrid grid;
        grid.noise_floor = config.noise_power;
        grid.distances.resize(spec.dist_count);
        grid.angles.resize(spec.angle_count);
        for (int i = 0; i < spec.dist_count; ++i)
            grid.distances(i) =
                (spec.dist_count == 1)
                    ? spec.dist_min
                    : spec.dist_min + (spec.dist_max - spec.dist_min) * i / (spec.dist_count - 1.0);
        for (int j = 0; j < spec.angle_count; ++j)
            grid.angles(j) =
                (spec.angle_count == 1)
                    ? spec.angle_min
                    : spec.angle_min +
                          (spec.angle_max - spec.angle_min) * j / (spec.angle_count - 1.0);

        const double zeta_br = path_loss(config.bs.distance, config.path_loss, Link::BsToRis);
        grid.energy.resize(spec.dist_count, spec.angle_count);
        grid.normalized.resize(spec.dist_count, spec.angle_count);
        for (int j = 0; j < spec.angle_count; ++j)
            for (int i = 0; i < spec.dist_count; ++i)
            {
                PolarPosition probe;
                probe.distance = grid.distances(i);
                probe.azimuth = spec.azimuth;
                probe.elevation = grid.angles(j);
                const double af =
                    normalized_energy(probe, state, config, layout, spec.t_snap);
                const double zeta =
                    path_loss(probe.distance, config.path_loss, Link::RisToUser);
                grid.normalized(i, j) = af;
                grid.energy(i, j) = zeta * zeta * zeta_br * zeta_br * af;
            }
        return grid;
    }

    void pattern_to_csv(const PatternGrid& grid, const std::string& path)
    {
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("pattern_to_csv: cannot open " + path);
        file << "# axes: distance_m in [" << grid.distances(0) << ", "
             << grid.distances(grid.distances.size() - 1) << "] x angle_deg in ["
             << rad2deg(grid.angles(0)) << ", " << rad2deg(grid.angles(grid.angles.size() - 1))
             << "]; noise_floor_w=" << grid.noise_floor << "\n";
        file << "distance_m,angle_deg,energy_linear,energy_db,normalized_db\n";
        file.precision(12);
        for (int i = 0; i < grid.distances.size(); ++i)
            for (int j = 0; j < grid.angles.size(); ++j)
                file << grid.distances(i) << ',' << rad2deg(grid.angles(j)) << ','
                     << grid.energy(i, j) << ',' << floored_db(grid.energy(i, j)) << ','
                     << floored_db(grid.normalized(i, j)) << '\n';
    }

    std::string pattern_to_json(const PatternGrid& grid)
    {
        nlohmann::json j;
        j["distances_m"] =
            std::vector<double>(grid.distances.data(), grid.distances.data() + grid.distances.size());
        std::vector<double> angles_deg;
        for (int a = 0; a < grid.angles.size(); ++a)
            angles_deg.push_back(rad2deg(grid.angles(a)));
        j["angles_deg"] = angles_deg;
        j["noise_floor_w"] = grid.noise_floor;
        nlohmann::json energy = nlohmann::json::array();
        nlohmann::json normalized = nlohmann::json::array();
        for (int i = 0; i < grid.energy.rows(); ++i)
        {
            nlohmann::json erow = nlohmann::json::array();
            nlohmann::json nrow = nlohmann::json::array();
            for (int jj = 0; jj < grid.energy.cols(); ++jj)
            {
                erow.push_back(grid.energy(i, jj));
                nrow.push_back(grid.normalized(i, jj));
            }
            energy.push_back(erow);
            normalized.push_back(nrow);
        }
        j["energy_linear"] = energy;
        j["normalized_linear"] = normalized;
        return j.dump();
    }

    void save_pattern_json(const PatternGrid& grid, const std::string& path)
    {
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("save_pattern_json: cannot open " + path);
        file << pattern_to_json(grid);
    }
}
