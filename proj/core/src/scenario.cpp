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

#include "fdris/scenario.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <nlohmann/json.hpp>
#include <set>
#include <stdexcept>

namespace fdris
{
    namespace
    {
        using nlohmann::json;

        void require_keys(const json& obj, const std::set<std::string>& allowed,
                          const std::string& where)
        {
            for (const auto& [key, value] : obj.items())
                if (allowed.find(key) == allowed.end())
                    throw std::invalid_argument("scenario: unknown key '" + key + "' in " + where);
        }

        PolarPosition position_from_json(const json& obj, const std::string& where)
        {
            require_keys(obj, {"distance_m", "azimuth_deg", "elevation_deg"}, where);
            PolarPosition pos;
            pos.distance = obj.at("distance_m").get<double>();
            pos.azimuth = deg2rad(obj.at("azimuth_deg").get<double>());
            pos.elevation = deg2rad(obj.at("elevation_deg").get<double>());
            return pos;
        }

        json position_to_json(const PolarPosition& pos)
        {
            return {{"distance_m", pos.distance},
                    {"azimuth_deg", rad2deg(pos.azimuth)},
                    {"elevation_deg", rad2deg(pos.elevation)}};
        }
    }

    std::string sweep_axis_name(SweepAxis axis)
    {
        switch (axis)
        {
        case SweepAxis::None: return "none";
        case SweepAxis::Subarrays: return "L";
        case SweepAxis::Antennas: return "Nt";
        case SweepAxis::PowerDbm: return "Ptmax_dbm";
        case SweepAxis::Weights: return "weights";
        }
        return "none";
    }

    SweepAxis sweep_axis_from_name(const std::string& name)
    {
        if (name == "none")
            return SweepAxis::None;
        if (name == "L")
            return SweepAxis::Subarrays;
        if (name == "Nt")
            return SweepAxis::Antennas;
        if (name == "Ptmax_dbm")
            return SweepAxis::PowerDbm;
        if (name == "weights")
            return SweepAxis::Weights;
        throw std::invalid_argument("scenario: unknown sweep axis '" + name + "'");
    }

    void Scenario::validate() const
    {
        system.validate();
        if (experiment.replicates < 1)
            throw std::invalid_argument("scenario: replicates must be >= 1");
        if (experiment.schemes.empty())
            throw std::invalid_argument("scenario: need at least one scheme");
        if (experiment.axis == SweepAxis::Weights)
        {
            if (experiment.weight_sets.empty())
                throw std::invalid_argument("scenario: weights sweep needs weight sets");
            for (const auto& ws : experiment.weight_sets)
                if (static_cast<int>(ws.size()) != system.n_users())
                    throw std::invalid_argument(
                        "scenario: each weight set needs one entry per user");
        }
        else if (experiment.axis != SweepAxis::None && experiment.values.empty())
        {
            throw std::invalid_argument("scenario: sweep needs at least one value");
        }
        for (double v : experiment.values)
        {
            if (experiment.axis == SweepAxis::Subarrays &&
                (v < 1.0 || v != std::floor(v)))
                throw std::invalid_argument("scenario: subarray counts must be positive integers");
            if (experiment.axis == SweepAxis::Antennas && (v < 1.0 || v != std::floor(v)))
                throw std::invalid_argument("scenario: antenna counts must be positive integers");
        }
    }

    std::pair<int, int> split_subarrays(int total)
    {
        if (total < 1)
            throw std::invalid_argument("split_subarrays: need a positive count");
        int r = static_cast<int>(std::floor(std::sqrt(static_cast<double>(total))));
        while (r > 1 && total % r != 0)
            --r;
        return {r, total / r};
    }

    SystemConfig apply_sweep_point(const SystemConfig& base, SweepAxis axis, double value,
                                   const std::vector<double>& weight_set)
    {
        SystemConfig config = base;
        switch (axis)
        {
        case SweepAxis::None:
            break;
        case SweepAxis::Subarrays:
        {
            const auto [r, s] = split_subarrays(static_cast<int>(value));
            config.shape.R = r;
            config.shape.S = s;
            break;
        }
        case SweepAxis::Antennas:
            config.n_tx = static_cast<int>(value);
            break;
        case SweepAxis::PowerDbm:
            config.p_tmax = dbm2watt(value);
            break;
        case SweepAxis::Weights:
            config.weights =
                Eigen::Map<const RVec>(weight_set.data(), static_cast<int>(weight_set.size()));
            break;
        }
        return config;
    }

    Scenario preset_scenario(const std::string& name)
    {
        if (name != "paper-sec5")
            throw std::invalid_argument("preset_scenario: unknown preset '" + name + "'");

        Scenario sc;
        SystemConfig& cfg = sc.system;
        const double carrier_hz = 28e9;
        cfg.shape.wavelength = kSpeedOfLight / carrier_hz;
        cfg.shape.spacing = cfg.shape.wavelength / 2.0;
        cfg.shape.R = 4;
        cfg.shape.S = 4; // L = 16
        cfg.shape.M = 2;
        cfg.shape.N = 2;
        cfg.harmonic = 1;
        cfg.amplitude = 1.0;
        cfg.initial_phase = 0.0;
        cfg.f_min = 0.2e6;
        cfg.f_max = 20e6;
        cfg.n_tx = 10;
        cfg.bs = {100.0, deg2rad(30.0), deg2rad(120.0)};
        cfg.users = {{40.0, deg2rad(90.0), deg2rad(30.0)},
                     {75.0, deg2rad(90.0), deg2rad(70.0)},
                     {55.0, deg2rad(90.0), deg2rad(30.0)},
                     {40.0, deg2rad(90.0), deg2rad(150.0)}};
        cfg.weights = RVec::Constant(4, 0.25);
        cfg.p_tmax = dbm2watt(30.0);
        cfg.noise_power = dbm2watt(-110.0);
        // -34 dB reference gain at 1 m; the free-space value at 28 GHz would
        // leave the cascaded link noise-dominated for every user.
        cfg.path_loss.zeta0 = db2lin(-34.0);
        cfg.path_loss.alpha_br = 2.2;
        cfg.path_loss.alpha_ru = 2.2;
        cfg.rician_beta = db2lin(10.0);
        cfg.seed = 0;

        sc.experiment.axis = SweepAxis::None;
        sc.experiment.replicates = 1;
        sc.experiment.schemes = {Scheme::ProposedFdRis, Scheme::ConventionalRis,
                                 Scheme::ZeroForcing};
        return sc;
    }

    Scenario scenario_from_json_text(const std::string& text)
    {
        json j;
        try
        {
            j = json::parse(text);
        }
        catch (const json::parse_error& err)
        {
            throw std::invalid_argument(std::string("scenario: JSON parse error: ") + err.what());
        }

        require_keys(j,
                     {"array", "modulation", "bs", "users", "weights", "power", "channel", "seed",
                      "experiment"},
                     "top level");

        Scenario sc;
        SystemConfig& cfg = sc.system;

        const json& array = j.at("array");
        require_keys(array,
                     {"R", "S", "M", "N", "carrier_frequency_ghz", "spacing_over_wavelength"},
                     "array");
        cfg.shape.R = array.at("R").get<int>();
        cfg.shape.S = array.at("S").get<int>();
        cfg.shape.M = array.at("M").get<int>();
        cfg.shape.N = array.at("N").get<int>();
        const double carrier_hz = array.at("carrier_frequency_ghz").get<double>() * 1e9;
        if (!(carrier_hz > 0.0))
            throw std::invalid_argument("scenario: carrier_frequency_ghz must be positive");
        cfg.shape.wavelength = kSpeedOfLight / carrier_hz;
        const double spacing_factor = array.value("spacing_over_wavelength", 0.5);
        cfg.shape.spacing = spacing_factor * cfg.shape.wavelength;

        const json& mod = j.at("modulation");
        require_keys(mod, {"harmonic", "amplitude", "initial_phase_deg", "f_min_mhz", "f_max_mhz"},
                     "modulation");
        cfg.harmonic = mod.value("harmonic", 1);
        cfg.amplitude = mod.value("amplitude", 1.0);
        cfg.initial_phase = deg2rad(mod.value("initial_phase_deg", 0.0));
        cfg.f_min = mod.at("f_min_mhz").get<double>() * 1e6;
        cfg.f_max = mod.at("f_max_mhz").get<double>() * 1e6;

        const json& bs = j.at("bs");
        require_keys(bs, {"n_antennas", "distance_m", "azimuth_deg", "elevation_deg"}, "bs");
        cfg.n_tx = bs.at("n_antennas").get<int>();
        cfg.bs.distance = bs.at("distance_m").get<double>();
        cfg.bs.azimuth = deg2rad(bs.at("azimuth_deg").get<double>());
        cfg.bs.elevation = deg2rad(bs.at("elevation_deg").get<double>());

        int index = 0;
        for (const json& user : j.at("users"))
            cfg.users.push_back(position_from_json(user, "users[" + std::to_string(index++) + "]"));

        const auto weights = j.at("weights").get<std::vector<double>>();
        cfg.weights = Eigen::Map<const RVec>(weights.data(), static_cast<int>(weights.size()));

        const json& power = j.at("power");
        require_keys(power, {"p_tmax_dbm", "noise_dbm"}, "power");
        cfg.p_tmax = dbm2watt(power.at("p_tmax_dbm").get<double>());
        cfg.noise_power = dbm2watt(power.value("noise_dbm", -110.0));

        const json& channel = j.at("channel");
        require_keys(channel,
                     {"rician_factor_db", "path_loss_exp_br", "path_loss_exp_ru",
                      "reference_gain_db"},
                     "channel");
        cfg.rician_beta = db2lin(channel.value("rician_factor_db", 10.0));
        cfg.path_loss.alpha_br = channel.value("path_loss_exp_br", 2.2);
        cfg.path_loss.alpha_ru = channel.value("path_loss_exp_ru", 2.2);
        if (channel.contains("reference_gain_db"))
            cfg.path_loss.zeta0 = db2lin(channel.at("reference_gain_db").get<double>());
        else
            cfg.path_loss.zeta0 = std::pow(cfg.shape.wavelength / (4.0 * kPi), 2.0);

        if (j.contains("seed"))
        {
            cfg.seed = j.at("seed").get<std::uint64_t>();
        }
        else
        {
            std::cerr << "scenario: no seed given, defaulting to 0\n";
            cfg.seed = 0;
        }

        if (j.contains("experiment"))
        {
            const json& exp = j.at("experiment");
            require_keys(exp,
                         {"sweep_axis", "values", "weight_sets", "replicates", "schemes",
                          "out_dir"},
                         "experiment");
            sc.experiment.axis = sweep_axis_from_name(exp.value("sweep_axis", "none"));
            if (exp.contains("values"))
                sc.experiment.values = exp.at("values").get<std::vector<double>>();
            if (exp.contains("weight_sets"))
                sc.experiment.weight_sets =
                    exp.at("weight_sets").get<std::vector<std::vector<double>>>();
            sc.experiment.replicates = exp.value("replicates", 1);
            if (exp.contains("schemes"))
            {
                sc.experiment.schemes.clear();
                for (const json& name : exp.at("schemes"))
                    sc.experiment.schemes.push_back(scheme_from_name(name.get<std::string>()));
            }
            sc.experiment.out_dir = exp.value("out_dir", "out");
        }

        sc.validate();
        return sc;
    }

    Scenario load_scenario(const std::string& path)
    {
        std::ifstream file(path);
        if (!file)
            throw std::invalid_argument("load_scenario: cannot open " + path);
        std::string text((std::istreambuf_iterator<char>(file)), std::istreambuf_iterator<char>());
        return scenario_from_json_text(text);
    }

    std::string scenario_to_json_text(const Scenario& scenario)
    {
        const SystemConfig& cfg = scenario.system;
        json j;
        j["array"] = {{"R", cfg.shape.R},
                      {"S", cfg.shape.S},
                      {"M", cfg.shape.M},
                      {"N", cfg.shape.N},
                      {"carrier_frequency_ghz", kSpeedOfLight / cfg.shape.wavelength / 1e9},
                      {"spacing_over_wavelength", cfg.shape.spacing / cfg.shape.wavelength}};
        j["modulation"] = {{"harmonic", cfg.harmonic},
                           {"amplitude", cfg.amplitude},
                           {"initial_phase_deg", rad2deg(cfg.initial_phase)},
                           {"f_min_mhz", cfg.f_min / 1e6},
                           {"f_max_mhz", cfg.f_max / 1e6}};
        j["bs"] = {{"n_antennas", cfg.n_tx},
                   {"distance_m", cfg.bs.distance},
                   {"azimuth_deg", rad2deg(cfg.bs.azimuth)},
                   {"elevation_deg", rad2deg(cfg.bs.elevation)}};
        json users = json::array();
        for (const PolarPosition& user : cfg.users)
            users.push_back(position_to_json(user));
        j["users"] = users;
        j["weights"] =
            std::vector<double>(cfg.weights.data(), cfg.weights.data() + cfg.weights.size());
        j["power"] = {{"p_tmax_dbm", watt2dbm(cfg.p_tmax)},
                      {"noise_dbm", watt2dbm(cfg.noise_power)}};
        j["channel"] = {{"rician_factor_db", lin2db(cfg.rician_beta)},
                        {"path_loss_exp_br", cfg.path_loss.alpha_br},
                        {"path_loss_exp_ru", cfg.path_loss.alpha_ru},
                        {"reference_gain_db", lin2db(cfg.path_loss.zeta0)}};
        j["seed"] = cfg.seed;

        json exp;
        exp["sweep_axis"] = sweep_axis_name(scenario.experiment.axis);
        exp["values"] = scenario.experiment.values;
        if (!scenario.experiment.weight_sets.empty())
            exp["weight_sets"] = scenario.experiment.weight_sets;
        exp["replicates"] = scenario.experiment.replicates;
        json schemes = json::array();
        for (Scheme scheme : scenario.experiment.schemes)
            schemes.push_back(scheme_name(scheme));
        exp["schemes"] = schemes;
        exp["out_dir"] = scenario.experiment.out_dir;
        j["experiment"] = exp;
        return j.dump(2);
    }

    void save_scenario(const Scenario& scenario, const std::string& path)
    {
        std::ofstream file(path);
        if (!file)
            throw std::runtime_error("save_scenario: cannot open " + path);
        file << scenario_to_json_text(scenario);
    }
}
