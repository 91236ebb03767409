// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "fdris/orchestrator.hpp"
#include "fdris/pattern.hpp"
#include "support/instances.hpp"

using namespace fdris;

TEST_SUITE("pattern")
{
    TEST_CASE("single element, single antenna")
    {
        SystemConfig cfg = testing::make_config(1, 1, 1, 1, 1, 1);
        cfg.amplitude = 0.8;
        ArrayLayout layout(cfg.shape);
        SolutionState state;
        state.f = RVec::Constant(1, 1e6);
        state.tau = RVec::Zero(1);
        state.theta_tilde = CVec::Ones(1);
        state.w = {CVec::Ones(1)};

        PolarPosition probe{40.0, deg2rad(90.0), deg2rad(30.0)};
        const double zeta_probe = path_loss(probe.distance, cfg.path_loss, Link::RisToUser);
        const double zeta_br = path_loss(cfg.bs.distance, cfg.path_loss, Link::BsToRis);
        const double expected = 0.8 * 0.8 * zeta_probe * zeta_probe * zeta_br * zeta_br;
        CHECK(received_energy(probe, state, cfg, layout) ==
              doctest::Approx(expected).epsilon(1e-12));
        CHECK(received_energy_normalized(probe, state, cfg, layout) ==
              doctest::Approx(0.64).epsilon(1e-12));
    }

    TEST_CASE("aligned phases hit the coherent-sum bound")
    {
        // Probe and BS broadside (all geometric offsets vanish), beam matched
        // to the BS steering: energy = zeta^2 zeta_br^2 (I N_t wbar)^2.
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 3, 1);
        cfg.harmonic = 0;
        cfg.bs = {100.0, deg2rad(90.0), deg2rad(90.0)};
        ArrayLayout layout(cfg.shape);
        SolutionState state;
        state.f = RVec::Constant(layout.subarrays(), 1e6);
        state.tau = RVec::Zero(layout.elements());
        state.theta_tilde = CVec::Ones(layout.elements());
        const double wbar = 0.25;
        const BsRisSteering steer = steering_br(layout, cfg.bs, cfg.n_tx);
        state.w = {steer.bs.conjugate() * wbar};

        PolarPosition probe{40.0, deg2rad(90.0), deg2rad(90.0)};
        const double expected_af =
            std::pow(static_cast<double>(layout.elements()) * cfg.n_tx * wbar, 2.0);
        CHECK(received_energy_normalized(probe, state, cfg, layout) ==
              doctest::Approx(expected_af).epsilon(1e-9));
    }

    TEST_CASE("zero harmonic gives a distance-flat normalized pattern")
    {
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 3, 2);
        cfg.harmonic = 0;
        ArrayLayout layout(cfg.shape);
        Rng rng(8);
        SolutionState state;
        state.f = testing::random_frequencies(layout.subarrays(), cfg.f_min, cfg.f_max, rng);
        state.tau = RVec::Zero(layout.elements());
        state.theta_tilde = testing::random_unit_modulus(layout.elements(), rng);
        state.w = testing::random_beams(2, cfg.n_tx, 1.0, rng);

        PatternGridSpec spec;
        spec.dist_count = 40;
        spec.angle_count = 30;
        const PatternGrid grid = compute_pattern(state, cfg, layout, spec);
        for (int j = 0; j < grid.angles.size(); ++j)
        {
            const double lo = grid.normalized.col(j).minCoeff();
            const double hi = grid.normalized.col(j).maxCoeff();
            CHECK(hi - lo < 1e-9);
        }
    }

    TEST_CASE("single-user solve focuses the pattern at the user")
    {
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 4, 1, 0.1);
        cfg.rician_beta = 1e6; // essentially LoS so the peak is geometric
        ArrayLayout layout(cfg.shape);
        const ChannelSet ch = realize_channels(cfg, layout, 12);
        SolveOptions opts;
        opts.tolerance = 1e-5;
        opts.max_outer = 60;
        const SolveResult res = solve(cfg, ch, opts);

        PatternGridSpec spec;
        spec.dist_min = 20.0;
        spec.dist_max = 100.0;
        spec.dist_count = 80;
        spec.angle_count = 90;
        const PatternGrid grid = compute_pattern(res.state, cfg, layout, spec);

        int best_i = 0, best_j = 0;
        grid.normalized.maxCoeff(&best_i, &best_j);
        // Nearest grid cell to the user.
        int user_i = 0, user_j = 0;
        (grid.distances.array() - cfg.users[0].distance).abs().minCoeff(&user_i);
        (grid.angles.array() - cfg.users[0].elevation).abs().minCoeff(&user_j);
        CHECK(std::abs(best_i - user_i) <= 2);
        CHECK(std::abs(best_j - user_j) <= 2);
    }

    TEST_CASE("exports")
    {
        SystemConfig cfg = testing::make_config(1, 1, 2, 2, 2, 1);
        ArrayLayout layout(cfg.shape);
        Rng rng(9);
        SolutionState state;
        state.f = RVec::Constant(1, 5e6);
        state.tau = RVec::Zero(layout.elements());
        state.theta_tilde = CVec::Ones(layout.elements());
        state.w = testing::random_beams(1, cfg.n_tx, 1.0, rng);

        PatternGridSpec spec;
        spec.dist_count = 5;
        spec.angle_count = 4;
        const PatternGrid grid = compute_pattern(state, cfg, layout, spec);

        const std::string csv_path = "pattern_test.csv";
        pattern_to_csv(grid, csv_path);
        std::ifstream csv(csv_path);
        int lines = 0;
        std::string line;
        while (std::getline(csv, line))
            ++lines;
        csv.close();
        std::remove(csv_path.c_str());
        CHECK(lines == 2 + 5 * 4); // comment + header + rows

        const nlohmann::json j = nlohmann::json::parse(pattern_to_json(grid));
        CHECK(j.at("distances_m").size() == 5);
        CHECK(j.at("energy_linear").size() == 5);
        CHECK(j.at("energy_linear").at(0).size() == 4);

        PatternGridSpec bad;
        bad.dist_count = 0;
        CHECK_THROWS_AS(compute_pattern(state, cfg, layout, bad), std::invalid_argument);
    }
}
