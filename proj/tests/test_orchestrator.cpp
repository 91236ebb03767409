// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>

#include "fdris/orchestrator.hpp"
#include "support/instances.hpp"

using namespace fdris;

namespace
{
    SolveOptions fast_options()
    {
        SolveOptions opts;
        opts.tolerance = 1e-4;
        opts.max_outer = 40;
        return opts;
    }
}

TEST_SUITE("orchestrator")
{
    TEST_CASE("zero power budget yields zero rate")
    {
        SystemConfig cfg = testing::make_config(2, 2, 1, 1, 2, 2, 0.0);
        ArrayLayout layout(cfg.shape);
        const ChannelSet ch = realize_channels(cfg, layout, 1);
        const SolveResult res = solve(cfg, ch, fast_options());
        CHECK(res.state.wsr == 0.0);
        CHECK(res.state.total_power() == 0.0);
    }

    TEST_CASE("monotone trace, feasibility and determinism")
    {
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 4, 3, 0.5);
        ArrayLayout layout(cfg.shape);
        const ChannelSet ch = realize_channels(cfg, layout, 2);
        const SolveResult res = solve(cfg, ch, fast_options());
        REQUIRE(!res.trace.rows.empty());
        double prev = 0.0;
        for (const TraceRow& row : res.trace.rows)
        {
            CHECK(row.wsr >= prev - 1e-8);
            CHECK(row.surrogate <= row.wsr + 1e-8);
            prev = row.wsr;
        }
        CHECK(res.state.total_power() <= cfg.p_tmax * (1.0 + 1e-9));
        CHECK(res.state.f.minCoeff() >= cfg.f_min);
        CHECK(res.state.f.maxCoeff() <= cfg.f_max);
        CHECK(res.state.tau.minCoeff() >= 0.0);

        const SolveResult res2 = solve(cfg, ch, fast_options());
        REQUIRE(res2.trace.rows.size() == res.trace.rows.size());
        for (size_t i = 0; i < res.trace.rows.size(); ++i)
            CHECK(res2.trace.rows[i].wsr == res.trace.rows[i].wsr);
    }

    TEST_CASE("conventional surface never beats the frequency-diverse one")
    {
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 4, 3, 0.5);
        ArrayLayout layout(cfg.shape);
        const ChannelSet ch = realize_channels(cfg, layout, 3);
        SolveOptions opts = fast_options();
        const SolveResult fd = solve(cfg, ch, opts);
        const SolveResult ris = solve_conventional_ris(cfg, ch, opts);
        for (const TraceRow& row : ris.trace.rows)
            CHECK(row.freq_iters == 0); // frequency stage skipped
        CHECK(ris.state.wsr <= fd.state.wsr + 1e-6);
    }

    TEST_CASE("single-user pure-LoS conventional surface reaches coherent combining")
    {
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 4, 1, 0.01);
        cfg.rician_beta = 1e12;
        ArrayLayout layout(cfg.shape);
        const ChannelSet ch = realize_channels(cfg, layout, 4);
        SolveOptions opts;
        opts.tolerance = 1e-7;
        opts.max_outer = 100;
        const SolveResult res = solve_conventional_ris(cfg, ch, opts);

        // Coherent-sum bound: rate = log2(1 + P I^2 N_t (zeta_ru zeta_br A0)^2 / sigma^2).
        const double zeta_ru = path_loss(cfg.users[0].distance, cfg.path_loss, Link::RisToUser);
        const double zeta_br = path_loss(cfg.bs.distance, cfg.path_loss, Link::BsToRis);
        const double amp = zeta_ru * zeta_br * cfg.amplitude * layout.elements() *
                           std::sqrt(static_cast<double>(cfg.n_tx));
        const double bound = std::log2(1.0 + cfg.p_tmax * amp * amp / cfg.noise_power);
        CHECK(res.state.wsr == doctest::Approx(bound).epsilon(1e-3));
        CHECK(res.state.wsr <= bound + 1e-6);
    }

    TEST_CASE("zero-forcing nulls interference and waterfills evenly")
    {
        SUBCASE("orthogonal rows give matched beams")
        {
            EffectiveChannels eff;
            eff.rows = CMat::Zero(2, 4);
            eff.rows(0, 0) = cxd(2.0, 0.0);
            eff.rows(1, 1) = cxd(0.0, 2.0);
            const ZfBeams beams = zf_beamform(eff, RVec::Constant(2, 0.5), 2.0, 1e-14);
            // Each beam parallel to the conjugate of its own row.
            for (int k = 0; k < 2; ++k)
            {
                const CVec dir = eff.rows.row(k).adjoint().normalized();
                const cxd overlap = dir.adjoint() * beams.w[static_cast<size_t>(k)];
                CHECK(std::abs(std::abs(overlap) - beams.w[static_cast<size_t>(k)].norm()) < 1e-12);
            }
            // Equal gains, equal weights: symmetric split of the budget.
            CHECK(beams.allocated_power(0) == doctest::Approx(1.0).epsilon(1e-9));
            CHECK(beams.allocated_power(1) == doctest::Approx(1.0).epsilon(1e-9));
        }

        SUBCASE("random instances satisfy the nulling property")
        {
            for (std::uint64_t seed = 90; seed < 95; ++seed)
            {
                auto inst = testing::make_random_instance(2, 2, 2, 2, 6, 4, seed);
                const ZfBeams beams =
                    zf_beamform(inst.eff, inst.config.weights, 1.0, inst.config.noise_power);
                for (int k = 0; k < 4; ++k)
                    for (int j = 0; j < 4; ++j)
                    {
                        if (j == k)
                            continue;
                        const double leak =
                            std::abs(cxd(inst.eff.rows.row(k) * beams.w[static_cast<size_t>(j)]));
                        CHECK(leak <= 1e-9 * inst.eff.rows.row(k).norm() *
                                          beams.w[static_cast<size_t>(j)].norm());
                    }
            }
        }

        SUBCASE("too many users is rejected")
        {
            EffectiveChannels eff;
            eff.rows = CMat::Ones(3, 2);
            CHECK_THROWS_AS(zf_beamform(eff, RVec::Constant(3, 1.0), 1.0, 1e-14),
                            std::invalid_argument);
        }
    }

    TEST_CASE("zero-forcing end-to-end solve")
    {
        SystemConfig cfg = testing::make_config(2, 2, 2, 2, 6, 3, 0.5);
        ArrayLayout layout(cfg.shape);
        const ChannelSet ch = realize_channels(cfg, layout, 6);
        const SolveResult res = solve_zf(cfg, ch, fast_options());
        CHECK(res.state.wsr > 0.0);
        CHECK(res.state.total_power() <= cfg.p_tmax * (1.0 + 1e-9));

        SystemConfig bad = cfg;
        bad.n_tx = 2; // K = 3 > N_t
        CHECK_THROWS_AS(solve_zf(bad, realize_channels(bad, ArrayLayout(bad.shape), 1), {}),
                        std::invalid_argument);
    }
}
