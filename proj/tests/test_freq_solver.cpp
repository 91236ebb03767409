// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fdris/freq_solver.hpp"
#include "support/instances.hpp"

using namespace fdris;

namespace
{
    FreqObjective make_objective(const testing::RandomInstance& inst)
    {
        return assemble_freq_objective(inst.config, inst.layout, inst.channels, inst.state.w,
                                       inst.state.aux, inst.state.theta_tilde);
    }
}

TEST_SUITE("freq-solver")
{
    TEST_CASE("objective equals the negated surrogate")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 2, 3, 3, 70);
        const FreqObjective obj = make_objective(inst);
        Rng rng(71);
        for (int trial = 0; trial < 20; ++trial)
        {
            const RVec f = testing::random_frequencies(inst.layout.subarrays(),
                                                       inst.config.f_min, inst.config.f_max, rng);
            const EffectiveChannels eff = effective_channels(inst.config, inst.layout,
                                                             inst.channels, inst.state.theta_tilde, f);
            const double sur = surrogate_wsr(inst.state.w, eff, inst.config.noise_power,
                                             inst.config.weights, inst.state.aux);
            CHECK(eval_freq_objective(f, obj) == doctest::Approx(-sur).epsilon(1e-8));
        }
    }

    TEST_CASE("zero beams leave only the constant")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 1, 2, 2, 72);
        std::vector<CVec> zero(inst.state.w.size(), CVec::Zero(inst.config.n_tx));
        const MmseAux aux = update_aux(zero, inst.eff, inst.config.noise_power);
        const FreqObjective obj = assemble_freq_objective(inst.config, inst.layout, inst.channels,
                                                          zero, aux, inst.state.theta_tilde);
        for (const CMat& D : obj.D)
            CHECK(D.cwiseAbs().maxCoeff() == 0.0);
        CHECK(eval_freq_objective(inst.state.f, obj) == doctest::Approx(-obj.C));
    }

    TEST_CASE("zero harmonic decouples the objective from f")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 2, 3, 2, 73);
        inst.config.harmonic = 0;
        inst.eff = effective_channels(inst.config, inst.layout, inst.channels,
                                      inst.state.theta_tilde, inst.state.f);
        inst.state.aux = update_aux(inst.state.w, inst.eff, inst.config.noise_power);
        const FreqObjective obj = make_objective(inst);
        Rng rng(74);
        double lo = 1e300, hi = -1e300;
        for (int trial = 0; trial < 20; ++trial)
        {
            const RVec f = testing::random_frequencies(inst.layout.subarrays(),
                                                       inst.config.f_min, inst.config.f_max, rng);
            const double v = eval_freq_objective(f, obj);
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        CHECK(hi - lo < 1e-12 * std::max(1.0, std::abs(hi)));
        CHECK(freq_gradient(inst.state.f, obj).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("gradient matches central finite differences")
    {
        SUBCASE("single subarray")
        {
            auto inst = testing::make_random_instance(1, 1, 2, 2, 2, 2, 75);
            const FreqObjective obj = make_objective(inst);
            Rng rng(76);
            for (int trial = 0; trial < 5; ++trial)
            {
                const RVec f = testing::random_frequencies(1, inst.config.f_min,
                                                           inst.config.f_max, rng);
                const RVec grad = freq_gradient(f, obj);
                const double h = inst.config.f_max * 1e-7;
                RVec fp = f, fm = f;
                fp(0) += h;
                fm(0) -= h;
                const double fd =
                    (eval_freq_objective(fp, obj) - eval_freq_objective(fm, obj)) / (2.0 * h);
                CHECK(grad(0) == doctest::Approx(fd).epsilon(1e-4));
            }
        }
        SUBCASE("four subarrays")
        {
            auto inst = testing::make_random_instance(2, 2, 2, 2, 4, 4, 77);
            const FreqObjective obj = make_objective(inst);
            const RVec f = inst.state.f;
            const RVec grad = freq_gradient(f, obj);
            const double h = inst.config.f_max * 1e-7;
            for (int l = 0; l < 4; ++l)
            {
                RVec fp = f, fm = f;
                fp(l) += h;
                fm(l) -= h;
                const double fd =
                    (eval_freq_objective(fp, obj) - eval_freq_objective(fm, obj)) / (2.0 * h);
                CHECK(grad(l) == doctest::Approx(fd).epsilon(1e-4));
            }
        }
    }

    TEST_CASE("approximation matches value and gradient at the expansion point")
    {
        auto inst = testing::make_random_instance(2, 2, 2, 2, 4, 3, 78);
        const FreqObjective obj = make_objective(inst);
        const RVec f = inst.state.f;
        const double g0 = eval_freq_objective(f, obj);
        const RVec grad = freq_gradient(f, obj);
        const double rho = 0.3 * std::abs(g0) + 1.0;
        const MmaSubproblem sub = build_mma(f, g0, grad, {}, rho, 1, obj);

        CHECK(sub.value(f) == doctest::Approx(g0).epsilon(1e-9));
        const RVec ghat_grad = sub.gradient(f);
        for (int l = 0; l < grad.size(); ++l)
            CHECK(std::abs(ghat_grad(l) - grad(l)) <=
                  1e-9 * std::max(1.0, std::abs(grad(l))));
    }

    TEST_CASE("first-iteration asymptotes sit one span away")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 1, 2, 2, 79);
        const FreqObjective obj = make_objective(inst);
        const RVec f = inst.state.f;
        const double g0 = eval_freq_objective(f, obj);
        const MmaSubproblem sub = build_mma(f, g0, freq_gradient(f, obj), {}, 1.0, 1, obj);
        const double span = obj.f_max - obj.f_min;
        for (int l = 0; l < f.size(); ++l)
        {
            CHECK(sub.upper(l) - f(l) == doctest::Approx(span));
            CHECK(f(l) - sub.lower(l) == doctest::Approx(span));
        }
    }

    TEST_CASE("minimizer moves against the gradient sign")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 1, 2, 2, 80);
        const FreqObjective obj = make_objective(inst);
        const RVec f = RVec::Constant(4, 0.5 * (obj.f_min + obj.f_max));
        RVec grad(4);
        grad << 1.0, -1.0, 2.0, -0.5; // synthetic slopes
        const MmaSubproblem sub = build_mma(f, 0.0, grad, {}, 1.0, 1, obj);
        const RVec fopt = solve_mma(sub);
        for (int l = 0; l < 4; ++l)
        {
            if (grad(l) > 0.0)
                CHECK(fopt(l) < f(l));
            else
                CHECK(fopt(l) > f(l));
        }
    }

    TEST_CASE("closed-form minimizer properties")
    {
        MmaSubproblem sub;
        sub.f_center = RVec::Constant(1, 5.0);
        sub.upper = RVec::Constant(1, 9.0);
        sub.lower = RVec::Constant(1, 1.0);
        sub.f_low = RVec::Constant(1, 2.0);
        sub.f_up = RVec::Constant(1, 8.0);
        sub.a = 0.0;

        SUBCASE("symmetric coefficients land midway between the asymptotes")
        {
            sub.p = RVec::Constant(1, 3.0);
            sub.q = RVec::Constant(1, 3.0);
            CHECK(solve_mma(sub)(0) == doctest::Approx(5.0));
        }
        SUBCASE("clamping to the move limits")
        {
            sub.p = RVec::Constant(1, 1e-6);
            sub.q = RVec::Constant(1, 10.0); // pulls toward the upper asymptote
            CHECK(solve_mma(sub)(0) == doctest::Approx(8.0));
        }
        SUBCASE("unclamped point is stationary")
        {
            sub.p = RVec::Constant(1, 2.0);
            sub.q = RVec::Constant(1, 5.0);
            const RVec fopt = solve_mma(sub);
            if (fopt(0) > sub.f_low(0) && fopt(0) < sub.f_up(0))
                CHECK(std::abs(sub.gradient(fopt)(0)) < 1e-10);
        }
    }

    TEST_CASE("gcmma step descends monotonically and stays conservative")
    {
        auto inst = testing::make_random_instance(2, 2, 2, 2, 4, 4, 81);
        const FreqObjective obj = make_objective(inst);
        std::vector<double> g_values{eval_freq_objective(inst.state.f, obj)};
        bool conservative = true;
        GcmmaOptions opts;
        opts.inner_cap = 100; // enough head room for the 1.1x rho growth
        const GcmmaResult res = gcmma_step(
            inst.state.f, obj, opts, [&](int, double g, double ghat, const RVec& f) {
                g_values.push_back(g);
                if (ghat < g - 1e-9 * std::max(1.0, std::abs(g)))
                    conservative = false;
                CHECK(f.minCoeff() >= obj.f_min - 1e-9);
                CHECK(f.maxCoeff() <= obj.f_max + 1e-9);
            });
        CHECK(conservative);
        CHECK(res.conservative);
        for (size_t i = 1; i < g_values.size(); ++i)
            CHECK(g_values[i] <= g_values[i - 1] + 1e-9 * std::max(1.0, std::abs(g_values[i])));
        // Surrogate improvement translates to a non-decreasing weighted rate.
        const EffectiveChannels eff = effective_channels(inst.config, inst.layout, inst.channels,
                                                         inst.state.theta_tilde, res.f);
        const double before = surrogate_wsr(inst.state.w, inst.eff, inst.config.noise_power,
                                            inst.config.weights, inst.state.aux);
        const double after = surrogate_wsr(inst.state.w, eff, inst.config.noise_power,
                                           inst.config.weights, inst.state.aux);
        CHECK(after >= before - 1e-9 * std::max(1.0, std::abs(before)));
    }

    TEST_CASE("zero harmonic terminates in one outer iteration")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 1, 2, 2, 82);
        inst.config.harmonic = 0;
        inst.eff = effective_channels(inst.config, inst.layout, inst.channels,
                                      inst.state.theta_tilde, inst.state.f);
        inst.state.aux = update_aux(inst.state.w, inst.eff, inst.config.noise_power);
        const FreqObjective obj = make_objective(inst);
        const GcmmaResult res = gcmma_step(inst.state.f, obj);
        CHECK(res.outer_iters == 1);
        CHECK((res.f - inst.state.f).cwiseAbs().maxCoeff() == 0.0);
    }

    TEST_CASE("initial conservative factor follows the gradient magnitude")
    {
        auto inst = testing::make_random_instance(2, 2, 2, 2, 4, 3, 83);
        const FreqObjective obj = make_objective(inst);
        const RVec grad = freq_gradient(inst.state.f, obj);
        const double span = obj.f_max - obj.f_min;
        const double expected = span / (10.0 * inst.state.f.size()) * grad.cwiseAbs().sum();
        const GcmmaResult res = gcmma_step(inst.state.f, obj);
        CHECK(res.rho_initial == doctest::Approx(expected).epsilon(1e-12));
    }
}
