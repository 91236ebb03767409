// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fdris/delay_solver.hpp"
#include "support/instances.hpp"

using namespace fdris;

namespace
{
    QuadraticForm random_quadratic(int n, Rng& rng, double b_scale = 1.0)
    {
        // PSD B from a random rank-3 factor.
        CMat factor(n, 3);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < 3; ++j)
                factor(i, j) = rng.standard_complex_gaussian();
        QuadraticForm quad;
        quad.B = factor * factor.adjoint();
        quad.b = testing::random_complex_vector(n, rng, b_scale);
        quad.C = rng.uniform();
        return quad;
    }

    // Coordinate sweep with multi-restart and grid refinement; independent of
    // the manifold machinery.
    double coordinate_sweep_oracle(const QuadraticForm& quad, Rng& rng, int grid = 64)
    {
        const int n = static_cast<int>(quad.b.size());
        double best = -1e300;
        for (int restart = 0; restart < 8; ++restart)
        {
            CVec theta = restart == 0 ? CVec(CVec::Ones(n))
                                      : testing::random_unit_modulus(n, rng);
            double value = quad.value(theta);
            for (int round = 0; round < 200; ++round)
            {
                bool improved = false;
                for (int i = 0; i < n; ++i)
                {
                    double best_phase = std::arg(theta(i));
                    double local = value;
                    for (int p = 0; p < grid; ++p)
                    {
                        CVec candidate = theta;
                        candidate(i) = jexp(kTwoPi * p / grid);
                        const double v = quad.value(candidate);
                        if (v > local)
                        {
                            local = v;
                            best_phase = kTwoPi * p / grid;
                            improved = true;
                        }
                    }
                    theta(i) = jexp(best_phase);
                    value = local;
                }
                if (!improved)
                    break;
            }
            // Golden-section refinement per coordinate.
            for (int refine = 0; refine < 3; ++refine)
                for (int i = 0; i < n; ++i)
                {
                    double lo = std::arg(theta(i)) - kTwoPi / grid;
                    double hi = std::arg(theta(i)) + kTwoPi / grid;
                    for (int it = 0; it < 60; ++it)
                    {
                        const double m1 = lo + 0.381966 * (hi - lo);
                        const double m2 = hi - 0.381966 * (hi - lo);
                        CVec c1 = theta;
                        CVec c2 = theta;
                        c1(i) = jexp(m1);
                        c2(i) = jexp(m2);
                        if (quad.value(c1) > quad.value(c2))
                            hi = m2;
                        else
                            lo = m1;
                    }
                    theta(i) = jexp(0.5 * (lo + hi));
                }
            best = std::max(best, quad.value(theta));
        }
        return best;
    }
}

TEST_SUITE("delay-solver")
{
    TEST_CASE("quadratic agrees with the surrogate sum rate")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 2, 3, 3, 50);
        const QuadraticForm quad = assemble_delay_quadratic(
            inst.config, inst.layout, inst.channels, inst.state.w, inst.state.aux, inst.state.f);
        Rng rng(51);
        for (int trial = 0; trial < 50; ++trial)
        {
            const CVec theta = testing::random_unit_modulus(inst.layout.elements(), rng);
            const EffectiveChannels eff = effective_channels(
                inst.config, inst.layout, inst.channels, theta.conjugate(), inst.state.f);
            const double sur = surrogate_wsr(inst.state.w, eff, inst.config.noise_power,
                                             inst.config.weights, inst.state.aux);
            CHECK(quad.value(theta) == doctest::Approx(sur).epsilon(1e-8));
        }
    }

    TEST_CASE("zero beams flatten the quadratic")
    {
        auto inst = testing::make_random_instance(2, 2, 1, 2, 3, 2, 52);
        std::vector<CVec> zero(inst.state.w.size(), CVec::Zero(inst.config.n_tx));
        const MmseAux aux = update_aux(zero, inst.eff, inst.config.noise_power);
        const QuadraticForm quad = assemble_delay_quadratic(inst.config, inst.layout,
                                                            inst.channels, zero, aux, inst.state.f);
        CHECK(quad.B.cwiseAbs().maxCoeff() == 0.0);
        CHECK(quad.b.cwiseAbs().maxCoeff() == 0.0);
        Rng rng(1);
        const CVec theta = testing::random_unit_modulus(inst.layout.elements(), rng);
        CHECK(quad.value(theta) == doctest::Approx(quad.C));
    }

    TEST_CASE("toy instance matches hand-expanded outer products")
    {
        // K = 1, N_t = 1, I = 2: B = c |u|^2 m m^H with m_i = h_i theta_i H_i w.
        auto inst = testing::make_random_instance(1, 2, 1, 1, 1, 1, 53);
        const QuadraticForm quad = assemble_delay_quadratic(
            inst.config, inst.layout, inst.channels, inst.state.w, inst.state.aux, inst.state.f);

        const ModulationParams mod =
            inst.config.modulation(inst.state.f, RVec::Zero(inst.layout.elements()));
        const CVec tk = theta_k(mod, inst.layout, inst.config.users[0]);
        CVec m(2);
        for (int i = 0; i < 2; ++i)
            m(i) = inst.channels.h_ru[0](i) * tk(i) * inst.channels.h_br(i, 0) *
                   inst.state.w[0](0);
        const double c = inst.config.weights(0) * inst.state.aux.weight(0) / 0.6931471805599453;
        const cxd u = inst.state.aux.receive(0);
        const CMat expected_B = c * std::norm(u) * (m * m.adjoint());
        const CVec expected_b = c * std::conj(u) * m;
        CHECK((quad.B - expected_B).cwiseAbs().maxCoeff() < 1e-12 * expected_B.cwiseAbs().maxCoeff());
        CHECK((quad.b - expected_b).cwiseAbs().maxCoeff() < 1e-12 * expected_b.cwiseAbs().maxCoeff());
    }

    TEST_CASE("euclidean gradient special cases and finite differences")
    {
        Rng rng(54);
        SUBCASE("zero curvature")
        {
            QuadraticForm quad;
            quad.B = CMat::Zero(4, 4);
            quad.b = testing::random_complex_vector(4, rng);
            quad.C = 0.0;
            const CVec theta = testing::random_unit_modulus(4, rng);
            CHECK((euclidean_grad(theta, quad) - 2.0 * quad.b).cwiseAbs().maxCoeff() < 1e-14);
        }
        SUBCASE("eigenvector case")
        {
            QuadraticForm quad;
            quad.B = CMat::Identity(3, 3) * 2.5;
            quad.b = CVec::Zero(3);
            const CVec theta = testing::random_unit_modulus(3, rng);
            CHECK((euclidean_grad(theta, quad) + 5.0 * theta).cwiseAbs().maxCoeff() < 1e-12);
        }
        SUBCASE("finite differences")
        {
            const QuadraticForm quad = random_quadratic(5, rng);
            const CVec theta = testing::random_unit_modulus(5, rng);
            const CVec grad = euclidean_grad(theta, quad);
            const double h = 1e-6;
            for (int i = 0; i < 5; ++i)
            {
                CVec tp = theta, tm = theta;
                tp(i) += h;
                tm(i) -= h;
                const double dre = (quad.value(tp) - quad.value(tm)) / (2.0 * h);
                tp = theta;
                tm = theta;
                tp(i) += cxd(0.0, h);
                tm(i) -= cxd(0.0, h);
                const double dim = (quad.value(tp) - quad.value(tm)) / (2.0 * h);
                const cxd fd(dre, dim);
                CHECK(std::abs(grad(i) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
            }
        }
    }

    TEST_CASE("riemannian gradient projection")
    {
        Rng rng(55);
        const CVec theta = testing::random_unit_modulus(6, rng);
        SUBCASE("radial component vanishes")
        {
            const CVec radial = 3.7 * theta;
            CHECK(riemannian_grad(theta, radial).cwiseAbs().maxCoeff() < 1e-14);
        }
        SUBCASE("tangential component passes through")
        {
            const CVec tangential = cxd(0.0, 1.0) * theta;
            CHECK((riemannian_grad(theta, tangential) - tangential).cwiseAbs().maxCoeff() < 1e-14);
        }
        SUBCASE("tangency property")
        {
            for (int trial = 0; trial < 50; ++trial)
            {
                const CVec g = testing::random_complex_vector(6, rng);
                const CVec proj = riemannian_grad(theta, g);
                for (int i = 0; i < 6; ++i)
                {
                    const double radial = proj(i).real() * theta(i).real() +
                                          proj(i).imag() * theta(i).imag();
                    CHECK(std::abs(radial) < 1e-12);
                }
            }
        }
    }

    TEST_CASE("polak-ribiere resets")
    {
        Rng rng(56);
        const CVec grad = testing::random_complex_vector(4, rng);
        SUBCASE("no previous gradient: steepest ascent")
        {
            const auto pr = polak_ribiere(grad, CVec::Zero(4), CVec::Zero(4));
            CHECK(pr.beta == 0.0);
            CHECK((pr.direction - grad).cwiseAbs().maxCoeff() == 0.0);
        }
        SUBCASE("unchanged gradient gives beta zero")
        {
            const auto pr = polak_ribiere(grad, grad, grad, grad.squaredNorm());
            CHECK(pr.beta == doctest::Approx(0.0).epsilon(1e-14));
        }
        SUBCASE("non-ascent combination resets to the gradient")
        {
            // Large previous direction pointing against the gradient.
            const CVec prev_grad = 0.5 * grad;
            const CVec prev_dir = -100.0 * grad;
            const auto pr =
                polak_ribiere(grad, prev_grad, prev_dir, prev_grad.squaredNorm());
            CHECK((pr.direction - grad).cwiseAbs().maxCoeff() == 0.0);
        }
    }

    TEST_CASE("retraction")
    {
        CVec x(3);
        x << cxd(1.0, 1.0), cxd(0.0, 0.0), cxd(-2.0, 0.0);
        CVec fallback(3);
        fallback << cxd(1.0, 0.0), cxd(0.0, -1.0), cxd(1.0, 0.0);
        const CVec r = retract_to_circles(x, fallback);
        CHECK(std::abs(r(0) - cxd(1.0, 1.0) / std::sqrt(2.0)) < 1e-15);
        CHECK(r(1) == cxd(0.0, -1.0)); // degenerate entry keeps the fallback
        CHECK(std::abs(r(2) - cxd(-1.0, 0.0)) < 1e-15);

        Rng rng(57);
        const CVec y = testing::random_complex_vector(8, rng);
        const CVec ry = retract_to_circles(y, CVec::Ones(8));
        for (int i = 0; i < 8; ++i)
            CHECK(std::abs(std::abs(ry(i)) - 1.0) < 1e-15);
        const CVec unit = testing::random_unit_modulus(5, rng);
        CHECK((retract_to_circles(unit, unit) - unit).cwiseAbs().maxCoeff() < 1e-15);
    }

    TEST_CASE("linear objective reaches the analytic maximizer")
    {
        Rng rng(58);
        QuadraticForm quad;
        quad.B = CMat::Zero(6, 6);
        quad.b = testing::random_complex_vector(6, rng);
        quad.C = 0.0;
        RcgOptions tight;
        tight.tolerance = 1e-14; // value gap is quadratic in the phase error
        tight.max_iters = 5000;
        const RcgResult res = maximize_on_circles(quad, CVec::Ones(6), tight);
        for (int i = 0; i < 6; ++i)
            CHECK(std::abs(res.theta(i) - quad.b(i) / std::abs(quad.b(i))) < 1e-6);

        // Starting at the maximizer terminates almost immediately with a
        // vanishing Riemannian gradient.
        CVec opt(6);
        for (int i = 0; i < 6; ++i)
            opt(i) = quad.b(i) / std::abs(quad.b(i));
        const RcgResult again = maximize_on_circles(quad, opt, tight);
        CHECK(again.iterations <= 2);
        CHECK(again.grad_norm <= 1e-8 * std::max(1.0, 2.0 * quad.b.norm()));
    }

    TEST_CASE("monotone ascent with unit-modulus iterates")
    {
        Rng rng(59);
        const QuadraticForm quad = random_quadratic(8, rng, 2.0);
        std::vector<double> values;
        double worst_modulus = 0.0;
        const RcgResult res = maximize_on_circles(
            quad, testing::random_unit_modulus(8, rng), {},
            [&](int, double value, const CVec& theta) {
                values.push_back(value);
                for (int i = 0; i < theta.size(); ++i)
                    worst_modulus = std::max(worst_modulus, std::abs(std::abs(theta(i)) - 1.0));
            });
        REQUIRE(values.size() >= 2);
        for (size_t i = 1; i < values.size(); ++i)
            CHECK(values[i] >= values[i - 1] - 1e-12 * std::max(1.0, std::abs(values[i])));
        CHECK(worst_modulus < 1e-12);
        CHECK(res.value == doctest::Approx(values.back()));
    }

    TEST_CASE("small instance reaches the coordinate-sweep optimum")
    {
        Rng rng(60);
        const QuadraticForm quad = random_quadratic(4, rng, 3.0);
        RcgOptions opts;
        opts.tolerance = 1e-12;
        opts.max_iters = 2000;
        const RcgResult res = maximize_on_circles(quad, CVec::Ones(4), opts);
        Rng oracle_rng(61);
        const double oracle = coordinate_sweep_oracle(quad, oracle_rng);
        CHECK(std::abs(res.value - oracle) <= 1e-3 * std::max(1.0, std::abs(oracle)));
    }

    TEST_CASE("solve_delays recovers feasible delays and keeps the surrogate")
    {
        auto inst = testing::make_random_instance(2, 2, 2, 2, 4, 3, 62);
        const double before = surrogate_wsr(inst.state.w, inst.eff, inst.config.noise_power,
                                            inst.config.weights, inst.state.aux);
        const DelaySolveResult res = solve_delays(inst.config, inst.layout, inst.channels,
                                                  inst.state, inst.state.aux);
        REQUIRE(res.tau.size() == inst.layout.elements());
        CHECK(res.tau.minCoeff() >= 0.0);
        const ModulationParams mod = inst.config.modulation(inst.state.f, res.tau);
        const CVec back = theta_tilde(mod, inst.layout);
        CHECK((back - res.theta_tilde).cwiseAbs().maxCoeff() < 1e-12);

        const EffectiveChannels eff = effective_channels(inst.config, inst.layout, inst.channels,
                                                         res.theta_tilde, inst.state.f);
        const double after = surrogate_wsr(inst.state.w, eff, inst.config.noise_power,
                                           inst.config.weights, inst.state.aux);
        CHECK(after >= before - 1e-10);
    }
}
