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

#include "fdris/delay_solver.hpp"

#include <cmath>
#include <stdexcept>

namespace fdris
{
    namespace
    {
        constexpr double kLn2 = 0.6931471805599453;
    }

    double QuadraticForm::value(const CVec& theta) const
    {
        const double quad = std::real(cxd(theta.adjoint() * (B * theta)));
        const double lin = 2.0 * std::real(cxd(theta.adjoint() * b));
        return -quad + lin + C;
    }

    QuadraticForm assemble_delay_quadratic(const SystemConfig& config, const ArrayLayout& layout,
                                           const ChannelSet& channels, const std::vector<CVec>& w,
                                           const MmseAux& aux, const RVec& frequencies)
    {
        const int total = layout.elements();
        const int n_users = config.n_users();
        const ModulationParams mod = config.modulation(frequencies, RVec::Zero(total));

        CMat beams(config.n_tx, n_users);
        for (int j = 0; j < n_users; ++j)
            beams.col(j) = w[static_cast<size_t>(j)];

        QuadraticForm quad;
        quad.B = CMat::Zero(total, total);
        quad.b = CVec::Zero(total);
        quad.C = 0.0;
        for (int k = 0; k < n_users; ++k)
        {
            const double wk = config.weights(k) * aux.weight(k) / kLn2;
            const cxd u = aux.receive(k);
            const CVec tk = theta_k(mod, layout, config.users[static_cast<size_t>(k)]);
            const CVec scale = channels.h_ru[static_cast<size_t>(k)].cwiseProduct(tk);
            // M_k = Diag(h_ru,k) Theta_k H_BR, folded against all beams at once.
            const CMat mixed = scale.asDiagonal() * (channels.h_br * beams); // I x K
            quad.B.noalias() += (wk * std::norm(u)) * (mixed * mixed.adjoint());
            quad.b += wk * std::conj(u) * mixed.col(k);
            quad.C -= config.weights(k) *
                      (aux.weight(k) * (1.0 + std::norm(u) * config.noise_power) -
                       std::log(aux.weight(k)) - 1.0) /
                      kLn2;
        }
        quad.B = 0.5 * (quad.B + quad.B.adjoint()).eval();
        return quad;
    }

    CVec euclidean_grad(const CVec& theta, const QuadraticForm& quad)
    {
        return -2.0 * (quad.B * theta) + 2.0 * quad.b;
    }

    CVec riemannian_grad(const CVec& theta, const CVec& euclid_grad)
    {
        CVec out(theta.size());
        for (int i = 0; i < theta.size(); ++i)
        {
            const double radial = euclid_grad(i).real() * theta(i).real() +
                                  euclid_grad(i).imag() * theta(i).imag();
            out(i) = euclid_grad(i) - radial * theta(i);
        }
        return out;
    }

    PolakRibiereResult polak_ribiere(const CVec& grad, const CVec& prev_grad_transported,
                                     const CVec& prev_dir_transported,
                                     double prev_grad_norm_sq)
    {
        PolakRibiereResult out;
        const double denom =
            (prev_grad_norm_sq > 0.0) ? prev_grad_norm_sq : prev_grad_transported.squaredNorm();
        if (denom > 0.0)
            out.beta = std::real(cxd(grad.adjoint() * (grad - prev_grad_transported))) / denom;
        if (!std::isfinite(out.beta) || out.beta < 0.0)
            out.beta = 0.0;
        out.direction = grad + out.beta * prev_dir_transported;
        if (std::real(cxd(out.direction.adjoint() * grad)) <= 0.0)
        {
            out.beta = 0.0;
            out.direction = grad;
        }
        return out;
    }

    CVec retract_to_circles(const CVec& x, const CVec& fallback)
    {
        CVec out(x.size());
        for (int i = 0; i < x.size(); ++i)
        {
            const double mag = std::abs(x(i));
            out(i) = (mag < 1e-300) ? fallback(i) : x(i) / mag;
        }
        return out;
    }

    RcgResult maximize_on_circles(const QuadraticForm& quad, const CVec& theta0,
                                  const RcgOptions& opts, const RcgCallback& callback)
    {
        CVec theta = retract_to_circles(theta0, theta0);
        double value = quad.value(theta);
        CVec grad = riemannian_grad(theta, euclidean_grad(theta, quad));
        CVec direction = grad;
        CVec prev_grad = grad;
        CVec prev_dir = direction;

        if (callback)
            callback(0, value, theta);

        // Gradient-magnitude scale of the objective, for the stationarity stop.
        const double grad_scale = 2.0 * (quad.B.norm() + quad.b.norm());
        const double grad_tol = opts.tolerance * std::max(1.0, grad_scale);

        RcgResult out;
        int e = 0;
        for (; e < opts.max_iters; ++e)
        {
            if (e > 0)
            {
                const auto pr = polak_ribiere(grad, riemannian_grad(theta, prev_grad),
                                              riemannian_grad(theta, prev_dir),
                                              prev_grad.squaredNorm());
                direction = pr.direction;
            }

            const double slope = std::real(cxd(direction.adjoint() * grad));
            const double grad_norm = grad.norm();
            if (grad_norm <= grad_tol || !(slope > 0.0))
                break; // stationary point

            // Armijo backtracking, initial step normalized by the gradient size.
            double step = 1.0 / grad_norm;
            bool accepted = false;
            CVec candidate;
            double cand_value = value;
            for (int bt = 0; bt <= opts.max_backtracks; ++bt)
            {
                candidate = retract_to_circles(theta + step * direction, theta);
                cand_value = quad.value(candidate);
                if (cand_value >= value + opts.armijo_coeff * step * slope)
                {
                    accepted = true;
                    break;
                }
                step *= opts.backtrack;
            }
            if (!accepted)
                break; // zero step: treat as stationary

            prev_grad = grad;
            prev_dir = direction;
            theta = candidate;
            const double prev_value = value;
            value = cand_value;
            grad = riemannian_grad(theta, euclidean_grad(theta, quad));
            if (callback)
                callback(e + 1, value, theta);
            if (std::abs(value - prev_value) <= opts.tolerance)
            {
                ++e;
                break;
            }
        }

        out.theta = theta;
        out.value = value;
        out.iterations = e;
        out.grad_norm = grad.norm();
        return out;
    }

    DelaySolveResult solve_delays(const SystemConfig& config, const ArrayLayout& layout,
                                  const ChannelSet& channels, const SolutionState& state,
                                  const MmseAux& aux, const RcgOptions& opts)
    {
        const QuadraticForm quad =
            assemble_delay_quadratic(config, layout, channels, state.w, aux, state.f);
        const CVec theta0 = state.theta_tilde.conjugate();
        const RcgResult rcg = maximize_on_circles(quad, theta0, opts);

        DelaySolveResult out;
        out.theta_tilde = rcg.theta.conjugate();
        out.value = rcg.value;
        out.iterations = rcg.iterations;
        if (config.harmonic != 0)
            out.tau = delays_from_phases(out.theta_tilde, state.f, config.harmonic, layout);
        return out;
    }
}
