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

#include "fdris/active_solver.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <stdexcept>

namespace fdris
{
    namespace
    {
        constexpr double kLn2 = 0.6931471805599453;
        constexpr double kEigCutoff = 1e-12;

        // Shared eigenbasis so every mu evaluation is O(K N_t) after one
        // O(N_t^3) factorization.
        struct DualEvaluator
        {
            RVec eigenvalues;      // clamped to >= 0 (A_hat is PSD up to noise)
            CMat eigenvectors;
            CMat rhs_spectral;     // per user: U^H (omega_k W_k / ln2) a_k

            DualEvaluator(const ActiveQuadratics& quad, const MmseAux& aux, const RVec& weights)
            {
                Eigen::SelfAdjointEigenSolver<CMat> es(quad.a_hat);
                if (es.info() != Eigen::Success)
                    throw std::runtime_error("solve_active: eigendecomposition failed");
                eigenvalues = es.eigenvalues().cwiseMax(0.0);
                eigenvectors = es.eigenvectors();
                const int n_tx = static_cast<int>(quad.a_hat.rows());
                const int n_users = static_cast<int>(quad.a.size());
                rhs_spectral.resize(n_tx, n_users);
                for (int k = 0; k < n_users; ++k)
                {
                    const double c = weights(k) * aux.weight(k) / kLn2;
                    rhs_spectral.col(k) = eigenvectors.adjoint() * (c * quad.a[static_cast<size_t>(k)]);
                }
            }

            double power(double mu) const
            {
                const double cutoff = kEigCutoff * eigenvalues.maxCoeff();
                double total = 0.0;
                for (int i = 0; i < eigenvalues.size(); ++i)
                {
                    const double denom = eigenvalues(i) + mu;
                    if (denom <= cutoff) // pseudo-inverse: null-space components dropped
                        continue;
                    total += rhs_spectral.row(i).squaredNorm() / (denom * denom);
                }
                return total;
            }

            std::vector<CVec> beams(double mu) const
            {
                const double cutoff = kEigCutoff * eigenvalues.maxCoeff();
                const int n_users = static_cast<int>(rhs_spectral.cols());
                RVec inv(eigenvalues.size());
                for (int i = 0; i < eigenvalues.size(); ++i)
                {
                    const double denom = eigenvalues(i) + mu;
                    inv(i) = (denom <= cutoff) ? 0.0 : 1.0 / denom;
                }
                std::vector<CVec> w(static_cast<size_t>(n_users));
                for (int k = 0; k < n_users; ++k)
                    w[static_cast<size_t>(k)] =
                        eigenvectors * inv.cast<cxd>().cwiseProduct(rhs_spectral.col(k));
                return w;
            }
        };
    }

    ActiveQuadratics assemble_quadratics(const EffectiveChannels& eff, const MmseAux& aux,
                                         const RVec& weights)
    {
        const int n_tx = static_cast<int>(eff.rows.cols());
        const int n_users = eff.n_users();
        ActiveQuadratics quad;
        quad.a_hat = CMat::Zero(n_tx, n_tx);
        quad.a.resize(static_cast<size_t>(n_users));
        for (int k = 0; k < n_users; ++k)
        {
            const CVec gk_h = eff.rows.row(k).adjoint(); // g_k^H, N_t x 1
            const double c = weights(k) * aux.weight(k) * std::norm(aux.receive(k)) / kLn2;
            quad.a_hat.noalias() += c * (gk_h * gk_h.adjoint());
            quad.a[static_cast<size_t>(k)] = gk_h * aux.receive(k);
        }
        // Symmetrize away accumulation noise.
        quad.a_hat = 0.5 * (quad.a_hat + quad.a_hat.adjoint()).eval();
        return quad;
    }

    std::vector<CVec> w_opt(double mu, const ActiveQuadratics& quad, const MmseAux& aux,
                            const RVec& weights)
    {
        if (mu < 0.0)
            throw std::invalid_argument("w_opt: dual variable must be nonnegative");
        return DualEvaluator(quad, aux, weights).beams(mu);
    }

    double total_power(double mu, const ActiveQuadratics& quad, const MmseAux& aux,
                       const RVec& weights)
    {
        if (mu < 0.0)
            throw std::invalid_argument("total_power: dual variable must be nonnegative");
        return DualEvaluator(quad, aux, weights).power(mu);
    }

    ActiveSolveResult solve_active(const EffectiveChannels& eff, const MmseAux& aux,
                                   const RVec& weights, double p_tmax, double eps)
    {
        if (!(eps > 0.0))
            throw std::invalid_argument("solve_active: tolerance must be positive");
        if (p_tmax < 0.0)
            throw std::invalid_argument("solve_active: power budget must be nonnegative");

        const ActiveQuadratics quad = assemble_quadratics(eff, aux, weights);
        const DualEvaluator dual(quad, aux, weights);

        ActiveSolveResult out;
        const double p0 = dual.power(0.0);
        if (p0 <= p_tmax)
        {
            // Complementary slackness: constraint inactive, mu = 0.
            out.w = dual.beams(0.0);
            out.mu = 0.0;
            out.power = p0;
            return out;
        }

        double mu_low = 0.0;
        double mu_up = 1.0;
        int doublings = 0;
        while (dual.power(mu_up) >= p_tmax)
        {
            mu_up *= 2.0;
            if (++doublings > 60)
                throw std::runtime_error("solve_active: failed to bracket the dual variable");
        }

        int iters = 0;
        while (mu_up - mu_low > eps)
        {
            const double mu_mid = 0.5 * (mu_up + mu_low);
            if (mu_mid <= mu_low || mu_mid >= mu_up) // bracket at floating-point resolution
                break;
            if (dual.power(mu_mid) >= p_tmax)
                mu_low = mu_mid;
            else
                mu_up = mu_mid;
            ++iters;
        }

        // mu_up side guarantees P(mu) <= p_tmax.
        out.mu = mu_up;
        out.w = dual.beams(mu_up);
        out.power = dual.power(mu_up);
        out.bisection_iters = iters;
        return out;
    }
}
