// SPDX-License-Identifier: Apache-2.0
//
// risim - link-level simulation of RIS-assisted downlink MIMO systems
// Copyright (C) 2026 The risim authors
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

#include "risim/precoding.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

namespace risim
{
    namespace
    {
        constexpr double divergence_limit = 1e30;

        // Gains |h_k^H u_j|^2 with h_k the columns of h and u_j the columns of u
        RMat cross_gains(const CMat &h, const CMat &u)
        {
            return (h.adjoint() * u).cwiseAbs2();
        }

        // Powers that meet every SINR target with equality for fixed unit-norm directions.
        // gains(k, j) = |h_k^H u_j|^2. Downlink uses the matrix as is, the uplink its transpose.
        // Returns an empty vector when no positive solution exists.
        RVec equal_sinr_powers(const RMat &gains, double gamma)
        {
            const Index n = gains.rows();
            RMat m = -gains;
            m.diagonal() = gains.diagonal() / gamma;
            const Eigen::FullPivLU<RMat> lu(m);
            if (!lu.isInvertible())
                return {};
            const RVec p = lu.solve(RVec::Ones(n));
            if (!p.allFinite() || (p.array() <= 0.0).any())
                return {};
            return p;
        }
    }

    std::vector<double> achieved_sinr(const CMat &w, const CMat &rows, double noise_power)
    {
        if (w.rows() != rows.cols() || w.cols() != rows.rows())
            throw std::invalid_argument("achieved_sinr: dimension mismatch.");
        const RMat g = (rows * w).cwiseAbs2(); // g(k, j) = |h_k^H w_j|^2
        std::vector<double> sinr(std::size_t(rows.rows()));
        for (Index k = 0; k < rows.rows(); ++k)
        {
            const double interference = g.row(k).sum() - g(k, k);
            sinr[std::size_t(k)] = g(k, k) / (interference + noise_power);
        }
        return sinr;
    }

    PrecodingSolution min_power_precoder(const CMat &rows, double gamma_thr, double noise_power,
                                         const PrecoderOptions &options)
    {
        const Index n_ue = rows.rows(), n_t = rows.cols();
        if (n_ue < 1)
            throw std::invalid_argument("min_power_precoder: at least one UE required.");
        if (!(gamma_thr > 0.0) || !(noise_power > 0.0))
            throw std::invalid_argument("min_power_precoder: gamma_thr and noise power must be positive.");
        if (!rows.allFinite())
            throw std::invalid_argument("min_power_precoder: non-finite channel.");

        // Normalize to unit noise; the precoders are unchanged by this scaling
        const CMat h = rows.adjoint() / std::sqrt(noise_power); // columns h_k
        for (Index k = 0; k < n_ue; ++k)
            if (h.col(k).squaredNorm() == 0.0)
                throw InfeasibleError("min_power_precoder: UE " + std::to_string(k) + " has a zero channel.");

        const CMat eye = CMat::Identity(n_t, n_t);
        RVec lambda = RVec::Zero(n_ue);
        CMat u(n_t, n_ue);
        bool converged = false;
        int iter = 0;

        for (; iter < options.max_iters; ++iter)
        {
            // MMSE directions (I + sum_j lambda_j h_j h_j^H)^{-1} h_k
            const CMat cov = eye + h * lambda.cast<cplx>().asDiagonal() * h.adjoint();
            const Eigen::LLT<CMat> llt(cov);
            if (llt.info() != Eigen::Success)
                throw InfeasibleError("min_power_precoder: uplink covariance lost definiteness.");
            const CMat x = llt.solve(h);

            RVec next(n_ue);
            for (Index k = 0; k < n_ue; ++k)
                next[k] = 1.0 / ((1.0 + 1.0 / gamma_thr) * std::real(h.col(k).dot(x.col(k))));
            for (Index k = 0; k < n_ue; ++k)
                u.col(k) = x.col(k).normalized();

            // Exact uplink powers for the current directions. When they exist they are feasible, hence
            // componentwise above the optimum, and repeating the step descends onto it. Otherwise the
            // standard fixed-point step approaches the optimum from below.
            const RVec exact = equal_sinr_powers(cross_gains(h, u).transpose(), gamma_thr);
            if (exact.size() == n_ue)
                next = exact;

            if (!next.allFinite() || next.sum() > divergence_limit)
                throw InfeasibleError("min_power_precoder: dual uplink powers diverge.");

            const double change = ((next - lambda).cwiseAbs().array() / next.array()).maxCoeff();
            lambda = next;
            if (change < options.tolerance)
            {
                converged = true;
                ++iter;
                break;
            }
        }
        if (!converged)
            throw InfeasibleError("min_power_precoder: dual iteration did not converge in " +
                                  std::to_string(options.max_iters) + " iterations.");

        // Final directions at the converged dual point
        const CMat cov = eye + h * lambda.cast<cplx>().asDiagonal() * h.adjoint();
        const CMat x = Eigen::LLT<CMat>(cov).solve(h);
        for (Index k = 0; k < n_ue; ++k)
            u.col(k) = x.col(k).normalized();

        const RVec p = equal_sinr_powers(cross_gains(h, u), gamma_thr);
        if (p.size() != n_ue)
            throw InfeasibleError("min_power_precoder: no positive downlink power allocation.");

        PrecodingSolution sol;
        sol.w = u * p.cwiseSqrt().cast<cplx>().asDiagonal();
        sol.total_power = sol.w.squaredNorm();
        sol.dual_power = lambda.sum(); // unit-noise dual, so this is already in watts
        sol.dual_powers.assign(lambda.data(), lambda.data() + n_ue);
        sol.achieved_sinr = achieved_sinr(sol.w, rows, noise_power);
        sol.iterations = iter;
        return sol;
    }
}
