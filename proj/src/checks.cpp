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

#include "risim/checks.hpp"
#include "risim/channel_models.hpp"
#include "risim/correlation.hpp"
#include "risim/kernels.hpp"
#include "risim/precoding.hpp"
#include "risim/ris_config.hpp"

#include <Eigen/SVD>

#include <chrono>
#include <cstdio>

namespace risim
{
    namespace
    {
        std::string printf_string(const char *fmt, double a, double b = 0.0)
        {
            char buf[160];
            std::snprintf(buf, sizeof(buf), fmt, a, b);
            return buf;
        }

        template <typename F>
        CheckOutcome timed(const std::string &name, F &&body)
        {
            const auto t0 = std::chrono::steady_clock::now();
            CheckOutcome out = body();
            out.name = name;
            out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            return out;
        }

        double smallest_singular_value(const CMat &m)
        {
            Eigen::JacobiSVD<CMat> svd(m);
            return svd.singularValues().minCoeff();
        }
    }

    std::vector<CheckOutcome> check_covariance(const CheckOptions &options)
    {
        const double lambda = wavelength_from_carrier(5e9);
        const double d = 0.5 * lambda;
        const struct
        {
            const char *name;
            ArrayGeometry geom;
        } cases[] = {{"covariance_ula4", ArrayGeometry::upa(1, 4, d, d)}, {"covariance_upa2x2", ArrayGeometry::upa(2, 2, d, d)}};

        std::vector<CheckOutcome> out;
        std::uint64_t tag = 0;
        for (const auto &c : cases)
            out.push_back(timed(c.name, [&]
                                {
                                    const auto res = empirical_lemma1_check(options.n_paths, c.geom, c.geom, lambda, 1.0,
                                                                            options.draws, derive_seed(options.seed, {tag++}));
                                    return CheckOutcome{{}, res.max_abs_error < 0.05,
                                                        printf_string("max |cov error| = %.4f sigma_c^2 (limit 0.05)",
                                                                      res.max_abs_error)};
                                }));
        return out;
    }

    CheckOutcome check_tile_search(const CheckOptions &options)
    {
        return timed("tile_search", [&]
                     {
                         const TilePartition partition(2, 1, 2, 2);
                         const Codebook codebook = build_codebook(2, 2);
                         const Index n_t = 4, n_ue = 2, q = partition.element_count();
                         int mismatches = 0;
                         double worst_gamma_error = 0.0;

                         for (int inst = 0; inst < options.instances; ++inst)
                         {
                             Rng rng(derive_seed(options.seed, {0x7153ULL, std::uint64_t(inst)}));
                             const CMat direct = sample_iid_rayleigh(rng, n_ue, n_t, 0.01);
                             const CMat h_t = sample_iid_rayleigh(rng, q, n_t, 1.0);
                             const CMat h_r = sample_iid_rayleigh(rng, n_ue, q, 1.0);
                             const auto res = configure_tiles(direct, h_t, h_r, partition, codebook, Exec::serial);

                             // brute force: unconfigured tiles reflect nothing, configured ones keep their choice
                             CVec gamma = CVec::Zero(q);
                             for (Index t : partition.visit_order(TileOrder::raster_y))
                             {
                                 const auto els = partition.elements(t);
                                 std::vector<double> scores(std::size_t(codebook.size()));
                                 for (Index m = 0; m < codebook.size(); ++m)
                                 {
                                     CVec trial = gamma;
                                     for (std::size_t i = 0; i < els.size(); ++i)
                                         trial[els[i]] = phasor(codebook.phases(m, Index(i)));
                                     scores[std::size_t(m)] =
                                         smallest_singular_value(direct + h_r * trial.asDiagonal() * h_t);
                                 }
                                 const Index best = kernels::argmax_lowest(scores);
                                 if (best != res.config.chosen[std::size_t(t)])
                                     ++mismatches;
                                 for (std::size_t i = 0; i < els.size(); ++i)
                                     gamma[els[i]] = phasor(codebook.phases(res.config.chosen[std::size_t(t)], Index(i)));
                             }
                             const CMat full = end_to_end_channel(direct, h_t, h_r, assemble_gamma(res.config));
                             worst_gamma_error = std::max(worst_gamma_error, (full - res.effective.rows).cwiseAbs().maxCoeff());
                         }
                         return CheckOutcome{{}, mismatches == 0 && worst_gamma_error < 1e-10,
                                             printf_string("%.0f selection mismatches, max |Gamma reconstruction error| = %.2e",
                                                           double(mismatches), worst_gamma_error)};
                     });
    }

    CheckOutcome check_precoder(const CheckOptions &options)
    {
        return timed("precoder", [&]
                     {
                         double worst_tight = 0.0, worst_gap = 0.0, worst_mrt = 0.0;
                         bool scaling_ok = true;
                         int infeasible = 0;
                         for (int inst = 0; inst < options.instances; ++inst)
                         {
                             Rng rng(derive_seed(options.seed, {0x9EC0ULL, std::uint64_t(inst)}));
                             const double gamma = 10.0, noise = 1.0;

                             const CMat single = sample_iid_rayleigh(rng, 1, 4, 1.0);
                             const auto s1 = min_power_precoder(single, gamma, noise);
                             const double mrt = gamma * noise / single.squaredNorm();
                             worst_mrt = std::max(worst_mrt, std::abs(s1.total_power - mrt) / mrt);

                             const CMat rows = sample_iid_rayleigh(rng, 2, 4, 1.0);
                             PrecodingSolution sol;
                             try
                             {
                                 sol = min_power_precoder(rows, gamma, noise);
                             }
                             catch (const InfeasibleError &)
                             {
                                 ++infeasible;
                                 continue;
                             }
                             for (double s : sol.achieved_sinr)
                                 worst_tight = std::max(worst_tight, std::abs(s / gamma - 1.0));
                             worst_gap = std::max(worst_gap, std::abs(sol.dual_power - sol.total_power) / sol.total_power);
                             for (Index k = 0; k < rows.rows(); ++k)
                             {
                                 CMat w = sol.w;
                                 w.col(k) *= 0.999;
                                 if (achieved_sinr(w, rows, noise)[std::size_t(k)] >= gamma)
                                     scaling_ok = false;
                             }
                         }
                         const bool ok = infeasible == 0 && scaling_ok && worst_tight < 1e-6 && worst_gap < 1e-6 && worst_mrt < 1e-9;
                         return CheckOutcome{{}, ok,
                                             printf_string("max SINR slack %.2e, max duality gap %.2e", worst_tight, worst_gap) +
                                                 printf_string(", single-user error %.2e, infeasible %.0f", worst_mrt, infeasible) +
                                                 (scaling_ok ? "" : ", down-scaling stayed feasible")};
                     });
    }

    std::vector<CheckOutcome> run_checks(const CheckOptions &options)
    {
        auto out = check_covariance(options);
        out.push_back(check_tile_search(options));
        out.push_back(check_precoder(options));
        return out;
    }
}
