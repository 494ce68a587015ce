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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include "risim/channel_models.hpp"
#include "risim/correlation.hpp"
#include "risim/harness.hpp"
#include "risim/kernels.hpp"
#include "risim/precoding.hpp"
#include "risim/ris_config.hpp"

#include <Eigen/SVD>
#include <boost/math/distributions/normal.hpp>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

using namespace risim;

namespace
{
    const double lambda = wavelength_from_carrier(5e9);

    struct Verdict
    {
        bool passed = false;
        std::string detail;
    };

    std::string fmt(const char *f, double a = 0, double b = 0, double c = 0, double d = 0)
    {
        char buf[256];
        std::snprintf(buf, sizeof(buf), f, a, b, c, d);
        return buf;
    }

    double max_phase_error(const CMat &a, const CMat &b)
    {
        double worst = 0.0;
        for (Index i = 0; i < a.size(); ++i)
            worst = std::max(worst, std::abs(std::arg(a.data()[i] * std::conj(b.data()[i]))));
        return worst;
    }

    CMat random_complex(Rng &rng, Index rows, Index cols)
    {
        std::normal_distribution<double> n01;
        CMat m(rows, cols);
        for (Index i = 0; i < m.size(); ++i)
            m.data()[i] = cplx(n01(rng), n01(rng));
        return m;
    }

    // sinc(kappa |u_m - u_n|) from explicit element coordinates
    RMat sinc_oracle(const std::vector<Vec3> &pos)
    {
        const Index n = Index(pos.size());
        RMat r(n, n);
        for (Index i = 0; i < n; ++i)
            for (Index j = 0; j < n; ++j)
            {
                const double x = wavenumber(lambda) * (pos[std::size_t(i)] - pos[std::size_t(j)]).norm();
                r(i, j) = x == 0.0 ? 1.0 : std::sin(x) / x;
            }
        return r;
    }

    std::vector<Vec3> grid(int n_y, int n_z, double d)
    {
        std::vector<Vec3> p;
        for (int y = 0; y < n_y; ++y)
            for (int z = 0; z < n_z; ++z)
                p.emplace_back(0.0, y * d, z * d);
        return p;
    }

    Verdict covariance_limit()
    {
        const auto t0 = std::chrono::steady_clock::now();
        const double d = lambda / 2;
        const struct
        {
            ArrayGeometry geom;
            std::vector<Vec3> pos;
        } cases[] = {{ArrayGeometry::upa(1, 4, d, d), grid(1, 4, d)}, {ArrayGeometry::upa(2, 2, d, d), grid(2, 2, d)}};
        double worst = 0.0;
        std::uint64_t seed = 1;
        for (const auto &c : cases)
        {
            const auto res = empirical_lemma1_check(10000, c.geom, c.geom, lambda, 1.0, 10000, seed++);
            const RMat r = sinc_oracle(c.pos);
            const Index n = r.rows();
            // row-major vec: entry (m, n) of H sits at m * N_tx + n
            for (Index m1 = 0; m1 < n; ++m1)
                for (Index n1 = 0; n1 < n; ++n1)
                    for (Index m2 = 0; m2 < n; ++m2)
                        for (Index n2 = 0; n2 < n; ++n2)
                        {
                            const cplx e = res.empirical(m1 * n + n1, m2 * n + n2);
                            worst = std::max(worst, std::abs(e - r(m1, m2) * r(n1, n2)));
                        }
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return {worst < 0.05 && secs < 60.0,
                fmt("max |cov error| %.4f sigma_c^2 (limit 0.05), %.1f s (limit 60 s)", worst, secs)};
    }

    Verdict correlation_zeros()
    {
        const int n = 6;
        const auto g = ArrayGeometry::upa(n, n, lambda / 2, lambda / 2);
        const RMat r = sinc_correlation(g, lambda).r;
        const double diag = std::sin(pi * std::sqrt(2.0)) / (pi * std::sqrt(2.0));
        double worst_zero = 0.0, worst_diag = 0.0;
        for (int ay = 0; ay < n; ++ay)
            for (int az = 0; az < n; ++az)
                for (int by = 0; by < n; ++by)
                    for (int bz = 0; bz < n; ++bz)
                    {
                        const double v = r(g.index(ay, az), g.index(by, bz));
                        if ((ay == by) != (az == bz))
                            worst_zero = std::max(worst_zero, std::abs(v));
                        else if (std::abs(ay - by) == 1 && std::abs(az - bz) == 1)
                            worst_diag = std::max(worst_diag, std::abs(v - diag));
                    }
        return {worst_zero < 1e-12 && worst_diag < 1e-12 && std::abs(diag + 0.217) < 1e-3,
                fmt("max |same row/column| %.2e, diagonal neighbour %.6f (error %.2e)", worst_zero, diag, worst_diag)};
    }

    // Sample mean and variance of each real statistic, accumulated per draw
    struct Moments
    {
        std::vector<double> sum, sq;
        long n = 0;
        void add(const std::vector<double> &x)
        {
            if (sum.empty())
            {
                sum.assign(x.size(), 0.0);
                sq.assign(x.size(), 0.0);
            }
            for (std::size_t i = 0; i < x.size(); ++i)
            {
                sum[i] += x[i];
                sq[i] += x[i] * x[i];
            }
            ++n;
        }
        double mean(std::size_t i) const { return sum[i] / double(n); }
        double var(std::size_t i) const { return (sq[i] - sum[i] * sum[i] / double(n)) / double(n - 1); }
    };

    // Real and imaginary parts of vec(H), then the upper triangle of vec(H) vec(H)^H
    std::vector<double> statistics(const CMat &h)
    {
        const CVec v = vec_rows(h);
        std::vector<double> s;
        for (Index i = 0; i < v.size(); ++i)
        {
            s.push_back(v[i].real());
            s.push_back(v[i].imag());
        }
        for (Index i = 0; i < v.size(); ++i)
            for (Index j = i; j < v.size(); ++j)
            {
                const cplx p = v[i] * std::conj(v[j]);
                s.push_back(p.real());
                if (j != i)
                    s.push_back(p.imag());
            }
        return s;
    }

    Verdict route_equivalence()
    {
        const RMat r_rx = sinc_correlation(ArrayGeometry::upa(1, 3, 0.0, lambda / 4), lambda).r;
        const RMat r_tx = sinc_correlation(ArrayGeometry::upa(1, 2, 0.0, lambda / 3), lambda).r;
        const double sigma = 1.0;
        const RMat f_rx = matrix_sqrt_factor(r_rx), f_tx = matrix_sqrt_factor(r_tx);
        const KroneckerGaussian vec_route(r_rx, r_tx, sigma);
        Rng a(derive_seed(3, {1})), b(derive_seed(3, {2}));
        Moments ma, mb;
        const long draws = 100000;
        for (long i = 0; i < draws; ++i)
        {
            ma.add(statistics(sample_matrix_normal_factor(a, f_rx, f_tx, sigma)));
            mb.add(statistics(vec_route.draw(b)));
        }
        const std::size_t tests = ma.sum.size();
        const double alpha = 0.01;
        const double limit = boost::math::quantile(boost::math::normal(), 1.0 - alpha / (2.0 * double(tests)));
        double worst = 0.0;
        for (std::size_t i = 0; i < tests; ++i)
        {
            const double se = std::sqrt(ma.var(i) / double(ma.n) + mb.var(i) / double(mb.n));
            worst = std::max(worst, std::abs(ma.mean(i) - mb.mean(i)) / se);
        }
        return {worst < limit, fmt("max |z| %.3f over %.0f two-sample tests (Bonferroni limit %.3f at 1%%)", worst,
                                   double(tests), limit)};
    }

    Verdict kronecker_identity()
    {
        const auto g = ArrayGeometry::upa(4, 4, lambda / 2, lambda / 2);
        Rng rng(4);
        std::uniform_real_distribution<double> th(-pi / 2, pi / 2), ph(-pi, pi);
        double worst = 0.0;
        for (int i = 0; i < 1000; ++i)
        {
            const Angle a{th(rng), ph(rng)};
            worst = std::max(worst, (kron_steering(g, a, lambda) - steering_vector(g, a, lambda)).cwiseAbs().maxCoeff());
        }
        return {worst < 1e-12, fmt("max |difference| %.2e over 1000 angles", worst)};
    }

    Verdict nearfield_consistency()
    {
        // far regime: 4x4 arrays at 1e4 Fraunhofer distances, scatterers equally remote
        const auto tx = ArrayGeometry::upa_centered(4, 4, lambda / 2, lambda / 2, Vec3::Zero());
        const double far = 1e4 * fraunhofer_distance(tx.aperture(), lambda);
        LinkGeometry link;
        link.tx = tx;
        link.rx = ArrayGeometry::upa_centered(4, 4, lambda / 2, lambda / 2, Vec3(far, 0.2 * far, 0.1 * far));
        link.cluster_volume = Box{Vec3(0.4 * far, 0.5 * far, -0.2 * far), Vec3(0.6 * far, 0.7 * far, 0.2 * far)};
        link.wavelength = lambda;
        link.h_p = 1.0;
        double far_error = max_phase_error(nearfield_los(link), farfield_los(link));
        Rng rng(5);
        for (const auto &c : draw_clusters(rng, link, 5, 20, ClusterGainLaw::constant))
            for (const auto &s : c.subpaths)
            {
                ScatteringCluster one = c;
                one.subpaths = {s};
                const std::vector<ScatteringCluster> single{one};
                far_error = std::max(far_error, max_phase_error(nearfield_geometric_nlos(link, single),
                                                                lowrank_geometric_nlos(link, single)));
            }

        // near regime: UE 10 m in front of a 32x32 RIS
        LinkGeometry near;
        near.tx = ArrayGeometry::upa_centered(32, 32, lambda / 2, lambda / 2, Vec3::Zero());
        near.rx = ArrayGeometry::single(Vec3(10.0, 0.0, 0.0));
        near.wavelength = lambda;
        near.h_p = 1.0;
        const double near_dev = max_phase_error(nearfield_los(near), farfield_los(near));
        // unwrapped excess path of the worst element relative to the plane wave
        double excess = 0.0;
        for (Index n = 0; n < near.tx.size(); ++n)
            excess = std::max(excess, (near.tx.element_position(n) - Vec3(10, 0, 0)).norm() - 10.0);
        return {far_error < 1e-2 && near_dev > pi / 8,
                fmt("far: max phase error %.2e rad (limit 1e-2); 10 m: max deviation %.3f rad (unwrapped %.2f), "
                    "limit pi/8 = %.3f",
                    far_error, near_dev, wavenumber(lambda) * excess, pi / 8)};
    }

    Verdict tile_search_oracle()
    {
        const TilePartition p(2, 1, 2, 2);
        const auto cb = build_codebook(2, 2);
        Rng rng(6);
        int mismatches = 0, selections = 0;
        double worst_gamma = 0.0;
        for (int inst = 0; inst < 100; ++inst)
        {
            const CMat direct = 0.1 * random_complex(rng, 2, 4), h_t = random_complex(rng, 4 * 2, 4),
                       h_r = random_complex(rng, 2, 8);
            const auto res = configure_tiles(direct, h_t, h_r, p, cb);
            CVec gamma = CVec::Zero(8);
            for (Index t = 0; t < p.n_tiles(); ++t)
            {
                const auto els = p.elements(t);
                std::vector<double> scores;
                for (Index m = 0; m < cb.size(); ++m)
                {
                    CVec g = gamma;
                    for (std::size_t i = 0; i < els.size(); ++i)
                        g[els[i]] = std::polar(1.0, cb.phases(m, Index(i)));
                    scores.push_back(Eigen::JacobiSVD<CMat>(direct + h_r * g.asDiagonal() * h_t).singularValues().minCoeff());
                }
                const double top = *std::max_element(scores.begin(), scores.end());
                Index best = 0;
                while (scores[std::size_t(best)] < top * (1.0 - 1e-9))
                    ++best;
                ++selections;
                if (best != res.config.chosen[std::size_t(t)])
                    ++mismatches;
                for (std::size_t i = 0; i < els.size(); ++i)
                    gamma[els[i]] = std::polar(1.0, cb.phases(best, Index(i)));
            }
            const CMat full = end_to_end_channel(direct, h_t, h_r, assemble_gamma(res.config));
            worst_gamma = std::max(worst_gamma, (full - res.effective.rows).cwiseAbs().maxCoeff());
        }
        return {mismatches == 0 && worst_gamma < 1e-10,
                fmt("%.0f of %.0f selections differ from brute force, max |Gamma reconstruction error| %.2e",
                    mismatches, selections, worst_gamma)};
    }

    Verdict precoder_optimality()
    {
        Rng rng(7);
        const double gamma = 10.0, noise = 1e-13;
        double worst_mrt = 0.0, worst_tight = 0.0, worst_gap = 0.0;
        int scaling_failures = 0, instances = 0;
        for (int inst = 0; inst < 100; ++inst)
        {
            const Index n_t = 4 + inst % 5;
            const CMat single = 1e-5 * random_complex(rng, 1, n_t);
            const auto s1 = min_power_precoder(single, gamma, noise);
            const CVec mrt = std::sqrt(gamma * noise) * single.adjoint() / single.squaredNorm();
            const cplx align = mrt.dot(s1.w.col(0)) / std::abs(mrt.dot(s1.w.col(0)));
            worst_mrt = std::max(worst_mrt, (s1.w.col(0) - align * mrt).norm() / mrt.norm());

            const Index n_ue = 2 + inst % 3;
            const CMat rows = 1e-5 * random_complex(rng, n_ue, n_t);
            const auto sol = min_power_precoder(rows, gamma, noise);
            ++instances;
            for (double s : achieved_sinr(sol.w, rows, noise))
                worst_tight = std::max(worst_tight, std::abs(s - gamma) / gamma);
            worst_gap = std::max(worst_gap, std::abs(sol.total_power - sol.dual_power) / sol.total_power);
            // shrinking the power by 0.1 % must break at least one constraint
            const auto down = achieved_sinr(std::sqrt(0.999) * sol.w, rows, noise);
            if (*std::min_element(down.begin(), down.end()) >= gamma)
                ++scaling_failures;
        }
        return {worst_mrt < 1e-9 && worst_tight < 1e-6 && worst_gap < 1e-6 && scaling_failures == 0,
                fmt("MRT error %.2e, max SINR slack %.2e, max duality gap %.2e, %.0f scaling failures", worst_mrt,
                    worst_tight, worst_gap, scaling_failures) +
                    " over " + std::to_string(instances) + " instances"};
    }

    Verdict trend_reproduction()
    {
        const auto t0 = std::chrono::steady_clock::now();
        using Key = std::tuple<ChannelModel, Index, int>;
        std::map<Key, AggregateRow> rows;
        auto cfg = default_scenario();
        cfg.sweep.trials = 200;
        cfg.sweep.q = {64, 256, 1024};
        cfg.sweep.n_ue = {2};
        for (const auto &r : run_sweep(cfg).rows)
            rows[{r.model, r.q, r.n_ue}] = r;
        auto users = cfg;
        users.sweep.models = {ChannelModel::iid_rayleigh, ChannelModel::lowrank_geometric,
                              ChannelModel::nearfield_geometric};
        users.sweep.q = {1024};
        users.sweep.n_ue = {1, 4};
        for (const auto &r : run_sweep(users).rows)
            rows[{r.model, r.q, r.n_ue}] = r;
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

        std::ostringstream table;
        bool lowest = true, monotone = true, all_feasible = true;
        const double iid64 = rows[{ChannelModel::iid_rayleigh, 64, 2}].mean_ptx_dbm;
        for (auto m : all_channel_models)
        {
            table << "\n    " << model_name(m) << ":";
            double prev = std::numeric_limits<double>::infinity();
            for (Index q : {64, 256, 1024})
            {
                const auto &r = rows[{m, q, 2}];
                table << fmt(" Q=%.0f %.2f dBm", double(q), r.mean_ptx_dbm);
                monotone = monotone && r.mean_ptx_dbm <= prev;
                prev = r.mean_ptx_dbm;
                all_feasible = all_feasible && r.feasible_frac > 0.0;
            }
            if (m != ChannelModel::iid_rayleigh)
                lowest = lowest && iid64 < rows[{m, 64, 2}].mean_ptx_dbm;
        }
        auto margin = [&](ChannelModel m)
        { return rows[{m, 1024, 4}].mean_ptx_dbm - rows[{m, 1024, 1}].mean_ptx_dbm; };
        const double m_iid = margin(ChannelModel::iid_rayleigh), m_lr = margin(ChannelModel::lowrank_geometric),
                     m_nf = margin(ChannelModel::nearfield_geometric);
        const bool users_ok = std::isfinite(m_iid) && m_lr > m_iid && m_nf > m_iid;
        table << fmt("\n    N_UE 1 -> 4 at Q=1024: iid_rayleigh +%.2f dB, lowrank_geometric +%.2f dB, "
                     "nearfield_geometric +%.2f dB",
                     m_iid, m_lr, m_nf);
        return {lowest && monotone && users_ok && all_feasible && secs < 600.0,
                std::string("i.i.d. lowest at Q=64: ") + (lowest ? "yes" : "no") +
                    "; non-increasing in Q: " + (monotone ? "yes" : "no") +
                    "; geometric user margin above i.i.d.: " + (users_ok ? "yes" : "no") +
                    "; every point feasible: " + (all_feasible ? "yes" : "no") + fmt("; %.0f s (limit 600 s)", secs) +
                    table.str()};
    }

    std::string slurp(const std::string &path)
    {
        std::ifstream f(path, std::ios::binary);
        std::ostringstream s;
        s << f.rdbuf();
        return s.str();
    }

    Verdict determinism()
    {
        const std::string cli = RISIM_CLI_PATH;
        const std::string args = " run -q --seed 2024 --trials 12 --set sweep.q=64,256 --set sweep.n_ue=1,3 --raw --out ";
        const std::string a = "determinism_a.csv", b = "determinism_b.csv";
        const int ra = std::system(("OMP_NUM_THREADS=1 " + cli + args + a).c_str());
        const int rb = std::system(("OMP_NUM_THREADS=4 " + cli + args + b).c_str());
        const std::string agg_a = slurp(a), agg_b = slurp(b);
        const std::string raw_a = slurp("determinism_a_raw.csv"), raw_b = slurp("determinism_b_raw.csv");
        const bool ok = ra == 0 && rb == 0 && !agg_a.empty() && !raw_a.empty() && agg_a == agg_b && raw_a == raw_b;
        return {ok, "aggregate " + std::to_string(agg_a.size()) + " bytes " + (agg_a == agg_b ? "identical" : "DIFFER") +
                        ", raw " + std::to_string(raw_a.size()) + " bytes " + (raw_a == raw_b ? "identical" : "DIFFER") +
                        " (1 vs 4 threads)"};
    }
}

int main()
{
    const std::pair<const char *, std::function<Verdict()>> criteria[] = {
        {"covariance_limit", covariance_limit},   {"correlation_zeros", correlation_zeros},
        {"route_equivalence", route_equivalence}, {"kronecker_identity", kronecker_identity},
        {"nearfield_consistency", nearfield_consistency}, {"tile_search_oracle", tile_search_oracle},
        {"precoder_optimality", precoder_optimality},     {"trend_reproduction", trend_reproduction},
        {"determinism", determinism},
    };
    int failed = 0, index = 0;
    for (const auto &[name, run] : criteria)
    {
        ++index;
        Verdict v;
        try
        {
            v = run();
        }
        catch (const std::exception &e)
        {
            v = {false, std::string("exception: ") + e.what()};
        }
        failed += v.passed ? 0 : 1;
        std::printf("%s %d %-22s %s\n", v.passed ? "PASS" : "FAIL", index, name, v.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d of %d criteria passed\n", index - failed, index);
    return failed == 0 ? 0 : 1;
}
