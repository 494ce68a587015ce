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

#include "risim/harness.hpp"
#include "risim/correlation.hpp"

#include <algorithm>
#include <chrono>
#include <exception>
#include <limits>
#include <ostream>

namespace risim
{
    namespace
    {
        // Stream tags below a trial seed
        enum : std::uint64_t
        {
            tag_ue = 1,
            tag_direct = 2,
            tag_bs_ris = 3,
            tag_ris_ue = 4,
        };

        // Below a link seed: small-scale fading and cluster geometry draw from separate streams
        enum : std::uint64_t
        {
            tag_fading = 0,
            tag_scatterers = 1,
        };

        constexpr double nan = std::numeric_limits<double>::quiet_NaN();

        bool uses_farfield_geometry(ChannelModel model)
        {
            return model == ChannelModel::iid_rician || model == ChannelModel::correlated_rayleigh ||
                   model == ChannelModel::lowrank_geometric;
        }

        // Draws one link. All models read the same streams, so the i.i.d., Rician and correlated
        // models share their Gaussian draw and the two geometric models share their clusters.
        CMat draw_link(const TrialSetup &setup, ChannelModel model, const LinkGeometry &link, double k_factor,
                       const RMat &rx_factor, const RMat &tx_factor, std::uint64_t seed)
        {
            const ScenarioConfig &cfg = setup.config;
            const Index n_rx = link.rx.size(), n_tx = link.tx.size();
            Rng fading(derive_seed(seed, {tag_fading}));
            Rng scatterers(derive_seed(seed, {tag_scatterers}));
            const double amp = std::sqrt(link.h_p);

            switch (model)
            {
            case ChannelModel::iid_rayleigh:
                return amp * sample_iid_rayleigh(fading, n_rx, n_tx, 1.0);
            case ChannelModel::iid_rician:
                return rician_combine(farfield_los(link), amp * sample_iid_rayleigh(fading, n_rx, n_tx, 1.0), k_factor);
            case ChannelModel::correlated_rayleigh:
            {
                if (rx_factor.rows() != n_rx || tx_factor.rows() != n_tx)
                    throw std::logic_error("draw_link: correlation factors were not prepared.");
                const CMat z = amp * sample_iid_rayleigh(fading, n_rx, n_tx, 1.0);
                return rician_combine(farfield_los(link), apply_correlation(z, rx_factor, tx_factor), k_factor);
            }
            case ChannelModel::lowrank_geometric:
            {
                const auto clusters = draw_clusters(scatterers, link, cfg.geometric.n_clusters,
                                                    cfg.geometric.n_subpaths, cfg.geometric.gain_law);
                return rician_combine(farfield_los(link), lowrank_geometric_nlos(link, clusters), k_factor);
            }
            case ChannelModel::nearfield_geometric:
            {
                const auto clusters = draw_clusters(scatterers, link, cfg.geometric.n_clusters,
                                                    cfg.geometric.n_subpaths, cfg.geometric.gain_law);
                return rician_combine(nearfield_los(link), nearfield_geometric_nlos(link, clusters), k_factor);
            }
            }
            throw std::invalid_argument("draw_link: unknown channel model.");
        }
    }

    TrialSetup TrialSetup::make(const ScenarioConfig &config, Index q, bool with_correlation)
    {
        config.validate();
        TrialSetup s{config, ris_partition(config, q), {}, {}, {}, risim::wavelength(config), risim::noise_power(config), {}, {}};
        s.bs = bs_geometry(config);
        s.ris = ris_geometry(config, s.partition);
        s.codebook = build_codebook(config.ris.tile_q_y, config.ris.tile_q_z);
        if (with_correlation)
        {
            s.bs_factor = matrix_sqrt_factor(sinc_correlation(s.bs, s.wavelength).r);
            s.ris_factor = matrix_sqrt_factor(sinc_correlation(s.ris, s.wavelength).r);
        }
        return s;
    }

    std::uint64_t trial_seed(std::uint64_t master_seed, long trial)
    {
        return derive_seed(master_seed, {std::uint64_t(trial)});
    }

    std::vector<Vec3> place_ues(const ScenarioConfig &config, int n_ue, std::uint64_t seed)
    {
        std::vector<Vec3> out;
        out.reserve(std::size_t(std::max(n_ue, 0)));
        const double side = config.ue.area_side;
        for (int k = 0; k < n_ue; ++k)
        {
            Rng rng(derive_seed(seed, {tag_ue, std::uint64_t(k)}));
            std::uniform_real_distribution<double> u(-0.5, 0.5);
            const double dx = side * u(rng);
            const double dy = side * u(rng);
            out.push_back(config.ue.area_center + Vec3(dx, dy, 0.0));
        }
        return out;
    }

    TrialChannels draw_channels(const TrialSetup &setup, ChannelModel model, int n_ue, std::uint64_t seed)
    {
        if (n_ue < 1)
            throw std::invalid_argument("draw_channels: at least one UE required.");
        const ScenarioConfig &cfg = setup.config;
        const RMat one = RMat::Ones(1, 1);

        auto make_link = [&](const ArrayGeometry &tx, const ArrayGeometry &rx, const LinkSettings &ls)
        {
            return LinkGeometry{tx, rx, ls.clusters, setup.wavelength,
                                pathloss(ls.params, (rx.center() - tx.center()).norm())};
        };

        TrialChannels out;
        out.ue_positions = place_ues(cfg, n_ue, seed);
        out.direct.resize(n_ue, setup.bs.size());
        out.h_r.resize(n_ue, setup.ris.size());

        const LinkGeometry bs_ris = make_link(setup.bs, setup.ris, cfg.bs_ris);
        out.h_t = draw_link(setup, model, bs_ris, cfg.bs_ris.params.k_factor, setup.ris_factor, setup.bs_factor,
                            derive_seed(seed, {tag_bs_ris}));
        bool inside = inside_fraunhofer(bs_ris);

        for (int k = 0; k < n_ue; ++k)
        {
            const ArrayGeometry ue = ArrayGeometry::single(out.ue_positions[std::size_t(k)]);
            const LinkGeometry direct = make_link(setup.bs, ue, cfg.bs_ue);
            const LinkGeometry ris_ue = make_link(setup.ris, ue, cfg.ris_ue);
            out.direct.row(k) = draw_link(setup, model, direct, cfg.bs_ue.params.k_factor, one, setup.bs_factor,
                                          derive_seed(seed, {tag_direct, std::uint64_t(k)}));
            out.h_r.row(k) = draw_link(setup, model, ris_ue, cfg.ris_ue.params.k_factor, one, setup.ris_factor,
                                       derive_seed(seed, {tag_ris_ue, std::uint64_t(k)}));
            inside = inside || inside_fraunhofer(direct) || inside_fraunhofer(ris_ue);
        }
        out.inside_fraunhofer = inside && uses_farfield_geometry(model);
        return out;
    }

    TrialResult run_trial(const TrialSetup &setup, const TrialPoint &point, long trial, Exec tile_exec)
    {
        if (point.q != setup.partition.element_count())
            throw std::invalid_argument("run_trial: Q does not match the prepared setup.");
        const auto t0 = std::chrono::steady_clock::now();
        const ScenarioConfig &cfg = setup.config;

        TrialResult r;
        r.model = point.model;
        r.q = point.q;
        r.n_ue = point.n_ue;
        r.trial = trial;
        r.seed = trial_seed(cfg.sweep.seed, trial);

        const TrialChannels ch = draw_channels(setup, point.model, point.n_ue, r.seed);
        r.inside_fraunhofer = ch.inside_fraunhofer;
        const TileSearchResult search = configure_tiles(ch.direct, ch.h_t, ch.h_r, setup.partition, setup.codebook,
                                                        tile_exec, cfg.ris.tile_order);
        try
        {
            const PrecodingSolution sol =
                min_power_precoder(search.effective.rows, cfg.system.gamma_thr, setup.noise_power, cfg.precoder);
            r.feasible = true;
            r.power_w = sol.total_power;
            r.precoder_iterations = sol.iterations;
        }
        catch (const InfeasibleError &)
        {
            r.feasible = false;
            r.power_w = nan;
        }
        r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        return r;
    }

    TrialResult run_trial(const ScenarioConfig &config, const TrialPoint &point, long trial)
    {
        const TrialSetup setup = TrialSetup::make(config, point.q, point.model == ChannelModel::correlated_rayleigh);
        return run_trial(setup, point, trial);
    }

    std::vector<TrialResult> run_point(const TrialSetup &setup, ChannelModel model, int n_ue, long trials, Exec exec)
    {
        if (trials < 1)
            throw std::invalid_argument("run_point: at least one trial required.");
        const TrialPoint point{model, setup.partition.element_count(), n_ue};
        std::vector<TrialResult> out(static_cast<std::size_t>(trials));

        if (exec == Exec::serial)
        {
            for (long t = 0; t < trials; ++t)
                out[std::size_t(t)] = run_trial(setup, point, t, Exec::serial);
            return out;
        }

        std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
        for (long t = 0; t < trials; ++t)
        {
            try
            {
                out[std::size_t(t)] = run_trial(setup, point, t, Exec::serial);
            }
            catch (...)
            {
#pragma omp critical(risim_run_point_error)
                if (!error)
                    error = std::current_exception();
            }
        }
        if (error)
            std::rethrow_exception(error);
        return out;
    }

    AggregateRow aggregate(std::span<const TrialResult> results, std::uint64_t master_seed)
    {
        if (results.empty())
            throw std::invalid_argument("aggregate: no trials.");
        AggregateRow row;
        row.model = results[0].model;
        row.q = results[0].q;
        row.n_ue = results[0].n_ue;
        row.trials = long(results.size());
        row.seed = master_seed;

        double sum_w = 0.0, sum_dbm = 0.0;
        long n = 0;
        for (const auto &r : results)
            if (r.feasible)
            {
                sum_w += r.power_w;
                sum_dbm += watts_to_dbm(r.power_w);
                ++n;
            }
        row.feasible_frac = double(n) / double(row.trials);
        row.mean_ptx_dbm = n > 0 ? watts_to_dbm(sum_w / double(n)) : nan;
        if (n > 1)
        {
            const double mean_dbm = sum_dbm / double(n);
            double ss = 0.0;
            for (const auto &r : results)
                if (r.feasible)
                {
                    const double e = watts_to_dbm(r.power_w) - mean_dbm;
                    ss += e * e;
                }
            row.std_ptx_db = std::sqrt(ss / double(n - 1));
        }
        else
            row.std_ptx_db = nan;
        return row;
    }

    SweepResult run_sweep(const ScenarioConfig &config, const ProgressFn &progress)
    {
        config.validate();
        const bool need_correlation = std::find(config.sweep.models.begin(), config.sweep.models.end(),
                                                ChannelModel::correlated_rayleigh) != config.sweep.models.end();
        SweepResult out;
        for (Index q : config.sweep.q)
        {
            const TrialSetup setup = TrialSetup::make(config, q, need_correlation);
            for (int n_ue : config.sweep.n_ue)
                for (ChannelModel model : config.sweep.models)
                {
                    auto raw = run_point(setup, model, n_ue, config.sweep.trials, config.sweep.exec);
                    out.rows.push_back(aggregate(raw, config.sweep.seed));
                    if (progress)
                        progress(out.rows.back());
                    out.raw.insert(out.raw.end(), raw.begin(), raw.end());
                }
        }
        return out;
    }

    void write_aggregate_csv(std::ostream &out, std::span<const AggregateRow> rows)
    {
        out << aggregate_csv_header << '\n';
        for (const auto &r : rows)
            out << model_name(r.model) << ',' << r.q << ',' << r.n_ue << ',' << r.trials << ','
                << format_number(r.feasible_frac) << ',' << format_number(r.mean_ptx_dbm) << ','
                << format_number(r.std_ptx_db) << ',' << r.seed << '\n';
    }

    void write_raw_csv(std::ostream &out, std::span<const TrialResult> results)
    {
        out << raw_csv_header << '\n';
        for (const auto &r : results)
            out << model_name(r.model) << ',' << r.q << ',' << r.n_ue << ',' << r.trial << ',' << r.seed << ','
                << (r.feasible ? 1 : 0) << ',' << format_number(r.power_w) << ','
                << format_number(r.feasible ? watts_to_dbm(r.power_w) : nan) << ',' << r.precoder_iterations << ','
                << (r.inside_fraunhofer ? 1 : 0) << '\n';
    }
}
