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

#ifndef RISIM_HARNESS_HPP
#define RISIM_HARNESS_HPP

#include "risim/scenario.hpp"

#include <functional>
#include <iosfwd>
#include <optional>
#include <span>

namespace risim
{
    struct TrialPoint
    {
        ChannelModel model = ChannelModel::iid_rayleigh;
        Index q = 64;
        int n_ue = 2;
    };

    struct TrialResult
    {
        ChannelModel model = ChannelModel::iid_rayleigh;
        Index q = 0;
        int n_ue = 0;
        long trial = 0;
        std::uint64_t seed = 0; // per-trial seed shared by every model
        bool feasible = false;
        double power_w = 0.0;   // total transmit power, NaN when infeasible
        int precoder_iterations = 0;
        bool inside_fraunhofer = false; // a far-field LOS model was used inside the Fraunhofer distance
        double wall_time = 0.0;         // seconds; informational, never written to CSV
    };

    // Per-Q quantities shared by all trials and models: geometry, tiling, codebook and the
    // square-root correlation factors of the BS and RIS arrays
    struct TrialSetup
    {
        ScenarioConfig config;
        TilePartition partition;
        ArrayGeometry bs, ris;
        Codebook codebook;
        double wavelength = 0.0;
        double noise_power = 0.0;
        RMat bs_factor;  // empty unless correlation factors were requested
        RMat ris_factor;

        static TrialSetup make(const ScenarioConfig &config, Index q, bool with_correlation = true);
    };

    // Channels of one trial. direct: N_UE x N_t, h_t: Q x N_t, h_r: N_UE x Q.
    struct TrialChannels
    {
        CMat direct, h_t, h_r;
        std::vector<Vec3> ue_positions;
        bool inside_fraunhofer = false;
    };

    // Seed of trial `trial`; independent of model, Q and N_UE so that those axes are paired
    std::uint64_t trial_seed(std::uint64_t master_seed, long trial);

    // UE k is placed from its own stream, so the first UEs coincide across N_UE values
    std::vector<Vec3> place_ues(const ScenarioConfig &config, int n_ue, std::uint64_t seed);

    TrialChannels draw_channels(const TrialSetup &setup, ChannelModel model, int n_ue, std::uint64_t seed);

    // One Monte Carlo trial: draw channels, configure the RIS tiles, solve the precoder.
    // Infeasible precoding is reported through the feasible flag.
    TrialResult run_trial(const TrialSetup &setup, const TrialPoint &point, long trial, Exec tile_exec = Exec::serial);
    TrialResult run_trial(const ScenarioConfig &config, const TrialPoint &point, long trial);

    // All trials of one point. Exec::parallel distributes trials over OpenMP threads; the output is
    // identical for every thread count.
    std::vector<TrialResult> run_point(const TrialSetup &setup, ChannelModel model, int n_ue, long trials, Exec exec);

    struct AggregateRow
    {
        ChannelModel model = ChannelModel::iid_rayleigh;
        Index q = 0;
        int n_ue = 0;
        long trials = 0;
        double feasible_frac = 0.0;
        double mean_ptx_dbm = 0.0; // 10 log10 of the mean feasible power in mW
        double std_ptx_db = 0.0;   // sample standard deviation of the feasible per-trial dBm values
        std::uint64_t seed = 0;
    };

    // Infeasible trials count towards `trials` but not towards the mean or the spread
    AggregateRow aggregate(std::span<const TrialResult> results, std::uint64_t master_seed);

    struct SweepResult
    {
        std::vector<AggregateRow> rows;
        std::vector<TrialResult> raw;
    };

    using ProgressFn = std::function<void(const AggregateRow &)>;

    // Cartesian sweep over Q x N_UE x model with paired seeds
    SweepResult run_sweep(const ScenarioConfig &config, const ProgressFn &progress = {});

    inline constexpr const char *aggregate_csv_header = "model,Q,n_ue,trials,feasible_frac,mean_ptx_dbm,std_ptx_db,seed";
    inline constexpr const char *raw_csv_header = "model,Q,n_ue,trial,seed,feasible,ptx_w,ptx_dbm,precoder_iters,inside_fraunhofer";

    void write_aggregate_csv(std::ostream &out, std::span<const AggregateRow> rows);
    void write_raw_csv(std::ostream &out, std::span<const TrialResult> results);
}

#endif
