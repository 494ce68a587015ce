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

#ifndef RISIM_SCENARIO_HPP
#define RISIM_SCENARIO_HPP

#include "risim/channel_models.hpp"
#include "risim/precoding.hpp"
#include "risim/ris_config.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risim
{
    struct SystemParams
    {
        double carrier_hz = 5e9;
        double bandwidth_hz = 20e6;
        double noise_figure_db = 6.0;
        double n0_dbm_hz = -174.0;
        double gamma_thr = 10.0; // linear SINR target
    };

    struct BsParams
    {
        int n_y = 4, n_z = 4;
        double spacing_wavelengths = 0.5;
        Vec3 center{30.0, 0.0, 10.0};
    };

    // The element count Q is a sweep axis; the tile grid follows from Q and the tile shape
    struct RisParams
    {
        int tile_q_y = 8, tile_q_z = 8;
        double spacing_wavelengths = 0.5;
        Vec3 center{0.0, 50.0, 5.0};
        TileOrder tile_order = TileOrder::raster_y;
    };

    // Single-antenna UEs placed uniformly on a horizontal square
    struct UeParams
    {
        Vec3 area_center{10.0, 50.0, 1.0};
        double area_side = 8.0;
    };

    struct LinkSettings
    {
        LinkParams params;
        Box clusters;
    };

    struct GeometricParams
    {
        int n_clusters = 5;
        int n_subpaths = 20;
        ClusterGainLaw gain_law = ClusterGainLaw::gaussian;
    };

    struct SweepParams
    {
        std::vector<ChannelModel> models{all_channel_models.begin(), all_channel_models.end()};
        std::vector<Index> q{64, 256, 1024, 4096};
        std::vector<int> n_ue{2};
        long trials = 200;
        std::uint64_t seed = 1;
        Exec exec = Exec::parallel; // trials run concurrently when parallel
    };

    struct ScenarioConfig
    {
        SystemParams system;
        BsParams bs;
        RisParams ris;
        UeParams ue;
        LinkSettings bs_ue, bs_ris, ris_ue;
        GeometricParams geometric;
        PrecoderOptions precoder;
        SweepParams sweep;

        const LinkSettings &link(LinkRole role) const;
        LinkSettings &link(LinkRole role);

        // Throws ConfigError on the first invalid field
        void validate() const;
    };

    // Desk-scale default: the published scenario with 200 trials and BS-UE blockage of -40 dB
    ScenarioConfig default_scenario();

    // The published trial count and the full Q range
    ScenarioConfig paper_scenario();

    // Named preset: "default" / "desk" or "paper"
    ScenarioConfig preset_scenario(const std::string &name);

    // Reads an INI file on top of `base`. Unknown sections or keys are errors.
    ScenarioConfig load_scenario(const std::string &path, const ScenarioConfig &base = default_scenario());
    ScenarioConfig parse_scenario(const std::string &text, const ScenarioConfig &base = default_scenario());

    // Fully resolved INI text; parse_scenario(dump_scenario(c)) reproduces c
    std::string dump_scenario(const ScenarioConfig &config);

    // sigma_n^2 = W N0 NF in watts
    double noise_power(const SystemParams &system);
    double noise_power(const ScenarioConfig &config);

    double wavelength(const ScenarioConfig &config);

    ArrayGeometry bs_geometry(const ScenarioConfig &config);

    // Centered RIS for Q elements using the configured tile shape
    TilePartition ris_partition(const ScenarioConfig &config, Index q);
    ArrayGeometry ris_geometry(const ScenarioConfig &config, const TilePartition &partition);

    // Shortest round-trip decimal representation
    std::string format_number(double v);
}

#endif
