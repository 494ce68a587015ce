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

#ifndef RISIM_CHANNEL_MODELS_HPP
#define RISIM_CHANNEL_MODELS_HPP

#include "risim/geometry.hpp"
#include "risim/rng.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

namespace risim
{
    enum class ChannelModel
    {
        iid_rayleigh,
        iid_rician,
        correlated_rayleigh,
        lowrank_geometric,
        nearfield_geometric
    };

    inline constexpr std::array<ChannelModel, 5> all_channel_models = {
        ChannelModel::iid_rayleigh, ChannelModel::iid_rician, ChannelModel::correlated_rayleigh,
        ChannelModel::lowrank_geometric, ChannelModel::nearfield_geometric};

    std::string_view model_name(ChannelModel model);
    std::optional<ChannelModel> parse_model(std::string_view name);
    bool is_geometric(ChannelModel model);

    // Direct = BS-UE, tx_to_ris = BS-RIS, ris_to_rx = RIS-UE
    enum class LinkRole
    {
        direct,
        tx_to_ris,
        ris_to_rx
    };

    std::string_view link_name(LinkRole link);

    // Large-scale parameters of one link. beta is linear, all dB fields are gains (<= 0 for losses).
    struct LinkParams
    {
        double beta = 2.5118864315095823e-05; // -46 dB
        double d0 = 1.0;
        double eta = 2.0;
        double k_factor = 0.0;
        double blockage_db = 0.0;
        double shadow_db = 0.0;

        void validate() const;
    };

    // Composite channel power h_P = beta (d0/d)^eta * blockage * shadowing
    double pathloss(const LinkParams &params, double d);

    // Axis-aligned box in meters
    struct Box
    {
        Vec3 lo = Vec3::Zero();
        Vec3 hi = Vec3::Zero();

        bool empty() const { return !((hi.array() > lo.array()).all()); }
        bool contains(const Vec3 &p) const { return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all(); }
        Vec3 sample(Rng &rng) const;
    };

    struct SubPath
    {
        Vec3 position;
        double phase = 0.0; // excess phase in [0, 2pi)
    };

    struct ScatteringCluster
    {
        Box volume;
        Vec3 centroid;
        double gain = 0.0; // real path attenuation g, E{g} = 0, V{g} = h_P
        std::vector<SubPath> subpaths;
    };

    // Law of the per-cluster gain g: zero-mean Gaussian, or the constant sqrt(h_P)
    enum class ClusterGainLaw
    {
        gaussian,
        constant
    };

    inline constexpr double cluster_cube_side = 2.0; // m

    // Everything the small-scale samplers need about one link
    struct LinkGeometry
    {
        ArrayGeometry tx;
        ArrayGeometry rx;
        Box cluster_volume;
        double wavelength = 0.0;
        double h_p = 0.0;
    };

    struct ChannelMatrix
    {
        CMat h; // N_rx x N_tx
        ChannelModel model = ChannelModel::iid_rayleigh;
        LinkRole link = LinkRole::direct;
        std::uint64_t seed = 0;
        bool inside_fraunhofer = false; // a far-field model was evaluated in the radiating near field

        Index n_rx() const { return h.rows(); }
        Index n_tx() const { return h.cols(); }
    };

    // Entries i.i.d. CN(0, h_p)
    CMat sample_iid_rayleigh(Rng &rng, Index n_rx, Index n_tx, double h_p);

    // sqrt(h_p) a_rx(rx_angle) a_tx(tx_angle)^H
    CMat los_matrix(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom,
                    const Angle &tx_angle, const Angle &rx_angle, double h_p, double wavelength);

    using NlosSampler = std::function<CMat(Rng &)>;

    // sqrt(K/(1+K)) los + sqrt(1/(1+K)) nlos
    CMat rician_combine(const CMat &los, const CMat &nlos, double k_factor);
    CMat sample_rician(Rng &rng, const CMat &los, const NlosSampler &nlos_sampler, double k_factor);

    // Far-field LOS between the array centers, including the phase of the center-to-center path
    CMat farfield_los(const LinkGeometry &link);

    // Exact spherical-wave LOS, entry (m,n) = sqrt(h_P) exp(j kappa |u_tx,n - u_rx,m|)
    CMat nearfield_los(const LinkGeometry &link);

    // L clusters with centroids uniform in the link volume, R sub-paths uniform in a 2 m cube each.
    // Sub-paths that coincide with an array element are redrawn.
    std::vector<ScatteringCluster> draw_clusters(Rng &rng, const LinkGeometry &link, int n_clusters, int n_subpaths,
                                                 ClusterGainLaw law = ClusterGainLaw::gaussian);

    // Plane-wave sum over sub-paths, AoD/AoA taken from the array centers
    CMat lowrank_geometric_nlos(const LinkGeometry &link, std::span<const ScatteringCluster> clusters);

    // Spherical-wave sum over sub-paths using exact element-to-sub-path distances
    CMat nearfield_geometric_nlos(const LinkGeometry &link, std::span<const ScatteringCluster> clusters);

    CMat sample_lowrank_geometric(Rng &rng, const LinkGeometry &link, int n_clusters, int n_subpaths,
                                  ClusterGainLaw law = ClusterGainLaw::gaussian);
    CMat sample_nearfield_geometric(Rng &rng, const LinkGeometry &link, int n_clusters, int n_subpaths,
                                    ClusterGainLaw law = ClusterGainLaw::gaussian);

    // True when the link distance is below the Fraunhofer distance of either array
    bool inside_fraunhofer(const LinkGeometry &link);
}

#endif
