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

#include "risim/channel_models.hpp"

#include <algorithm>

namespace risim
{
    namespace
    {
        constexpr double coincidence_tol = 1e-9; // m
        constexpr double k_factor_los_only = 1e12;

        struct ModelName
        {
            ChannelModel model;
            std::string_view name;
        };

        constexpr std::array<ModelName, 5> model_names = {{
            {ChannelModel::iid_rayleigh, "iid_rayleigh"},
            {ChannelModel::iid_rician, "iid_rician"},
            {ChannelModel::correlated_rayleigh, "correlated_rayleigh"},
            {ChannelModel::lowrank_geometric, "lowrank_geometric"},
            {ChannelModel::nearfield_geometric, "nearfield_geometric"},
        }};

        bool near_any_element(const ArrayGeometry &geom, const Vec3 &p)
        {
            for (Index n = 0; n < geom.size(); ++n)
                if ((geom.element_position(n) - p).norm() < coincidence_tol)
                    return true;
            return false;
        }

        Index total_subpaths(std::span<const ScatteringCluster> clusters)
        {
            Index n = 0;
            for (const auto &c : clusters)
                n += Index(c.subpaths.size());
            return n;
        }

        // Length of the path tx center -> via -> rx center, corrected so that the plane-wave phases
        // of the steering vectors (which refer to the array origins) reproduce it to first order
        double reference_path_length(const LinkGeometry &link, const Vec3 &via, const Vec3 &d_tx, const Vec3 &d_rx)
        {
            const Vec3 c_tx = link.tx.center(), c_rx = link.rx.center();
            return (via - c_tx).norm() + (c_rx - via).norm() +
                   d_tx.dot(c_tx - link.tx.origin()) - d_rx.dot(c_rx - link.rx.origin());
        }
    }

    std::string_view model_name(ChannelModel model)
    {
        for (const auto &m : model_names)
            if (m.model == model)
                return m.name;
        return "unknown";
    }

    std::optional<ChannelModel> parse_model(std::string_view name)
    {
        for (const auto &m : model_names)
            if (m.name == name)
                return m.model;
        return std::nullopt;
    }

    bool is_geometric(ChannelModel model)
    {
        return model == ChannelModel::lowrank_geometric || model == ChannelModel::nearfield_geometric;
    }

    std::string_view link_name(LinkRole link)
    {
        switch (link)
        {
        case LinkRole::direct:
            return "bs_ue";
        case LinkRole::tx_to_ris:
            return "bs_ris";
        case LinkRole::ris_to_rx:
            return "ris_ue";
        }
        return "unknown";
    }

    void LinkParams::validate() const
    {
        if (!(beta > 0.0))
            throw ConfigError("LinkParams: beta must be positive.");
        if (!(d0 > 0.0))
            throw ConfigError("LinkParams: d0 must be positive.");
        if (!(eta >= 0.0))
            throw ConfigError("LinkParams: eta cannot be negative.");
        if (!(k_factor >= 0.0))
            throw ConfigError("LinkParams: K-factor cannot be negative.");
    }

    double pathloss(const LinkParams &params, double d)
    {
        if (!(d > 0.0))
            throw std::domain_error("pathloss: distance must be positive.");
        return params.beta * std::pow(params.d0 / d, params.eta) * db_to_linear(params.blockage_db) *
               db_to_linear(params.shadow_db);
    }

    Vec3 Box::sample(Rng &rng) const
    {
        std::uniform_real_distribution<double> u(0.0, 1.0);
        Vec3 p;
        for (int i = 0; i < 3; ++i)
            p[i] = lo[i] + (hi[i] - lo[i]) * u(rng);
        return p;
    }

    CMat sample_iid_rayleigh(Rng &rng, Index n_rx, Index n_tx, double h_p)
    {
        if (!(h_p >= 0.0))
            throw std::invalid_argument("sample_iid_rayleigh: h_p cannot be negative.");
        std::normal_distribution<double> n01;
        const double s = std::sqrt(0.5 * h_p);
        CMat h(n_rx, n_tx);
        for (Index j = 0; j < n_tx; ++j)
            for (Index i = 0; i < n_rx; ++i)
            {
                const double re = n01(rng);
                const double im = n01(rng);
                h(i, j) = cplx(s * re, s * im);
            }
        return h;
    }

    CMat los_matrix(const ArrayGeometry &tx_geom, const ArrayGeometry &rx_geom,
                    const Angle &tx_angle, const Angle &rx_angle, double h_p, double wavelength)
    {
        const CVec a_tx = steering_vector(tx_geom, tx_angle, wavelength);
        const CVec a_rx = steering_vector(rx_geom, rx_angle, wavelength);
        return std::sqrt(h_p) * a_rx * a_tx.adjoint();
    }

    CMat rician_combine(const CMat &los, const CMat &nlos, double k_factor)
    {
        if (!(k_factor >= 0.0))
            throw std::invalid_argument("rician_combine: K-factor cannot be negative.");
        if (los.rows() != nlos.rows() || los.cols() != nlos.cols())
            throw std::invalid_argument("rician_combine: LOS and nLOS dimensions differ.");
        if (k_factor >= k_factor_los_only)
            return los;
        return std::sqrt(k_factor / (1.0 + k_factor)) * los + std::sqrt(1.0 / (1.0 + k_factor)) * nlos;
    }

    CMat sample_rician(Rng &rng, const CMat &los, const NlosSampler &nlos_sampler, double k_factor)
    {
        if (k_factor >= k_factor_los_only)
            return los;
        return rician_combine(los, nlos_sampler(rng), k_factor);
    }

    CMat farfield_los(const LinkGeometry &link)
    {
        const Vec3 c_tx = link.tx.center(), c_rx = link.rx.center();
        const DirectionVector d(c_rx - c_tx);
        const double ref = reference_path_length(link, c_tx, d.vec(), d.vec());
        const Angle psi = angle_from_direction(d);
        return phasor(wavenumber(link.wavelength) * ref) *
               los_matrix(link.tx, link.rx, psi, psi, link.h_p, link.wavelength);
    }

    CMat nearfield_los(const LinkGeometry &link)
    {
        const double kappa = wavenumber(link.wavelength);
        const double c = std::sqrt(link.h_p);
        const auto u_tx = link.tx.element_positions();
        const auto u_rx = link.rx.element_positions();
        CMat h(link.rx.size(), link.tx.size());
        for (Index n = 0; n < h.cols(); ++n)
            for (Index m = 0; m < h.rows(); ++m)
                h(m, n) = c * phasor(kappa * (u_tx.col(n) - u_rx.col(m)).norm());
        return h;
    }

    std::vector<ScatteringCluster> draw_clusters(Rng &rng, const LinkGeometry &link, int n_clusters, int n_subpaths,
                                                 ClusterGainLaw law)
    {
        if (n_clusters < 1 || n_subpaths < 1)
            throw std::invalid_argument("draw_clusters: L and R must be >= 1.");
        if (link.cluster_volume.empty())
            throw ConfigError("draw_clusters: empty cluster volume.");

        std::normal_distribution<double> n01;
        std::uniform_real_distribution<double> u01(0.0, 1.0);
        const double half = 0.5 * cluster_cube_side;

        std::vector<ScatteringCluster> clusters(static_cast<std::size_t>(n_clusters));
        for (auto &c : clusters)
        {
            c.volume = link.cluster_volume;
            c.centroid = link.cluster_volume.sample(rng);
            c.gain = law == ClusterGainLaw::gaussian ? std::sqrt(link.h_p) * n01(rng) : std::sqrt(link.h_p);
            const Box cube{c.centroid.array() - half, c.centroid.array() + half};
            c.subpaths.resize(std::size_t(n_subpaths));
            for (auto &s : c.subpaths)
            {
                do
                    s.position = cube.sample(rng);
                while (near_any_element(link.tx, s.position) || near_any_element(link.rx, s.position));
                s.phase = two_pi * u01(rng);
            }
        }
        return clusters;
    }

    CMat lowrank_geometric_nlos(const LinkGeometry &link, std::span<const ScatteringCluster> clusters)
    {
        const Index n_paths = total_subpaths(clusters);
        if (n_paths == 0)
            throw std::invalid_argument("lowrank_geometric_nlos: no sub-paths.");
        const double kappa = wavenumber(link.wavelength);
        const Vec3 c_tx = link.tx.center(), c_rx = link.rx.center();

        CMat b_rx(link.rx.size(), n_paths), b_tx(link.tx.size(), n_paths);
        CVec coef(n_paths);
        const double norm = 1.0 / std::sqrt(double(n_paths));
        Index p = 0;
        for (const auto &c : clusters)
            for (const auto &s : c.subpaths)
            {
                const DirectionVector d_tx(s.position - c_tx); // departure
                const DirectionVector d_rx(c_rx - s.position); // arrival propagation direction
                const double ref = reference_path_length(link, s.position, d_tx.vec(), d_rx.vec());
                b_tx.col(p) = steering_vector(link.tx, d_tx, link.wavelength);
                b_rx.col(p) = steering_vector(link.rx, d_rx, link.wavelength);
                coef[p] = norm * c.gain * phasor(s.phase + kappa * ref);
                ++p;
            }
        return b_rx * coef.asDiagonal() * b_tx.adjoint();
    }

    CMat nearfield_geometric_nlos(const LinkGeometry &link, std::span<const ScatteringCluster> clusters)
    {
        const Index n_paths = total_subpaths(clusters);
        if (n_paths == 0)
            throw std::invalid_argument("nearfield_geometric_nlos: no sub-paths.");
        const double kappa = wavenumber(link.wavelength);
        const auto u_tx = link.tx.element_positions();
        const auto u_rx = link.rx.element_positions();

        // exp(j kappa (|u_tx,n - p| + |p - u_rx,m|)) factors into a rx and a tx term per sub-path
        CMat b_rx(link.rx.size(), n_paths), b_tx(link.tx.size(), n_paths);
        CVec coef(n_paths);
        const double norm = 1.0 / std::sqrt(double(n_paths));
        Index p = 0;
        for (const auto &c : clusters)
            for (const auto &s : c.subpaths)
            {
                for (Index n = 0; n < b_tx.rows(); ++n)
                    b_tx(n, p) = phasor(kappa * (u_tx.col(n) - s.position).norm());
                for (Index m = 0; m < b_rx.rows(); ++m)
                    b_rx(m, p) = phasor(kappa * (s.position - u_rx.col(m)).norm());
                coef[p] = norm * c.gain * phasor(s.phase);
                ++p;
            }
        return b_rx * coef.asDiagonal() * b_tx.transpose();
    }

    CMat sample_lowrank_geometric(Rng &rng, const LinkGeometry &link, int n_clusters, int n_subpaths, ClusterGainLaw law)
    {
        const auto clusters = draw_clusters(rng, link, n_clusters, n_subpaths, law);
        return lowrank_geometric_nlos(link, clusters);
    }

    CMat sample_nearfield_geometric(Rng &rng, const LinkGeometry &link, int n_clusters, int n_subpaths, ClusterGainLaw law)
    {
        const auto clusters = draw_clusters(rng, link, n_clusters, n_subpaths, law);
        return nearfield_geometric_nlos(link, clusters);
    }

    bool inside_fraunhofer(const LinkGeometry &link)
    {
        const double dist = (link.rx.center() - link.tx.center()).norm();
        const double aperture = std::max(link.tx.aperture(), link.rx.aperture());
        return aperture > 0.0 && dist < fraunhofer_distance(aperture, link.wavelength);
    }
}
