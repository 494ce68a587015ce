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

#ifndef RISIM_RIS_CONFIG_HPP
#define RISIM_RIS_CONFIG_HPP

#include "risim/types.hpp"

#include <vector>

namespace risim
{
    // Order in which tiles are configured
    enum class TileOrder
    {
        raster_y, // t = t_y * T_z + t_z
        raster_z  // t = t_z * T_y + t_y
    };

    // Rectangular tiling of a (tiles_y * q_y) x (tiles_z * q_z) RIS. RIS elements use the
    // y-major index n = n_y * N_z + n_z, tile-local elements q = q_y * Q_z + q_z.
    class TilePartition
    {
    public:
        TilePartition(int tiles_y, int tiles_z, int q_y, int q_z);

        // Tile grid for Q elements with fixed tile shape, as square as Q allows (tiles_y >= tiles_z)
        static TilePartition for_element_count(Index q, int q_y, int q_z);

        int tiles_y() const { return tiles_y_; }
        int tiles_z() const { return tiles_z_; }
        int q_y() const { return q_y_; }
        int q_z() const { return q_z_; }
        Index n_tiles() const { return Index(tiles_y_) * tiles_z_; }
        Index tile_size() const { return Index(q_y_) * q_z_; }
        Index ris_n_y() const { return Index(tiles_y_) * q_y_; }
        Index ris_n_z() const { return Index(tiles_z_) * q_z_; }
        Index element_count() const { return n_tiles() * tile_size(); }

        // RIS element indices of tile t (tile-local order), t = t_y * tiles_z + t_z
        std::vector<Index> elements(Index tile) const;

        // Tile indices in visit order
        std::vector<Index> visit_order(TileOrder order) const;

    private:
        int tiles_y_, tiles_z_, q_y_, q_z_;
    };

    // Product of the 2D-DFT reflection gradients and 8 global wavefront offsets.
    // Entry m = g * 8 + b with gradient g = k_y * Q_z + k_z and offset b:
    //   omega_q = 2 pi (k_y q_y / Q_y + k_z q_z / Q_z) + 2 pi b / 8
    struct Codebook
    {
        int q_y = 1, q_z = 1;
        RMat phases;  // |M| x tile_size, in [0, 2 pi)
        CMat phasors; // exp(j phases)

        Index size() const { return phases.rows(); }
        Index tile_size() const { return phases.cols(); }
    };

    inline constexpr int wavefront_levels = 8;

    Codebook build_codebook(int q_y, int q_z);

    // Codebook from explicit phase rows
    Codebook codebook_from_phases(const RMat &phases);

    // Effective downlink channels, row k = h_k^H (1 x N_t)
    struct EffectiveChannel
    {
        CMat rows; // N_UE x N_t

        Index n_ue() const { return rows.rows(); }
        Index n_t() const { return rows.cols(); }
        CMat stacked() const { return rows.adjoint(); } // [h_1, ..., h_NUE], N_t x N_UE
    };

    // h_k^H + h_rk^H diag(exp(j omega)) H_t restricted to one tile
    CRow tile_effective_channel(const CRow &h_k, const CMat &h_t_tile, const CRow &h_rk_tile, const RVec &omega);

    // Smallest singular value of the N_UE x N_t matrix of channel rows
    double min_singular_value(const CMat &rows);

    struct RisConfiguration
    {
        TilePartition partition;
        std::vector<Index> chosen; // codebook index per tile, -1 if unconfigured
        RVec phases;               // per RIS element, radians

        explicit RisConfiguration(const TilePartition &p)
            : partition(p), chosen(std::size_t(p.n_tiles()), -1), phases(RVec::Zero(p.element_count())) {}
    };

    struct TileSearchResult
    {
        RisConfiguration config;
        EffectiveChannel effective;
        std::vector<double> tile_scores; // min singular value after each tile, in visit order
    };

    // Greedy tile-by-tile codebook search maximizing the minimum singular value of the
    // effective channel. direct: N_UE x N_t, h_t: Q x N_t (BS-RIS), h_r: N_UE x Q (RIS-UE).
    // Ties go to the lowest codebook index.
    TileSearchResult configure_tiles(const CMat &direct, const CMat &h_t, const CMat &h_r,
                                     const TilePartition &partition, const Codebook &codebook,
                                     Exec exec = Exec::parallel, TileOrder order = TileOrder::raster_y);

    // Diagonal reflection matrix; throws if any tile is unconfigured
    Eigen::DiagonalMatrix<cplx, Eigen::Dynamic> assemble_gamma(const RisConfiguration &config);

    // direct + h_r Gamma h_t
    CMat end_to_end_channel(const CMat &direct, const CMat &h_t, const CMat &h_r,
                            const Eigen::DiagonalMatrix<cplx, Eigen::Dynamic> &gamma);
}

#endif
