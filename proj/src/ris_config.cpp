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

#include "risim/ris_config.hpp"
#include "risim/kernels.hpp"

#include <Eigen/Eigenvalues>

namespace risim
{
    TilePartition::TilePartition(int tiles_y, int tiles_z, int q_y, int q_z)
        : tiles_y_(tiles_y), tiles_z_(tiles_z), q_y_(q_y), q_z_(q_z)
    {
        if (tiles_y < 1 || tiles_z < 1 || q_y < 1 || q_z < 1)
            throw std::invalid_argument("TilePartition: tile counts and tile shape must be >= 1.");
    }

    TilePartition TilePartition::for_element_count(Index q, int q_y, int q_z)
    {
        if (q_y < 1 || q_z < 1)
            throw ConfigError("TilePartition: tile shape must be >= 1.");
        const Index per_tile = Index(q_y) * q_z;
        if (q < per_tile || q % per_tile != 0)
            throw ConfigError("TilePartition: Q = " + std::to_string(q) + " is not a multiple of the tile size " +
                              std::to_string(per_tile) + ".");
        const Index n = q / per_tile;
        Index tz = 1;
        for (Index d = 1; d * d <= n; ++d)
            if (n % d == 0)
                tz = d;
        return TilePartition(int(n / tz), int(tz), q_y, q_z);
    }

    std::vector<Index> TilePartition::elements(Index tile) const
    {
        if (tile < 0 || tile >= n_tiles())
            throw std::out_of_range("TilePartition: tile index out of range.");
        const Index ty = tile / tiles_z_, tz = tile % tiles_z_;
        std::vector<Index> out;
        out.reserve(std::size_t(tile_size()));
        for (Index qy = 0; qy < q_y_; ++qy)
            for (Index qz = 0; qz < q_z_; ++qz)
                out.push_back((ty * q_y_ + qy) * ris_n_z() + tz * q_z_ + qz);
        return out;
    }

    std::vector<Index> TilePartition::visit_order(TileOrder order) const
    {
        std::vector<Index> out;
        out.reserve(std::size_t(n_tiles()));
        if (order == TileOrder::raster_y)
        {
            for (Index t = 0; t < n_tiles(); ++t)
                out.push_back(t);
        }
        else
        {
            for (Index tz = 0; tz < tiles_z_; ++tz)
                for (Index ty = 0; ty < tiles_y_; ++ty)
                    out.push_back(ty * tiles_z_ + tz);
        }
        return out;
    }

    Codebook build_codebook(int q_y, int q_z)
    {
        if (q_y < 1 || q_z < 1)
            throw std::invalid_argument("build_codebook: tile shape must be >= 1.");
        const Index n = Index(q_y) * q_z;
        RMat phases(n * wavefront_levels, n);
        for (int ky = 0; ky < q_y; ++ky)
            for (int kz = 0; kz < q_z; ++kz)
                for (int b = 0; b < wavefront_levels; ++b)
                {
                    const Index m = (Index(ky) * q_z + kz) * wavefront_levels + b;
                    for (int qy = 0; qy < q_y; ++qy)
                        for (int qz = 0; qz < q_z; ++qz)
                        {
                            // integer arithmetic keeps the gradient exact before scaling
                            const double cycles = double((ky * qy) % q_y) / q_y + double((kz * qz) % q_z) / q_z +
                                                  double(b) / wavefront_levels;
                            phases(m, Index(qy) * q_z + qz) = two_pi * (cycles - std::floor(cycles));
                        }
                }
        Codebook cb = codebook_from_phases(phases);
        cb.q_y = q_y;
        cb.q_z = q_z;
        return cb;
    }

    Codebook codebook_from_phases(const RMat &phases)
    {
        if (phases.rows() < 1 || phases.cols() < 1)
            throw std::invalid_argument("codebook_from_phases: empty codebook.");
        Codebook cb;
        cb.q_y = int(phases.cols());
        cb.q_z = 1;
        cb.phases = phases;
        cb.phasors = phases.unaryExpr([](double w) { return phasor(w); });
        return cb;
    }

    CRow tile_effective_channel(const CRow &h_k, const CMat &h_t_tile, const CRow &h_rk_tile, const RVec &omega)
    {
        if (h_t_tile.cols() != h_k.size() || h_t_tile.rows() != h_rk_tile.size() || omega.size() != h_rk_tile.size())
            throw std::invalid_argument("tile_effective_channel: dimension mismatch.");
        const CRow g = h_rk_tile.array() * omega.unaryExpr([](double w) { return phasor(w); }).transpose().array();
        return h_k + g * h_t_tile;
    }

    double min_singular_value(const CMat &rows)
    {
        if (rows.size() == 0)
            return 0.0;
        if (rows.rows() == 1)
            return rows.norm();
        // eigenvalues of the smaller Gram matrix are the squared singular values
        const CMat gram = rows.rows() <= rows.cols() ? CMat(rows * rows.adjoint()) : CMat(rows.adjoint() * rows);
        Eigen::SelfAdjointEigenSolver<CMat> eig(gram, Eigen::EigenvaluesOnly);
        return std::sqrt(std::max(0.0, eig.eigenvalues()[0]));
    }

    TileSearchResult configure_tiles(const CMat &direct, const CMat &h_t, const CMat &h_r,
                                     const TilePartition &partition, const Codebook &codebook, Exec exec,
                                     TileOrder order)
    {
        const Index n_ue = direct.rows(), n_t = direct.cols(), q = partition.element_count();
        if (codebook.size() == 0)
            throw std::invalid_argument("configure_tiles: empty codebook.");
        if (codebook.tile_size() != partition.tile_size())
            throw std::invalid_argument("configure_tiles: codebook does not match the tile size.");
        if (n_ue < 1)
            throw std::invalid_argument("configure_tiles: at least one UE required.");
        if (h_t.rows() != q || h_t.cols() != n_t || h_r.rows() != n_ue || h_r.cols() != q)
            throw std::invalid_argument("configure_tiles: channel dimensions mismatch.");

        TileSearchResult out{RisConfiguration(partition), EffectiveChannel{direct}, {}};
        std::vector<CMat> weighted(static_cast<std::size_t>(n_ue));
        std::vector<double> scores(std::size_t(codebook.size()));

        for (Index t : partition.visit_order(order))
        {
            const auto els = partition.elements(t);
            for (Index k = 0; k < n_ue; ++k)
            {
                CMat &w = weighted[std::size_t(k)];
                w.resize(Index(els.size()), n_t);
                for (std::size_t i = 0; i < els.size(); ++i)
                    w.row(Index(i)) = h_r(k, els[i]) * h_t.row(els[i]);
            }

            if (exec == Exec::parallel)
                kernels::score_codebook_parallel(out.effective.rows, weighted, codebook.phasors, scores);
            else
                kernels::score_codebook_serial(out.effective.rows, weighted, codebook.phasors, scores);

            const Index best = kernels::argmax_lowest(scores);
            for (Index k = 0; k < n_ue; ++k)
                out.effective.rows.row(k).noalias() += codebook.phasors.row(best) * weighted[std::size_t(k)];

            out.config.chosen[std::size_t(t)] = best;
            for (std::size_t i = 0; i < els.size(); ++i)
                out.config.phases[els[i]] = codebook.phases(best, Index(i));
            out.tile_scores.push_back(scores[std::size_t(best)]);
        }
        return out;
    }

    Eigen::DiagonalMatrix<cplx, Eigen::Dynamic> assemble_gamma(const RisConfiguration &config)
    {
        for (Index c : config.chosen)
            if (c < 0)
                throw std::logic_error("assemble_gamma: unconfigured tile.");
        CVec diag(config.phases.size());
        for (Index q = 0; q < diag.size(); ++q)
            diag[q] = phasor(config.phases[q]);
        return Eigen::DiagonalMatrix<cplx, Eigen::Dynamic>(diag);
    }

    CMat end_to_end_channel(const CMat &direct, const CMat &h_t, const CMat &h_r,
                            const Eigen::DiagonalMatrix<cplx, Eigen::Dynamic> &gamma)
    {
        if (h_r.cols() != gamma.rows() || h_t.rows() != gamma.rows() || direct.rows() != h_r.rows() ||
            direct.cols() != h_t.cols())
            throw std::invalid_argument("end_to_end_channel: dimension mismatch.");
        return direct + h_r * gamma * h_t;
    }
}
