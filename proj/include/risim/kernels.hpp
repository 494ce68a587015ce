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

// Data-parallel inner loops. Every OpenMP kernel has a serial twin that produces bit-identical
// output; the serial versions are the reference for tests and the baseline for benchmarks.

#ifndef RISIM_KERNELS_HPP
#define RISIM_KERNELS_HPP

#include "risim/geometry.hpp"

#include <cstdint>
#include <span>

namespace risim::kernels
{
    // scores[m] = min singular value of (base_rows + [phasors.row(m) * weighted[k]]_k).
    // weighted[k] = diag(h_rk^(t)) H_t^(t), tile_size x N_t.
    void score_codebook_serial(const CMat &base_rows, std::span<const CMat> weighted, const CMat &phasors,
                               std::span<double> scores);
    void score_codebook_parallel(const CMat &base_rows, std::span<const CMat> weighted, const CMat &phasors,
                                 std::span<double> scores);

    // Relative score difference below which two codebook entries count as tied
    inline constexpr double tie_tolerance = 1e-9;

    // First index whose score is within tie_tolerance of the maximum
    Index argmax_lowest(std::span<const double> scores);

    struct PathSumSpec
    {
        int n_paths;
        ArrayGeometry rx;
        ArrayGeometry tx;
        double wavelength;
        double sigma_c;
    };

    // Fixed block size of the covariance accumulation; block b draws from derive_seed(seed, {b})
    inline constexpr long covariance_block = 64;

    // Sum over draws of vec(H) vec(H)^H (row-major vec) for the finite isotropic path sum
    CMat path_sum_second_moment_serial(const PathSumSpec &spec, long draws, std::uint64_t seed);
    CMat path_sum_second_moment_parallel(const PathSumSpec &spec, long draws, std::uint64_t seed);

    int max_threads();
}

#endif
