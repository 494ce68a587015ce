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

#include "risim/correlation.hpp"
#include "risim/kernels.hpp"

#include <vector>

namespace risim::kernels
{
    namespace
    {
        CMat accumulate_block(const PathSumSpec &spec, long first, long last, std::uint64_t block_seed)
        {
            Rng rng(block_seed);
            const Index n = spec.rx.size() * spec.tx.size();
            CMat acc = CMat::Zero(n, n);
            for (long d = first; d < last; ++d)
            {
                const CVec v = vec_rows(sample_path_sum(rng, spec.n_paths, spec.rx, spec.tx, spec.wavelength, spec.sigma_c));
                acc.noalias() += v * v.adjoint();
            }
            return acc;
        }

        long block_count(long draws) { return (draws + covariance_block - 1) / covariance_block; }
    }

    CMat path_sum_second_moment_serial(const PathSumSpec &spec, long draws, std::uint64_t seed)
    {
        const Index n = spec.rx.size() * spec.tx.size();
        CMat total = CMat::Zero(n, n);
        for (long b = 0; b < block_count(draws); ++b)
        {
            const long first = b * covariance_block;
            total += accumulate_block(spec, first, std::min(draws, first + covariance_block),
                                      derive_seed(seed, {std::uint64_t(b)}));
        }
        return total;
    }

    CMat path_sum_second_moment_parallel(const PathSumSpec &spec, long draws, std::uint64_t seed)
    {
        const long n_blocks = block_count(draws);
        std::vector<CMat> partial(static_cast<std::size_t>(n_blocks));

#pragma omp parallel for schedule(dynamic)
        for (long b = 0; b < n_blocks; ++b)
        {
            const long first = b * covariance_block;
            partial[std::size_t(b)] = accumulate_block(spec, first, std::min(draws, first + covariance_block),
                                                       derive_seed(seed, {std::uint64_t(b)}));
        }

        // merge in block order so the sum matches the serial reference exactly
        const Index n = spec.rx.size() * spec.tx.size();
        CMat total = CMat::Zero(n, n);
        for (const auto &p : partial)
            total += p;
        return total;
    }
}
