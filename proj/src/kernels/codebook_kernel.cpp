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

#include "risim/kernels.hpp"
#include "risim/ris_config.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace risim::kernels
{
    namespace
    {
        void check_inputs(const CMat &base_rows, std::span<const CMat> weighted, const CMat &phasors,
                          std::span<double> scores)
        {
            if (Index(weighted.size()) != base_rows.rows())
                throw std::invalid_argument("score_codebook: one weighted tile channel per UE required.");
            for (const auto &w : weighted)
                if (w.rows() != phasors.cols() || w.cols() != base_rows.cols())
                    throw std::invalid_argument("score_codebook: tile channel dimensions mismatch.");
            if (Index(scores.size()) != phasors.rows())
                throw std::invalid_argument("score_codebook: score buffer size mismatch.");
        }

        // One candidate; shared by both loops so they agree bit for bit
        double score_one(const CMat &base_rows, std::span<const CMat> weighted, const CMat &phasors, Index m,
                         CMat &work)
        {
            work = base_rows;
            for (Index k = 0; k < work.rows(); ++k)
                work.row(k).noalias() += phasors.row(m) * weighted[std::size_t(k)];
            return min_singular_value(work);
        }
    }

    void score_codebook_serial(const CMat &base_rows, std::span<const CMat> weighted, const CMat &phasors,
                               std::span<double> scores)
    {
        check_inputs(base_rows, weighted, phasors, scores);
        CMat work;
        for (Index m = 0; m < phasors.rows(); ++m)
            scores[std::size_t(m)] = score_one(base_rows, weighted, phasors, m, work);
    }

    void score_codebook_parallel(const CMat &base_rows, std::span<const CMat> weighted, const CMat &phasors,
                                 std::span<double> scores)
    {
        check_inputs(base_rows, weighted, phasors, scores);
        const Index n = phasors.rows();
#pragma omp parallel
        {
            CMat work;
#pragma omp for schedule(static)
            for (Index m = 0; m < n; ++m)
                scores[std::size_t(m)] = score_one(base_rows, weighted, phasors, m, work);
        }
    }

    Index argmax_lowest(std::span<const double> scores)
    {
        if (scores.empty())
            throw std::invalid_argument("argmax_lowest: empty score list.");
        double top = scores[0];
        for (double s : scores)
            top = std::max(top, s);
        // scores that are mathematically equal may differ in the last bits
        const double floor = top - tie_tolerance * std::abs(top);
        for (Index m = 0; m < Index(scores.size()); ++m)
            if (scores[std::size_t(m)] >= floor)
                return m;
        return 0;
    }

    int max_threads()
    {
#ifdef _OPENMP
        return omp_get_max_threads();
#else
        return 1;
#endif
    }
}
