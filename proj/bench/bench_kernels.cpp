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

// Serial reference kernels against their OpenMP counterparts.

#include "risim/harness.hpp"
#include "risim/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace risim;

namespace
{
    struct CodebookInput
    {
        CMat base;
        std::vector<CMat> weighted;
        Codebook codebook;
    };

    CodebookInput codebook_input(int n_ue)
    {
        Rng rng(1);
        CodebookInput in;
        in.codebook = build_codebook(8, 8);
        in.base = sample_iid_rayleigh(rng, n_ue, 16, 1.0);
        for (int k = 0; k < n_ue; ++k)
            in.weighted.push_back(sample_iid_rayleigh(rng, in.codebook.tile_size(), 16, 1.0));
        return in;
    }

    template <Exec E>
    void bm_score_codebook(benchmark::State &state)
    {
        const auto in = codebook_input(int(state.range(0)));
        std::vector<double> scores(std::size_t(in.codebook.size()));
        for (auto _ : state)
        {
            if constexpr (E == Exec::parallel)
                kernels::score_codebook_parallel(in.base, in.weighted, in.codebook.phasors, scores);
            else
                kernels::score_codebook_serial(in.base, in.weighted, in.codebook.phasors, scores);
            benchmark::DoNotOptimize(scores.data());
        }
        state.SetItemsProcessed(state.iterations() * in.codebook.size());
    }

    template <Exec E>
    void bm_covariance(benchmark::State &state)
    {
        const double lambda = wavelength_from_carrier(5e9);
        const auto g = ArrayGeometry::upa(2, 2, lambda / 2, lambda / 2);
        const kernels::PathSumSpec spec{int(state.range(0)), g, g, lambda, 1.0};
        const long draws = 256;
        for (auto _ : state)
        {
            const CMat m = E == Exec::parallel ? kernels::path_sum_second_moment_parallel(spec, draws, 1)
                                               : kernels::path_sum_second_moment_serial(spec, draws, 1);
            benchmark::DoNotOptimize(m.data());
        }
        state.SetItemsProcessed(state.iterations() * draws);
    }

    template <Exec E>
    void bm_run_point(benchmark::State &state)
    {
        const auto setup = TrialSetup::make(default_scenario(), state.range(0), false);
        const long trials = 16;
        for (auto _ : state)
        {
            auto r = run_point(setup, ChannelModel::nearfield_geometric, 2, trials, E);
            benchmark::DoNotOptimize(r.data());
        }
        state.SetItemsProcessed(state.iterations() * trials);
    }
}

BENCHMARK(bm_score_codebook<Exec::serial>)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_score_codebook<Exec::parallel>)->Arg(2)->Arg(4)->Unit(benchmark::kMicrosecond);
BENCHMARK(bm_covariance<Exec::serial>)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_covariance<Exec::parallel>)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_run_point<Exec::serial>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);
BENCHMARK(bm_run_point<Exec::parallel>)->Arg(64)->Arg(256)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
