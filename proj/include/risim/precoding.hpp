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

#ifndef RISIM_PRECODING_HPP
#define RISIM_PRECODING_HPP

#include "risim/types.hpp"

#include <vector>

namespace risim
{
    struct PrecoderOptions
    {
        int max_iters = 500;
        double tolerance = 1e-10; // relative change of the dual uplink powers
    };

    struct PrecodingSolution
    {
        CMat w;                           // N_t x N_UE, column k is the precoder of UE k
        double total_power = 0.0;         // sum_k |w_k|^2 in watts
        double dual_power = 0.0;          // total power of the dual uplink problem, watts
        std::vector<double> achieved_sinr;
        std::vector<double> dual_powers;  // per-UE dual uplink powers, watts
        int iterations = 0;
    };

    // Minimizes sum_k |w_k|^2 subject to SINR_k >= gamma_thr for all k, where rows(k, :) = h_k^H.
    // Solved through uplink-downlink duality: a monotone fixed point on the dual uplink powers
    // with MMSE receive directions, then the downlink power allocation that makes every
    // constraint active. Throws InfeasibleError when the dual iteration diverges or stalls.
    PrecodingSolution min_power_precoder(const CMat &rows, double gamma_thr, double noise_power,
                                         const PrecoderOptions &options = {});

    // |h_k^H w_k|^2 / (sum_{j != k} |h_k^H w_j|^2 + sigma_n^2)
    std::vector<double> achieved_sinr(const CMat &w, const CMat &rows, double noise_power);
}

#endif
