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

// Self-checks run by `risim check`: the Kronecker covariance limit of the isotropic path sum, the
// greedy tile search against a brute-force evaluation, and the precoder optimality conditions.

#ifndef RISIM_CHECKS_HPP
#define RISIM_CHECKS_HPP

#include "risim/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace risim
{
    struct CheckOutcome
    {
        std::string name;
        bool passed = false;
        std::string detail;
        double seconds = 0.0;
    };

    struct CheckOptions
    {
        std::uint64_t seed = 1;
        int n_paths = 10000;    // paths in the isotropic sum
        long draws = 10000;     // channel draws for the covariance estimate
        int instances = 20;     // random instances for the tile and precoder checks
    };

    // Max entrywise covariance error below 0.05 sigma_c^2 for a 4-element ULA and a 2x2 UPA
    std::vector<CheckOutcome> check_covariance(const CheckOptions &options);

    // Greedy choices equal the brute-force argmax, and Gamma reproduces the incremental channel
    CheckOutcome check_tile_search(const CheckOptions &options);

    // Active SINR constraints, zero duality gap, and the single-user closed form
    CheckOutcome check_precoder(const CheckOptions &options);

    std::vector<CheckOutcome> run_checks(const CheckOptions &options);
}

#endif
