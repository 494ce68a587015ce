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

#ifndef RISIM_TYPES_HPP
#define RISIM_TYPES_HPP

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace risim
{
    using cplx = std::complex<double>;
    using CMat = Eigen::MatrixXcd;
    using CVec = Eigen::VectorXcd;
    using CRow = Eigen::RowVectorXcd;
    using RMat = Eigen::MatrixXd;
    using RVec = Eigen::VectorXd;
    using Vec3 = Eigen::Vector3d;
    using Index = Eigen::Index;

    inline constexpr double pi = std::numbers::pi;
    inline constexpr double two_pi = 2.0 * std::numbers::pi;
    inline constexpr double speed_of_light = 299792458.0; // m/s

    // Selects between the OpenMP kernel and its serial reference
    enum class Exec
    {
        serial,
        parallel
    };

    // Invalid scenario or configuration file content
    class ConfigError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    // The SINR targets cannot be met with finite transmit power
    class InfeasibleError : public std::runtime_error
    {
    public:
        using std::runtime_error::runtime_error;
    };

    inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
    inline double linear_to_db(double lin) { return 10.0 * std::log10(lin); }
    inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

    inline double wavelength_from_carrier(double carrier_hz) { return speed_of_light / carrier_hz; }
    inline double wavenumber(double wavelength) { return two_pi / wavelength; }

    // Unit-modulus phasor exp(j*phase)
    inline cplx phasor(double phase) { return {std::cos(phase), std::sin(phase)}; }
}

#endif
