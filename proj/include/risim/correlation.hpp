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

#ifndef RISIM_CORRELATION_HPP
#define RISIM_CORRELATION_HPP

#include "risim/geometry.hpp"
#include "risim/rng.hpp"

#include <cstdint>

namespace risim
{
    // Real symmetric spatial correlation matrix of an array under isotropic half-space scattering
    struct CorrelationMatrix
    {
        RMat r;
        ArrayGeometry geom;
    };

    // sin(x)/x with sinc(0) = 1
    double sinc(double x);

    // [R]_{m,n} = sinc(kappa |u_m - u_n|)
    CorrelationMatrix sinc_correlation(const ArrayGeometry &geom, double wavelength);

    // Symmetric square root R_bar with R = R_bar R_bar^T. Eigenvalues in [-1e-6, 0) are clamped
    // to zero; anything more negative throws std::domain_error.
    RMat matrix_sqrt_factor(const RMat &r);

    // Row-major vectorization: element (m,n) maps to index m * cols + n.
    // With this ordering cov(vec(H)) = sigma_c^2 (R_rx (x) R_tx).
    CVec vec_rows(const CMat &h);
    CMat unvec_rows(const CVec &v, Index rows, Index cols);

    // R_bar_rx H_iid R_bar_tx^T, the deterministic half of the factor route
    CMat apply_correlation(const CMat &h_iid, const RMat &rx_factor, const RMat &tx_factor);

    // Matrix-normal draw through the separable factors
    CMat sample_matrix_normal_factor(Rng &rng, const RMat &rx_factor, const RMat &tx_factor, double sigma_c);

    // Matrix-normal draw through the full Kronecker covariance of vec(H)
    class KroneckerGaussian
    {
    public:
        KroneckerGaussian(const RMat &r_rx, const RMat &r_tx, double sigma_c);

        CMat draw(Rng &rng) const;
        const RMat &covariance() const { return covariance_; } // R_rx (x) R_tx, without sigma_c^2
        double sigma_c() const { return sigma_c_; }

    private:
        Index n_rx_, n_tx_;
        double sigma_c_;
        RMat covariance_;
        RMat factor_;
    };

    CMat sample_matrix_normal_vec(Rng &rng, const RMat &r_rx, const RMat &r_tx, double sigma_c);

    // Angle with density cos(theta)/(2 pi) on [-pi/2, pi/2]^2
    Angle sample_isotropic_angle(Rng &rng);

    // One draw of the finite path sum (1/sqrt(L)) sum_l c_l a_rx(Psi_rx,l) a_tx^H(Psi_tx,l)
    // with c_l ~ CN(0, sigma_c^2) and isotropic angles
    CMat sample_path_sum(Rng &rng, int n_paths, const ArrayGeometry &rx, const ArrayGeometry &tx,
                         double wavelength, double sigma_c);

    struct CovarianceCheck
    {
        CMat empirical;       // E{vec(H) vec(H)^H}, row-major vec
        RMat target;          // sigma_c^2 (R_rx (x) R_tx)
        double max_abs_error; // max |empirical - target| entrywise
        long draws;
    };

    // Monte Carlo check that the finite path sum approaches the Kronecker-correlated Gaussian
    CovarianceCheck empirical_lemma1_check(int n_paths, const ArrayGeometry &rx, const ArrayGeometry &tx,
                                           double wavelength, double sigma_c, long draws, std::uint64_t seed,
                                           Exec exec = Exec::parallel);

    RMat kronecker(const RMat &a, const RMat &b);
}

#endif
