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

#include <Eigen/Eigenvalues>

namespace risim
{
    namespace
    {
        constexpr double psd_tolerance = 1e-6;

        CMat standard_complex_normal(Rng &rng, Index rows, Index cols)
        {
            std::normal_distribution<double> n01;
            const double s = std::sqrt(0.5);
            CMat z(rows, cols);
            for (Index j = 0; j < cols; ++j)
                for (Index i = 0; i < rows; ++i)
                {
                    const double re = n01(rng);
                    const double im = n01(rng);
                    z(i, j) = cplx(s * re, s * im);
                }
            return z;
        }

        // Two 32-bit uniforms per engine output; ample resolution for scattering angles and path gains
        class HalfUniforms
        {
        public:
            explicit HalfUniforms(Rng &rng) : rng_(rng) {}
            double operator()()
            {
                if (spare_)
                {
                    spare_ = false;
                    return double(word_ & 0xFFFFFFFFULL) * 0x1.0p-32;
                }
                word_ = rng_();
                spare_ = true;
                return double(word_ >> 32) * 0x1.0p-32;
            }

        private:
            Rng &rng_;
            std::uint64_t word_ = 0;
            bool spare_ = false;
        };

        // sin(theta) = 2u - 1 gives the cos(theta) elevation density; the azimuth is uniform on
        // [-pi/2, pi/2] through a uniform point of the half-disk x > 0, which avoids the sine call.
        // Arrays that cannot see the azimuth skip it.
        struct IsotropicDirection
        {
            double sin_theta, cos_theta, sin_phi, cos_phi;
        };

        IsotropicDirection draw_isotropic_direction(HalfUniforms &u01, bool azimuth)
        {
            IsotropicDirection d{};
            d.sin_theta = 2.0 * u01() - 1.0;
            d.cos_theta = std::sqrt(std::max(0.0, 1.0 - d.sin_theta * d.sin_theta));
            if (!azimuth)
                return d;
            double x, y, r2;
            do
            {
                x = u01();
                y = 2.0 * u01() - 1.0;
                r2 = x * x + y * y;
            } while (r2 > 1.0 || r2 == 0.0);
            const double inv_r = 1.0 / std::sqrt(r2);
            d.sin_phi = y * inv_r;
            d.cos_phi = x * inv_r;
            return d;
        }

        // CN(0, 1) by the Marsaglia polar method
        cplx draw_complex_normal(HalfUniforms &u01)
        {
            double x, y, r2;
            do
            {
                x = 2.0 * u01() - 1.0;
                y = 2.0 * u01() - 1.0;
                r2 = x * x + y * y;
            } while (r2 >= 1.0 || r2 == 0.0);
            const double f = std::sqrt(-std::log(r2) / r2);
            return {f * x, f * y};
        }

        // Arrays in the y-z plane use one phasor per axis and build the remaining entries by multiplication
        void isotropic_steering(const ArrayGeometry &geom, const Eigen::Matrix3Xd &local, double kappa,
                                const IsotropicDirection &dir, cplx *out)
        {
            if (geom.in_yz_plane())
            {
                const cplx w_y = geom.n_y() > 1 ? phasor(kappa * geom.d_y() * dir.cos_theta * dir.sin_phi) : cplx(1.0);
                const cplx w_z = geom.n_z() > 1 ? phasor(kappa * geom.d_z() * dir.sin_theta) : cplx(1.0);
                cplx row = 1.0;
                for (int iy = 0; iy < geom.n_y(); ++iy)
                {
                    cplx e = row;
                    for (int iz = 0; iz < geom.n_z(); ++iz)
                    {
                        out[geom.index(iy, iz)] = e;
                        e *= w_z;
                    }
                    row *= w_y;
                }
                return;
            }
            const Vec3 d(dir.cos_theta * dir.cos_phi, dir.cos_theta * dir.sin_phi, dir.sin_theta);
            for (Index n = 0; n < local.cols(); ++n)
                out[n] = phasor(kappa * d.dot(local.col(n)));
        }

        Eigen::Matrix3Xd local_positions(const ArrayGeometry &geom)
        {
            Eigen::Matrix3Xd p(3, geom.size());
            for (Index n = 0; n < geom.size(); ++n)
                p.col(n) = geom.local_position(n);
            return p;
        }
    }

    double sinc(double x)
    {
        return x == 0.0 ? 1.0 : std::sin(x) / x;
    }

    CorrelationMatrix sinc_correlation(const ArrayGeometry &geom, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw std::invalid_argument("sinc_correlation: wavelength must be positive.");
        const double kappa = wavenumber(wavelength);
        const Index n = geom.size();
        const auto u = geom.element_positions();

        RMat r(n, n);
        for (Index j = 0; j < n; ++j)
        {
            r(j, j) = 1.0;
            for (Index i = j + 1; i < n; ++i)
            {
                const double v = sinc(kappa * (u.col(i) - u.col(j)).norm());
                r(i, j) = v;
                r(j, i) = v;
            }
        }
        return {r, geom};
    }

    RMat matrix_sqrt_factor(const RMat &r)
    {
        if (r.rows() != r.cols())
            throw std::invalid_argument("matrix_sqrt_factor: matrix must be square.");
        Eigen::SelfAdjointEigenSolver<RMat> eig(r);
        if (eig.info() != Eigen::Success)
            throw std::runtime_error("matrix_sqrt_factor: eigen-decomposition failed.");
        RVec lambda = eig.eigenvalues();
        if (lambda.size() > 0 && lambda.minCoeff() < -psd_tolerance)
            throw std::domain_error("matrix_sqrt_factor: matrix is not positive semidefinite.");
        lambda = lambda.cwiseMax(0.0).cwiseSqrt();
        const RMat &v = eig.eigenvectors();
        return v * lambda.asDiagonal() * v.transpose();
    }

    CVec vec_rows(const CMat &h)
    {
        CVec v(h.size());
        for (Index m = 0; m < h.rows(); ++m)
            for (Index n = 0; n < h.cols(); ++n)
                v[m * h.cols() + n] = h(m, n);
        return v;
    }

    CMat unvec_rows(const CVec &v, Index rows, Index cols)
    {
        if (v.size() != rows * cols)
            throw std::invalid_argument("unvec_rows: size mismatch.");
        CMat h(rows, cols);
        for (Index m = 0; m < rows; ++m)
            for (Index n = 0; n < cols; ++n)
                h(m, n) = v[m * cols + n];
        return h;
    }

    CMat apply_correlation(const CMat &h_iid, const RMat &rx_factor, const RMat &tx_factor)
    {
        if (rx_factor.rows() != rx_factor.cols() || tx_factor.rows() != tx_factor.cols() ||
            h_iid.rows() != rx_factor.cols() || h_iid.cols() != tx_factor.cols())
            throw std::invalid_argument("apply_correlation: dimension mismatch.");
        // real factors act on the real and imaginary parts separately
        CMat left(h_iid.rows(), h_iid.cols()), out(h_iid.rows(), h_iid.cols());
        left.real() = rx_factor * h_iid.real();
        left.imag() = rx_factor * h_iid.imag();
        out.real() = left.real() * tx_factor.transpose();
        out.imag() = left.imag() * tx_factor.transpose();
        return out;
    }

    CMat sample_matrix_normal_factor(Rng &rng, const RMat &rx_factor, const RMat &tx_factor, double sigma_c)
    {
        if (rx_factor.rows() != rx_factor.cols() || tx_factor.rows() != tx_factor.cols())
            throw std::invalid_argument("sample_matrix_normal_factor: factors must be square.");
        const CMat h_iid = sigma_c * standard_complex_normal(rng, rx_factor.rows(), tx_factor.rows());
        return apply_correlation(h_iid, rx_factor, tx_factor);
    }

    RMat kronecker(const RMat &a, const RMat &b)
    {
        RMat k(a.rows() * b.rows(), a.cols() * b.cols());
        for (Index i = 0; i < a.rows(); ++i)
            for (Index j = 0; j < a.cols(); ++j)
                k.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        return k;
    }

    KroneckerGaussian::KroneckerGaussian(const RMat &r_rx, const RMat &r_tx, double sigma_c)
        : n_rx_(r_rx.rows()), n_tx_(r_tx.rows()), sigma_c_(sigma_c)
    {
        if (r_rx.rows() != r_rx.cols() || r_tx.rows() != r_tx.cols())
            throw std::invalid_argument("KroneckerGaussian: correlation matrices must be square.");
        covariance_ = kronecker(r_rx, r_tx);

        // Factor the full covariance directly rather than the separable pieces
        Eigen::SelfAdjointEigenSolver<RMat> eig(covariance_);
        RVec lambda = eig.eigenvalues();
        if (lambda.size() > 0 && lambda.minCoeff() < -psd_tolerance)
            throw std::domain_error("KroneckerGaussian: covariance is not positive semidefinite.");
        factor_ = eig.eigenvectors() * lambda.cwiseMax(0.0).cwiseSqrt().asDiagonal();
    }

    CMat KroneckerGaussian::draw(Rng &rng) const
    {
        const CMat z = standard_complex_normal(rng, factor_.cols(), 1);
        const CVec v = sigma_c_ * (factor_.cast<cplx>() * z.col(0));
        return unvec_rows(v, n_rx_, n_tx_);
    }

    CMat sample_matrix_normal_vec(Rng &rng, const RMat &r_rx, const RMat &r_tx, double sigma_c)
    {
        return KroneckerGaussian(r_rx, r_tx, sigma_c).draw(rng);
    }

    Angle sample_isotropic_angle(Rng &rng)
    {
        // inverse CDF of cos(theta)/2 is asin(2u - 1); phi is uniform on [-pi/2, pi/2]
        const double u = uniform01(rng);
        const double v = uniform01(rng);
        return {std::asin(2.0 * u - 1.0), pi * (v - 0.5)};
    }

    CMat sample_path_sum(Rng &rng, int n_paths, const ArrayGeometry &rx, const ArrayGeometry &tx,
                         double wavelength, double sigma_c)
    {
        if (n_paths < 1)
            throw std::invalid_argument("sample_path_sum: need at least one path.");
        const double kappa = wavenumber(wavelength);
        const double s = sigma_c / std::sqrt(double(n_paths));
        const auto local_rx = local_positions(rx), local_tx = local_positions(tx);
        const auto sees_azimuth = [](const ArrayGeometry &g) { return !(g.in_yz_plane() && g.n_y() == 1); };
        const bool az_rx = sees_azimuth(rx), az_tx = sees_azimuth(tx);

        // paths are gathered in chunks and summed as one matrix product per chunk
        constexpr int chunk = 256;
        CMat b_rx(rx.size(), chunk), b_tx(tx.size(), chunk);
        CMat h = CMat::Zero(rx.size(), tx.size());
        HalfUniforms u01(rng);
        for (int first = 0; first < n_paths; first += chunk)
        {
            const int count = std::min(chunk, n_paths - first);
            for (int l = 0; l < count; ++l)
            {
                isotropic_steering(rx, local_rx, kappa, draw_isotropic_direction(u01, az_rx), b_rx.col(l).data());
                isotropic_steering(tx, local_tx, kappa, draw_isotropic_direction(u01, az_tx), b_tx.col(l).data());
                b_rx.col(l) *= s * draw_complex_normal(u01); // c_l ~ CN(0, sigma_c^2 / L)
            }
            h.noalias() += b_rx.leftCols(count) * b_tx.leftCols(count).adjoint();
        }
        return h;
    }

    CovarianceCheck empirical_lemma1_check(int n_paths, const ArrayGeometry &rx, const ArrayGeometry &tx,
                                           double wavelength, double sigma_c, long draws, std::uint64_t seed, Exec exec)
    {
        if (n_paths < 1 || draws < 1)
            throw std::invalid_argument("empirical_lemma1_check: L and draws must be >= 1.");
        const kernels::PathSumSpec spec{n_paths, rx, tx, wavelength, sigma_c};
        const CMat acc = exec == Exec::parallel ? kernels::path_sum_second_moment_parallel(spec, draws, seed)
                                                : kernels::path_sum_second_moment_serial(spec, draws, seed);

        CovarianceCheck out;
        out.draws = draws;
        out.empirical = acc / double(draws);
        const RMat r_rx = sinc_correlation(rx, wavelength).r;
        const RMat r_tx = sinc_correlation(tx, wavelength).r;
        out.target = sigma_c * sigma_c * kronecker(r_rx, r_tx);
        out.max_abs_error = (out.empirical - out.target.cast<cplx>()).cwiseAbs().maxCoeff();
        return out;
    }
}
