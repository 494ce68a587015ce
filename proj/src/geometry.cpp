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

#include "risim/geometry.hpp"

#include <algorithm>

namespace risim
{
    DirectionVector::DirectionVector(const Vec3 &v)
    {
        const double n = v.norm();
        if (!(n > 0.0) || !std::isfinite(n))
            throw std::invalid_argument("DirectionVector: zero or non-finite vector.");
        d_ = v / n;
    }

    Eigen::Matrix3d plane_rotation(ArrayPlane plane)
    {
        Eigen::Matrix3d r;
        switch (plane)
        {
        case ArrayPlane::yz:
            r.setIdentity();
            break;
        case ArrayPlane::xz: // local y -> global x, normal along -y
            r << 0, 1, 0, -1, 0, 0, 0, 0, 1;
            break;
        case ArrayPlane::xy: // local y -> global x, local z -> global y
            r << 0, 1, 0, 0, 0, 1, 1, 0, 0;
            break;
        }
        return r;
    }

    ArrayGeometry ArrayGeometry::upa(int n_y, int n_z, double d_y, double d_z, const Vec3 &origin, ArrayPlane plane)
    {
        if (n_y < 1 || n_z < 1)
            throw std::invalid_argument("ArrayGeometry: element counts must be >= 1.");
        if (d_y < 0.0 || d_z < 0.0)
            throw std::invalid_argument("ArrayGeometry: element spacing cannot be negative.");
        ArrayGeometry g;
        g.n_y_ = n_y;
        g.n_z_ = n_z;
        g.d_y_ = d_y;
        g.d_z_ = d_z;
        g.origin_ = origin;
        g.rotation_ = plane_rotation(plane);
        return g;
    }

    ArrayGeometry ArrayGeometry::upa_centered(int n_y, int n_z, double d_y, double d_z, const Vec3 &center, ArrayPlane plane)
    {
        ArrayGeometry g = upa(n_y, n_z, d_y, d_z, Vec3::Zero(), plane);
        g.origin_ = center - (g.center() - g.origin_);
        return g;
    }

    ArrayGeometry ArrayGeometry::single(const Vec3 &position)
    {
        return upa(1, 1, 0.0, 0.0, position);
    }

    ArrayGeometry ArrayGeometry::with_rotation(const Eigen::Matrix3d &rotation) const
    {
        if (!(rotation * rotation.transpose()).isIdentity(1e-9))
            throw std::invalid_argument("ArrayGeometry: rotation must be orthonormal.");
        const Vec3 c = center();
        ArrayGeometry g = *this;
        g.rotation_ = rotation;
        g.origin_ = c - (g.center() - g.origin_);
        return g;
    }

    Vec3 ArrayGeometry::local_position(Index n) const
    {
        const Index iy = n / n_z_, iz = n % n_z_;
        return rotation_ * Vec3(0.0, double(iy) * d_y_, double(iz) * d_z_);
    }

    Eigen::Matrix3Xd ArrayGeometry::element_positions() const
    {
        Eigen::Matrix3Xd p(3, size());
        for (Index n = 0; n < size(); ++n)
            p.col(n) = element_position(n);
        return p;
    }

    Vec3 ArrayGeometry::center() const
    {
        return origin_ + rotation_ * Vec3(0.0, 0.5 * double(n_y_ - 1) * d_y_, 0.5 * double(n_z_ - 1) * d_z_);
    }

    double ArrayGeometry::aperture() const
    {
        return std::hypot(double(n_y_) * d_y_, double(n_z_) * d_z_);
    }

    DirectionVector direction_from_angle(const Angle &angle)
    {
        const double ct = std::cos(angle.theta);
        return DirectionVector(Vec3(ct * std::cos(angle.phi), ct * std::sin(angle.phi), std::sin(angle.theta)));
    }

    Angle angle_from_direction(const DirectionVector &d)
    {
        return {std::asin(std::clamp(d[2], -1.0, 1.0)), std::atan2(d[1], d[0])};
    }

    CVec steering_vector(const ArrayGeometry &geom, const DirectionVector &d, double wavelength)
    {
        if (!(wavelength > 0.0))
            throw std::invalid_argument("steering_vector: wavelength must be positive.");
        const double kappa = wavenumber(wavelength);
        CVec a(geom.size());
        for (Index n = 0; n < geom.size(); ++n)
            a[n] = phasor(kappa * d.vec().dot(geom.local_position(n)));
        return a;
    }

    CVec steering_vector(const ArrayGeometry &geom, const Angle &angle, double wavelength)
    {
        return steering_vector(geom, direction_from_angle(angle), wavelength);
    }

    CVec kron_steering(const ArrayGeometry &geom, const Angle &angle, double wavelength)
    {
        if (!geom.in_yz_plane())
            throw std::invalid_argument("kron_steering: array must lie in the y-z plane.");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("kron_steering: wavelength must be positive.");

        const double kappa = wavenumber(wavelength);
        const double py = kappa * geom.d_y() * std::cos(angle.theta) * std::sin(angle.phi);
        const double pz = kappa * geom.d_z() * std::sin(angle.theta);

        CVec a_y(geom.n_y()), a_z(geom.n_z());
        for (int i = 0; i < geom.n_y(); ++i)
            a_y[i] = phasor(py * i);
        for (int i = 0; i < geom.n_z(); ++i)
            a_z[i] = phasor(pz * i);

        CVec a(geom.size());
        for (int iy = 0; iy < geom.n_y(); ++iy)
            a.segment(Index(iy) * geom.n_z(), geom.n_z()) = a_y[iy] * a_z;
        return a;
    }

    double pairwise_distance(const Vec3 &a, const Vec3 &b)
    {
        return (a - b).norm();
    }

    double fraunhofer_distance(double aperture, double wavelength)
    {
        if (!(aperture > 0.0))
            throw std::invalid_argument("fraunhofer_distance: aperture must be positive.");
        if (!(wavelength > 0.0))
            throw std::invalid_argument("fraunhofer_distance: wavelength must be positive.");
        return 2.0 * aperture * aperture / wavelength;
    }
}
