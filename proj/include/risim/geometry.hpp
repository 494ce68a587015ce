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

#ifndef RISIM_GEOMETRY_HPP
#define RISIM_GEOMETRY_HPP

#include "risim/types.hpp"

#include <Eigen/Geometry>

namespace risim
{
    // Elevation theta and azimuth phi in radians
    struct Angle
    {
        double theta = 0.0;
        double phi = 0.0;
    };

    // Unit 3-vector pointing along a propagation direction
    class DirectionVector
    {
    public:
        DirectionVector() = default;
        explicit DirectionVector(const Vec3 &v); // normalizes v, throws on zero length

        const Vec3 &vec() const { return d_; }
        double operator[](int i) const { return d_[i]; }

    private:
        Vec3 d_ = Vec3::UnitX();
    };

    // Plane that holds the array; local coordinates [0, n_y*d_y, n_z*d_z] are rotated into it
    enum class ArrayPlane
    {
        yz,
        xz,
        xy
    };

    // Uniform planar array (a ULA is the N_y = 1 or N_z = 1 special case).
    // Element n = n_y * N_z + n_z (y-major); element (0,0) sits at origin().
    class ArrayGeometry
    {
    public:
        ArrayGeometry() = default;

        static ArrayGeometry upa(int n_y, int n_z, double d_y, double d_z,
                                 const Vec3 &origin = Vec3::Zero(), ArrayPlane plane = ArrayPlane::yz);

        // Same array, positioned so that the geometric center of the elements lies at `center`
        static ArrayGeometry upa_centered(int n_y, int n_z, double d_y, double d_z,
                                          const Vec3 &center, ArrayPlane plane = ArrayPlane::yz);

        // Single antenna at `position`
        static ArrayGeometry single(const Vec3 &position);

        // General orientation; rotation must be orthonormal
        ArrayGeometry with_rotation(const Eigen::Matrix3d &rotation) const;

        Index size() const { return Index(n_y_) * n_z_; }
        int n_y() const { return n_y_; }
        int n_z() const { return n_z_; }
        double d_y() const { return d_y_; }
        double d_z() const { return d_z_; }
        const Vec3 &origin() const { return origin_; }
        const Eigen::Matrix3d &rotation() const { return rotation_; }
        bool in_yz_plane() const { return rotation_.isIdentity(0.0); }

        Index index(int iy, int iz) const { return Index(iy) * n_z_ + iz; }

        // Position relative to origin(), in the global frame
        Vec3 local_position(Index n) const;
        // Absolute position in meters
        Vec3 element_position(Index n) const { return origin_ + local_position(n); }
        // 3 x N matrix of absolute positions
        Eigen::Matrix3Xd element_positions() const;
        Vec3 center() const;

        // Largest diagonal of the physical aperture (N_y d_y by N_z d_z)
        double aperture() const;

    private:
        int n_y_ = 1, n_z_ = 1;
        double d_y_ = 0.0, d_z_ = 0.0;
        Vec3 origin_ = Vec3::Zero();
        Eigen::Matrix3d rotation_ = Eigen::Matrix3d::Identity();
    };

    Eigen::Matrix3d plane_rotation(ArrayPlane plane);

    // d(angle) = [cos(theta)cos(phi), cos(theta)sin(phi), sin(theta)]
    DirectionVector direction_from_angle(const Angle &angle);

    // Inverse of direction_from_angle; theta in [-pi/2, pi/2], phi in (-pi, pi]
    Angle angle_from_direction(const DirectionVector &d);

    // [a]_n = exp(j kappa d^T u_n) with u_n relative to the array origin
    CVec steering_vector(const ArrayGeometry &geom, const DirectionVector &d, double wavelength);
    CVec steering_vector(const ArrayGeometry &geom, const Angle &angle, double wavelength);

    // a_y(angle) (x) a_z(angle); requires a y-z plane UPA
    CVec kron_steering(const ArrayGeometry &geom, const Angle &angle, double wavelength);

    double pairwise_distance(const Vec3 &a, const Vec3 &b);

    // 2 D^2 / lambda
    double fraunhofer_distance(double aperture, double wavelength);
}

#endif
