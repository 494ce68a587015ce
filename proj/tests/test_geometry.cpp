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
#include "risim/rng.hpp"

#include <doctest.h>

using namespace risim;

namespace
{
    const double lambda = wavelength_from_carrier(5e9);

    // Uniform linear array factor exp(j pi n s) for half-wavelength spacing, written out directly
    CVec half_wave_ula(int n, double s)
    {
        CVec a(n);
        for (int i = 0; i < n; ++i)
            a[i] = std::polar(1.0, pi * i * s);
        return a;
    }
}

TEST_CASE("direction_from_angle on the axes")
{
    const auto broadside = direction_from_angle({0.0, 0.0});
    CHECK(broadside.vec().isApprox(Vec3(1, 0, 0), 1e-15));

    const auto zenith = direction_from_angle({pi / 2, 0.0});
    CHECK((zenith.vec() - Vec3(0, 0, 1)).norm() < 1e-15);

    const auto axis = direction_from_angle({0.0, pi / 2});
    CHECK((axis.vec() - Vec3(0, 1, 0)).norm() < 1e-15);
}

TEST_CASE("direction vectors have unit norm and invert to their angle")
{
    Rng rng(7);
    std::uniform_real_distribution<double> u(-pi / 2, pi / 2);
    for (int i = 0; i < 200; ++i)
    {
        const Angle a{u(rng), u(rng)};
        const auto d = direction_from_angle(a);
        CHECK(std::abs(d.vec().norm() - 1.0) < 1e-12);
        const Angle back = angle_from_direction(d);
        CHECK(back.theta == doctest::Approx(a.theta).epsilon(1e-12));
        CHECK(back.phi == doctest::Approx(a.phi).epsilon(1e-12));
    }
}

TEST_CASE("DirectionVector normalizes and rejects the zero vector")
{
    CHECK(DirectionVector(Vec3(0, 3, 4)).vec().isApprox(Vec3(0, 0.6, 0.8)));
    CHECK_THROWS_AS(DirectionVector(Vec3::Zero()), std::invalid_argument);
}

TEST_CASE("UPA element positions")
{
    const Vec3 origin(1.0, 2.0, 3.0);
    const auto g = ArrayGeometry::upa(3, 2, 0.1, 0.2, origin);
    REQUIRE(g.size() == 6);
    CHECK(g.element_position(0) == origin);
    for (int iy = 0; iy < 3; ++iy)
        for (int iz = 0; iz < 2; ++iz)
        {
            const Vec3 expected = origin + Vec3(0.0, 0.1 * iy, 0.2 * iz);
            CHECK((g.element_position(g.index(iy, iz)) - expected).norm() < 1e-15);
            CHECK(g.index(iy, iz) == iy * 2 + iz);
        }
    CHECK(g.element_positions().cols() == 6);
}

TEST_CASE("centered UPA is centered")
{
    const Vec3 c(0.0, 50.0, 5.0);
    const auto g = ArrayGeometry::upa_centered(32, 32, lambda / 2, lambda / 2, c);
    CHECK((g.center() - c).norm() < 1e-12);
    CHECK((g.element_positions().rowwise().mean() - c).norm() < 1e-12);
}

TEST_CASE("rotated arrays keep their center and element spacing")
{
    const auto g = ArrayGeometry::upa_centered(4, 3, 0.1, 0.2, Vec3(5, 5, 5)).with_rotation(plane_rotation(ArrayPlane::xy));
    CHECK((g.center() - Vec3(5, 5, 5)).norm() < 1e-12);
    CHECK(pairwise_distance(g.element_position(0), g.element_position(g.index(1, 0))) == doctest::Approx(0.1));
    CHECK(pairwise_distance(g.element_position(0), g.element_position(g.index(0, 1))) == doctest::Approx(0.2));
    CHECK(std::abs(g.element_position(0)[2] - g.element_position(g.size() - 1)[2]) < 1e-12); // horizontal
    CHECK_THROWS(g.with_rotation(2.0 * Eigen::Matrix3d::Identity()));
}

TEST_CASE("steering vector at broadside is all ones")
{
    const auto g = ArrayGeometry::upa(4, 3, lambda / 2, lambda / 2);
    const CVec a = steering_vector(g, Angle{0.0, 0.0}, lambda);
    CHECK((a - CVec::Ones(12)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("two-element ULA on the z-axis at zenith")
{
    const auto g = ArrayGeometry::upa(1, 2, 0.0, lambda / 2);
    const CVec a = steering_vector(g, Angle{pi / 2, 0.0}, lambda);
    CHECK(std::abs(a[0] - cplx(1, 0)) < 1e-12);
    CHECK(std::abs(a[1] - cplx(-1, 0)) < 1e-12);
}

TEST_CASE("2x2 UPA steering equals the Kronecker product of its ULA factors")
{
    const Angle psi{pi / 6, pi / 4};
    const auto g = ArrayGeometry::upa(2, 2, lambda / 2, lambda / 2);
    const CVec a_y = half_wave_ula(2, std::cos(psi.theta) * std::sin(psi.phi));
    const CVec a_z = half_wave_ula(2, std::sin(psi.theta));
    CVec expected(4);
    for (int iy = 0; iy < 2; ++iy)
        for (int iz = 0; iz < 2; ++iz)
            expected[iy * 2 + iz] = a_y[iy] * a_z[iz];
    CHECK((steering_vector(g, psi, lambda) - expected).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((kron_steering(g, psi, lambda) - expected).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("kron_steering edge cases")
{
    const auto one = ArrayGeometry::upa(1, 1, lambda / 2, lambda / 2);
    const CVec a = kron_steering(one, Angle{0.3, -0.2}, lambda);
    REQUIRE(a.size() == 1);
    CHECK(std::abs(a[0] - cplx(1, 0)) < 1e-15);

    const auto g = ArrayGeometry::upa(4, 4, lambda / 2, lambda / 2);
    CHECK((kron_steering(g, Angle{0.0, 0.0}, lambda) - CVec::Ones(16)).cwiseAbs().maxCoeff() < 1e-15);

    const auto tilted = g.with_rotation(plane_rotation(ArrayPlane::xz));
    CHECK_THROWS_AS(kron_steering(tilted, Angle{0.1, 0.1}, lambda), std::invalid_argument);
    CHECK_THROWS_AS(steering_vector(g, Angle{}, 0.0), std::invalid_argument);
}

TEST_CASE("steering vector properties over random angles")
{
    Rng rng(11);
    std::uniform_real_distribution<double> u(-pi / 2, pi / 2);
    const auto g = ArrayGeometry::upa(4, 4, 0.37 * lambda, 0.61 * lambda, Vec3(3, -2, 1));
    for (int i = 0; i < 500; ++i)
    {
        const Angle psi{u(rng), u(rng)};
        const CVec a = steering_vector(g, psi, lambda);
        CHECK((a.cwiseAbs().array() - 1.0).abs().maxCoeff() < 1e-12);
        CHECK((kron_steering(g, psi, lambda) - a).cwiseAbs().maxCoeff() < 1e-12);
        // the mirrored direction conjugates every entry
        const DirectionVector mirror(-direction_from_angle(psi).vec());
        CHECK((steering_vector(g, mirror, lambda) - a.conjugate()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("pairwise distance")
{
    CHECK(pairwise_distance(Vec3::Zero(), Vec3::Zero()) == 0.0);
    CHECK(pairwise_distance(Vec3::Zero(), Vec3(3, 4, 0)) == doctest::Approx(5.0));
    const Vec3 bs(30, 0, 10), ris(0, 50, 5);
    CHECK(pairwise_distance(bs, ris) == doctest::Approx(std::sqrt(900.0 + 2500.0 + 25.0)).epsilon(1e-15));
    CHECK(pairwise_distance(bs, ris) == doctest::Approx(58.5235).epsilon(1e-5));
    CHECK(pairwise_distance(bs, ris) == pairwise_distance(ris, bs));
}

TEST_CASE("Fraunhofer distance")
{
    CHECK(fraunhofer_distance(1.0, 0.06) == doctest::Approx(2.0 / 0.06));
    CHECK(fraunhofer_distance(0.12, 0.06) == doctest::Approx(0.48));
    CHECK_THROWS(fraunhofer_distance(0.0, 0.06));
    CHECK_THROWS(fraunhofer_distance(1.0, 0.0));

    // largest diagonal of a 32 x 32 half-wavelength RIS
    const auto ris = ArrayGeometry::upa(32, 32, lambda / 2, lambda / 2);
    const double diag = std::sqrt(2.0) * 16.0 * lambda;
    CHECK(ris.aperture() == doctest::Approx(diag).epsilon(1e-14));
    CHECK(ris.aperture() == doctest::Approx(1.357).epsilon(1e-3));
    CHECK(fraunhofer_distance(ris.aperture(), lambda) == doctest::Approx(2.0 * diag * diag / lambda));
}
