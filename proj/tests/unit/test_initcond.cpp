#include <doctest.h>

#include <cmath>

#include "trivortex/initcond.hpp"

using namespace trivortex;

namespace {
const VortexStrengths kS21 = parabolic_strengths(2.0, 1.0);
const std::array<double, 3> kRMinus = {0.18195, 0.44396, 0.37409};
}  // namespace

TEST_CASE("positions_from_config satisfies all five construction rules") {
    const VortexState st =
        positions_from_config(InitialSpec{kRMinus, +1, kS21});

    // (1) z1 and z2 aligned vertically, z1 above by r3
    CHECK(st.z1.real() == doctest::Approx(st.z2.real()).epsilon(1e-15));
    CHECK(st.z1.imag() - st.z2.imag() ==
          doctest::Approx(kRMinus[2]).epsilon(1e-14));
    // (2) prescribed side lengths
    CHECK(std::abs(st.z3 - st.z1) == doctest::Approx(kRMinus[1]).epsilon(1e-13));
    CHECK(std::abs(st.z2 - st.z3) == doctest::Approx(kRMinus[0]).epsilon(1e-13));
    // (3) counterclockwise orientation via Re z3 > Re z1
    CHECK(st.z3.real() > st.z1.real());
    CHECK(configuration_of(st).gamma == +1);
    // (4) vorticity center at the origin
    const Complex m = kS21.k1 * st.z1 + kS21.k2 * st.z2 + kS21.k3 * st.z3;
    CHECK(std::abs(m) < 1e-14);
    // (5) unit perimeter
    CHECK(configuration_of(st).p == doctest::Approx(1.0).epsilon(1e-13));

    // The published formula for Im z2 carries a sign slip in its last term;
    // the value below is pinned by the constraint checks above.
    CHECK(st.z2.imag() ==
          doctest::Approx(-0.32983327908104620).epsilon(1e-12));
}

TEST_CASE("positions_from_config: equilateral and reflected starts") {
    const std::array<double, 3> eq = {1.0 / 3, 1.0 / 3, 1.0 / 3};
    const VortexState st = positions_from_config(InitialSpec{eq, +1, kS21});
    CHECK(std::abs(st.z1 - st.z2) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(std::abs(st.z2 - st.z3) == doctest::Approx(1.0 / 3).epsilon(1e-13));
    CHECK(std::abs(st.z3 - st.z1) == doctest::Approx(1.0 / 3).epsilon(1e-13));

    const VortexState mirrored =
        positions_from_config(InitialSpec{kRMinus, -1, kS21});
    const Configuration c = configuration_of(mirrored);
    CHECK(c.gamma == -1);
    CHECK(c.r1 == doctest::Approx(kRMinus[0]).epsilon(1e-13));
    const Complex m =
        kS21.k1 * mirrored.z1 + kS21.k2 * mirrored.z2 + kS21.k3 * mirrored.z3;
    CHECK(std::abs(m) < 1e-14);
}

TEST_CASE("positions_from_config round trips with configuration_of") {
    for (const auto& sides :
         {std::array<double, 3>{0.18195, 0.44396, 0.37409},
          std::array<double, 3>{0.3, 0.3, 0.4},
          std::array<double, 3>{0.25, 0.45, 0.30},
          std::array<double, 3>{0.10839, 0.48643, 0.40518}}) {
        for (int gamma : {+1, -1}) {
            const VortexState st =
                positions_from_config(InitialSpec{sides, gamma, kS21});
            const Configuration c = configuration_of(st);
            CHECK(std::abs(c.r1 - sides[0]) < 1e-12);
            CHECK(std::abs(c.r2 - sides[1]) < 1e-12);
            CHECK(std::abs(c.r3 - sides[2]) < 1e-12);
            CHECK(c.gamma == gamma);
        }
    }
}

TEST_CASE("positions_from_config rejects impossible configurations") {
    CHECK_THROWS_AS(positions_from_config(
                        InitialSpec{{0.6, 0.2, 0.2}, +1, kS21}),
                    InconsistentConfigurationError);
    CHECK_THROWS_AS(positions_from_config(
                        InitialSpec{{0.5, 0.3, 0.2}, +1, kS21}),
                    InconsistentConfigurationError);
    CHECK_THROWS_AS(positions_from_config(
                        InitialSpec{{0.3, 0.3, 0.3}, +1, kS21}),
                    InconsistentConfigurationError);
}

TEST_CASE("point_at_offset reproduces the published perturbed starts") {
    const TrilinearPoint rm = point_at_offset(0.685, -0.005, +1, kS21);
    CHECK(std::abs(rm.x1 - 0.18195) < 2e-4);
    CHECK(std::abs(rm.x2 - 0.44396) < 2e-4);
    CHECK(std::abs(rm.x3 - 0.37409) < 2e-4);
    CHECK(std::abs(ibar(rm, kS21) - 0.685) < 1e-12);
    CHECK(std::abs(cal_y(rm, kS21) - (-0.005)) < 1e-12);

    const TrilinearPoint up = point_at_offset(0.3856, 0.005, +1, kS21);
    CHECK(std::abs(up.x1 - 0.10839) < 2e-4);
    CHECK(std::abs(up.x2 - 0.48643) < 2e-4);
    CHECK(std::abs(up.x3 - 0.40518) < 2e-4);
}

TEST_CASE("point_at_offset with zero offset lands on the curve") {
    const TrilinearPoint x = point_at_offset(0.685, 0.0, +1, kS21);
    CHECK(std::abs(cal_y(x, kS21)) < 1e-10);
    CHECK(std::abs(ibar(x, kS21) - 0.685) < 1e-12);

    const StripBounds sb = strip_bounds(kS21);
    for (int i = 0; i <= 20; ++i) {
        const double target =
            sb.ibar_upper + 0.01 + (0.99 - sb.ibar_upper - 0.01) * i / 20.0;
        const TrilinearPoint xi = point_at_offset(target, 0.0, +1, kS21);
        CHECK(std::abs(cal_y(xi, kS21)) < 1e-10);
    }
}

TEST_CASE("point_at_offset is locally injective in its targets") {
    const TrilinearPoint base = point_at_offset(0.7, 0.004, +1, kS21);
    const TrilinearPoint moved = point_at_offset(0.7 + 1e-3, 0.004 + 1e-3, +1, kS21);
    const double d = std::max({std::abs(base.x1 - moved.x1),
                               std::abs(base.x2 - moved.x2),
                               std::abs(base.x3 - moved.x3)});
    CHECK(d > 0.0);
    CHECK(d < 1.0);
}

TEST_CASE("point_at_offset rejects unreachable targets") {
    CHECK_THROWS_AS(point_at_offset(1.4, 0.0, +1, kS21), NoSolutionError);
    CHECK_THROWS_AS(point_at_offset(0.1, 0.0, +1, kS21), NoSolutionError);
    CHECK_THROWS_AS(point_at_offset(0.99, 0.4, +1, kS21), NoSolutionError);
}
