#pragma once

#include <array>

#include "trivortex/core.hpp"
#include "trivortex/geometry.hpp"

namespace trivortex {

/// Prescribed unit-perimeter configuration (sum r_j = 1) plus orientation.
struct InitialSpec {
    std::array<double, 3> r{};
    int gamma = +1;
    VortexStrengths k;
};

/// Vortex positions realizing the spec:
///   Re z1 = Re z2, Im z1 - Im z2 = r3, Re z3 > Re z1 (so gamma = +1),
///   sum k_j z_j = 0.  gamma = -1 reflects all imaginary parts.
/// Throws InconsistentConfigurationError for non-triangles.
VortexState positions_from_config(const InitialSpec& spec);

/// Unit-perimeter point with prescribed invariant and curve deviation:
/// solves ibar(x) = ibar_target, calY(x) = caly_target by damped Newton
/// seeded from the critical-curve point with the same ibar.
/// Requires ibar_target in (i5, 1); NoSolutionError on failure.
TrilinearPoint point_at_offset(double ibar_target, double caly_target,
                               int gamma, const VortexStrengths& s);

}  // namespace trivortex
