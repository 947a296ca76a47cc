#pragma once

#include <array>

#include "trivortex/core.hpp"

namespace trivortex {

/// Sides of the unit-perimeter triangle (x1 + x2 + x3 = 1), which are also
/// the trilinear coordinates of the configuration point in the plane P.
struct TrilinearPoint {
    double x1 = 0.0, x2 = 0.0, x3 = 0.0;
    int gamma = +1;
};

/// x_j = R_j / p; gamma is copied through.
TrilinearPoint reduce(const Configuration& c);

/// Cartesian coordinates in the plane P with vertex Q3 as origin and the
/// bisector Q3-E as the beta axis.
struct AlphaBeta {
    double alpha = 0.0;
    double beta = 0.0;
};

AlphaBeta to_alpha_beta(const TrilinearPoint& x);
TrilinearPoint from_alpha_beta(const AlphaBeta& ab, int gamma);

/// Deviation measure from the critical curve:
///   calY(x) = k2 k3 x1^2 + k3 k1 x2^2 + k1 k2 x3^2.
/// Positive strictly above the curve, negative below, zero on it.
double cal_y(const TrilinearPoint& x, const VortexStrengths& s);

/// Y = -calY / k3 = -k2 x1^2 - k1 x2^2 + (k1 + k2) x3^2.
double big_y(const TrilinearPoint& x, const VortexStrengths& s);

/// Trajectory invariant. Parabolic case: (x1/x3)^k2 (x2/x3)^k1; for K != 0
/// the general product form with the extra [sum x_j^2/k_j]^(K/2k3) factor.
/// Throws DivergentInvariantError when any x_j <= 0.
double ibar(const TrilinearPoint& x, const VortexStrengths& s);

/// Smallest x1 for which the critical curve stays inside the admissible
/// triangle; the curve spans x1 in [curve_x1_min, 1/2].
double curve_x1_min(const VortexStrengths& s);

/// Point of the critical curve with the given x1, solved from
/// (k1+k2) x3^2 - k1 (1-x1-x3)^2 - k2 x1^2 = 0 with the admissible root.
/// gamma of the result is +1. Throws OffCurveDomainError outside the span.
TrilinearPoint curve_point(double x1, const VortexStrengths& s);

/// Critical points of the parabolic flow: the centroid E on the curve, the
/// collinear points Q4, Q5, Q6 on the edges, and the separatrix foot S4.
struct CriticalPoints {
    TrilinearPoint e;            // centroid, ibar = 1
    TrilinearPoint q4, q5, q6;   // x1 = 1/2, x2 = 1/2, x3 = 1/2
    TrilinearPoint s4;           // on the branch E-Q5 with ibar = i4
    double beta4 = 0.0, beta5 = 0.0;  // x3 of Q4 and Q5
    double i4 = 0.0, i5 = 0.0, i6 = 0.0;
    std::array<double, 3> nu_roots{};  // roots of the collinearity cubic
};

/// Requires parabolic strengths (UnsupportedCaseError otherwise).
CriticalPoints critical_points(const VortexStrengths& s);

/// Ratio ibar(Q4)/ibar(Q5) with k2 = 1, from direct evaluation at the
/// reconstructed points. Equal to 1 only at k1 = 1; requires k1 >= 1.
double i4_i5_ratio(double k1);

/// d(beta)/d(alpha) of the critical curve at a point of it. Vertical slopes
/// are reported as +-infinity.
double slope_curve(const TrilinearPoint& x, const VortexStrengths& s);

/// d(beta)/d(alpha) of the constant-ibar trajectory through x.
double slope_trajectory(const TrilinearPoint& x, const VortexStrengths& s);

/// ibar range [i5, 1] of the trajectories meeting the critical curve; i4
/// splits the above-curve strip into the type-II and type-III substrips.
struct StripBounds {
    double ibar_lower = 1.0;  // on the strip's lower boundary trajectory
    double ibar_upper = 0.0;  // = i5, on the upper boundary through Q5
    double i4 = 0.0;
};

StripBounds strip_bounds(const VortexStrengths& s);

/// Residual of the hyperbola form of the critical curve in alpha-beta
/// coordinates; zero exactly on the curve. Proportional to big_y.
double hyperbola_residual(const AlphaBeta& ab, const VortexStrengths& s);

}  // namespace trivortex
