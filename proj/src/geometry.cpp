#include "trivortex/geometry.hpp"

#include <cmath>
#include <limits>

namespace trivortex {

namespace {
constexpr double kSqrt3 = 1.7320508075688772;

double require_parabolic(const VortexStrengths& s, const char* who) {
    if (!is_parabolic(s)) {
        throw UnsupportedCaseError(std::string(who) +
                                   " requires parabolic strengths (K = 0)");
    }
    return s.K();
}
}  // namespace

TrilinearPoint reduce(const Configuration& c) {
    if (!(c.p > 0.0)) {
        throw DegenerateConfigurationError("perimeter must be positive");
    }
    return TrilinearPoint{c.r1 / c.p, c.r2 / c.p, c.r3 / c.p, c.gamma};
}

AlphaBeta to_alpha_beta(const TrilinearPoint& x) {
    return AlphaBeta{(x.x2 - x.x1) / kSqrt3, x.x3};
}

TrilinearPoint from_alpha_beta(const AlphaBeta& ab, int gamma) {
    const double x3 = ab.beta;
    const double x1 = 0.5 * (1.0 - ab.beta - ab.alpha * kSqrt3);
    const double x2 = 0.5 * (1.0 - ab.beta + ab.alpha * kSqrt3);
    return TrilinearPoint{x1, x2, x3, gamma};
}

double cal_y(const TrilinearPoint& x, const VortexStrengths& s) {
    return s.k2 * s.k3 * x.x1 * x.x1 + s.k3 * s.k1 * x.x2 * x.x2 +
           s.k1 * s.k2 * x.x3 * x.x3;
}

double big_y(const TrilinearPoint& x, const VortexStrengths& s) {
    return -s.k2 * x.x1 * x.x1 - s.k1 * x.x2 * x.x2 +
           (s.k1 + s.k2) * x.x3 * x.x3;
}

double ibar(const TrilinearPoint& x, const VortexStrengths& s) {
    if (!(x.x1 > 0.0) || !(x.x2 > 0.0) || !(x.x3 > 0.0)) {
        throw DivergentInvariantError("ibar requires x_j > 0 for all j");
    }
    if (is_parabolic(s)) {
        return std::pow(x.x1 / x.x3, s.k2) * std::pow(x.x2 / x.x3, s.k1);
    }
    const double K = s.K();
    const double q = x.x1 * x.x1 / s.k1 + x.x2 * x.x2 / s.k2 + x.x3 * x.x3 / s.k3;
    const double prod = std::pow(x.x1, 1.0 / s.k1) * std::pow(x.x2, 1.0 / s.k2) *
                        std::pow(x.x3, 1.0 / s.k3);
    return std::pow(q, K / (2.0 * s.k3)) * std::pow(prod, s.k1 * s.k2);
}

double curve_x1_min(const VortexStrengths& s) {
    require_parabolic(s, "curve_x1_min");
    const double q = std::sqrt(s.k1 * s.k1 + s.k2 * s.k2 + s.k1 * s.k2);
    return (s.k1 + s.k2 - q) / (2.0 * s.k1);
}

TrilinearPoint curve_point(double x1, const VortexStrengths& s) {
    require_parabolic(s, "curve_point");
    if (!(x1 > 0.0) || x1 > 0.5 + 1e-12) {
        throw OffCurveDomainError("curve_point: x1 outside (0, 1/2]");
    }
    // Y = 0 with x2 = 1 - x1 - x3 collapses to
    //   k2 x3^2 + 2 k1 u x3 - k1 u^2 - k2 x1^2 = 0,  u = 1 - x1,
    // whose roots have a negative product; take the positive one.
    const double u = 1.0 - x1;
    const double disc =
        s.k1 * s.k1 * u * u + s.k2 * (s.k1 * u * u + s.k2 * x1 * x1);
    const double x3 = (-s.k1 * u + std::sqrt(disc)) / s.k2;
    const double x2 = 1.0 - x1 - x3;
    // Admissibility slack 1e-4: endpoint abscissas rounded to the published
    // five decimals land just outside the exact span of the curve.
    const double slack = 1e-4;
    if (x3 <= 0.0 || x3 > 0.5 + slack || x2 <= 0.0 || x2 > 0.5 + slack) {
        throw OffCurveDomainError(
            "curve_point: no admissible root at x1 = " + std::to_string(x1));
    }
    return TrilinearPoint{x1, x2, x3, +1};
}

CriticalPoints critical_points(const VortexStrengths& s) {
    require_parabolic(s, "critical_points");
    CriticalPoints cp;
    cp.e = TrilinearPoint{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0, +1};

    const double ksum = s.k1 + s.k2;
    const double q = std::sqrt(s.k1 * s.k1 + s.k1 * s.k2 + s.k2 * s.k2);
    const double nu1 = s.k1 / ksum;         // in [1/2, 1): Q6 on Q1Q2
    const double nu2 = (s.k2 - q) / ksum;   // < 0:       Q4 on Q2Q3
    const double nu3 = (s.k2 + q) / ksum;   // > 1:       Q5 on Q3Q1
    cp.nu_roots = {nu1, nu2, nu3};

    // Collinear configurations s1 = 0, s2 = R3, s3 = nu R3, normalized to
    // unit perimeter for each root's ordering of |nu|, |1 - nu|.
    cp.q6 = TrilinearPoint{0.5 * (1.0 - nu1), 0.5 * nu1, 0.5, +1};
    cp.q4 = TrilinearPoint{0.5, -nu2 / (2.0 - 2.0 * nu2), 1.0 / (2.0 - 2.0 * nu2), +1};
    cp.q5 = TrilinearPoint{(nu3 - 1.0) / (2.0 * nu3), 0.5, 1.0 / (2.0 * nu3), +1};
    cp.beta4 = cp.q4.x3;
    cp.beta5 = cp.q5.x3;
    cp.i4 = ibar(cp.q4, s);
    cp.i5 = ibar(cp.q5, s);
    cp.i6 = ibar(cp.q6, s);

    // S4: ibar = i4 on the contracting branch E-Q5, where ibar grows
    // monotonically from i5 at Q5 to 1 at E; bisect in x1.
    double lo = curve_x1_min(s) + 1e-13;
    double hi = 1.0 / 3.0 - 1e-13;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ibar(curve_point(mid, s), s) > cp.i4) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    cp.s4 = curve_point(0.5 * (lo + hi), s);
    return cp;
}

double i4_i5_ratio(double k1) {
    if (!(k1 >= 1.0)) {
        throw InvalidStrengthsError("i4_i5_ratio requires k1 >= 1 (k2 = 1)");
    }
    const CriticalPoints cp = critical_points(parabolic_strengths(k1, 1.0));
    return cp.i4 / cp.i5;
}

namespace {
double slope_from(double num, double den) {
    if (den == 0.0) {
        if (num == 0.0) return std::numeric_limits<double>::quiet_NaN();
        return std::copysign(std::numeric_limits<double>::infinity(), num);
    }
    return num / den;
}
}  // namespace

double slope_curve(const TrilinearPoint& x, const VortexStrengths& s) {
    const double num = (s.k1 * x.x2 - s.k2 * x.x1) * kSqrt3;
    const double den =
        2.0 * (s.k1 + s.k2) * x.x3 + s.k2 * x.x1 + s.k1 * x.x2;
    return slope_from(num, den);
}

double slope_trajectory(const TrilinearPoint& x, const VortexStrengths& s) {
    const double num = kSqrt3 * x.x3 * (s.k1 * x.x1 - s.k2 * x.x2);
    const double den = 2.0 * (s.k1 + s.k2) * x.x1 * x.x2 +
                       (s.k1 * x.x1 + s.k2 * x.x2) * x.x3;
    return slope_from(num, den);
}

StripBounds strip_bounds(const VortexStrengths& s) {
    const CriticalPoints cp = critical_points(s);
    return StripBounds{1.0, cp.i5, cp.i4};
}

double hyperbola_residual(const AlphaBeta& ab, const VortexStrengths& s) {
    const double mu = (s.k1 - s.k2) / (s.k1 + s.k2);
    const double a = ab.alpha, b = ab.beta;
    return 3.0 * a * a - 2.0 * kSqrt3 * mu * a * b - 3.0 * b * b +
           2.0 * kSqrt3 * mu * a - 2.0 * b + 1.0;
}

}  // namespace trivortex
