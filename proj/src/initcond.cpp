#include "trivortex/initcond.hpp"

#include <cmath>

#include "trivortex/geometry.hpp"

namespace trivortex {

VortexState positions_from_config(const InitialSpec& spec) {
    const double r1 = spec.r[0], r2 = spec.r[1], r3 = spec.r[2];
    const double p = r1 + r2 + r3;
    if (std::abs(p - 1.0) > 1e-12) {
        throw InconsistentConfigurationError(
            "initial sides must have unit perimeter");
    }
    const double s_half = 0.5 * p;
    if (!(r1 > 0.0 && r2 > 0.0 && r3 > 0.0) || r1 >= s_half || r2 >= s_half ||
        r3 >= s_half) {
        throw InconsistentConfigurationError(
            "initial sides must form a non-degenerate triangle");
    }
    const VortexStrengths& k = spec.k;
    const double ksum = k.k1 + k.k2 + k.k3;
    if (ksum == 0.0) {
        throw InconsistentConfigurationError(
            "total strength must be nonzero to anchor the vorticity center");
    }

    // Canonical placement: z1, z2 on a vertical segment of length r3 with z1
    // on top, z3 to the right, weighted center at the origin.
    const double im2 =
        (-k.k3 * (r1 * r1 - r2 * r2) - r3 * r3 * (2.0 * k.k1 + k.k3)) /
        (2.0 * r3 * ksum);
    const double im1 = im2 + r3;
    const double im3 = -(k.k1 * im1 + k.k2 * im2) / k.k3;
    const double rad = r2 * r2 - (im3 - im1) * (im3 - im1);
    if (rad < 0.0) {
        throw InconsistentConfigurationError(
            "no planar triangle realizes the requested sides");
    }
    const double dx = std::sqrt(rad);
    const double re3 = (k.k1 + k.k2) * dx / ksum;
    const double re1 = -k.k3 * re3 / (k.k1 + k.k2);

    VortexState st;
    st.t = 0.0;
    st.z1 = Complex(re1, im1);
    st.z2 = Complex(re1, im2);
    st.z3 = Complex(re3, im3);
    if (spec.gamma < 0) {
        st.z1 = std::conj(st.z1);
        st.z2 = std::conj(st.z2);
        st.z3 = std::conj(st.z3);
    }

    const Configuration check = configuration_of(st);
    const int want_gamma = spec.gamma < 0 ? -1 : +1;
    if (std::abs(check.r1 - r1) > 1e-12 || std::abs(check.r2 - r2) > 1e-12 ||
        std::abs(check.r3 - r3) > 1e-12 || check.gamma != want_gamma) {
        throw InconsistentConfigurationError(
            "reconstructed state does not reproduce the requested sides");
    }
    const Complex m = k.k1 * st.z1 + k.k2 * st.z2 + k.k3 * st.z3;
    if (std::abs(m) > 1e-14) {
        throw InconsistentConfigurationError(
            "vorticity center failed to land on the origin");
    }
    return st;
}

namespace {

struct Residual {
    double f_ibar = 0.0;
    double f_caly = 0.0;
    double norm() const {
        return std::sqrt(f_ibar * f_ibar + f_caly * f_caly);
    }
};

Residual eval(const TrilinearPoint& x, const VortexStrengths& s,
              double ibar_target, double caly_target) {
    return Residual{ibar(x, s) - ibar_target, cal_y(x, s) - caly_target};
}

}  // namespace

TrilinearPoint point_at_offset(double ibar_target, double caly_target,
                               int gamma, const VortexStrengths& s) {
    if (!is_parabolic(s)) {
        throw UnsupportedCaseError("point_at_offset requires parabolic strengths");
    }
    const StripBounds strip = strip_bounds(s);
    if (!(ibar_target > strip.ibar_upper) || !(ibar_target < 1.0)) {
        throw NoSolutionError("ibar target must lie inside (i5, 1)");
    }

    // Seed: the critical-curve point with the same ibar, on the branch E-Q5
    // where ibar grows monotonically from i5 to 1.
    double lo = curve_x1_min(s) + 1e-12;
    double hi = 1.0 / 3.0 - 1e-12;
    for (int it = 0; it < 200 && hi - lo > 1e-16; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (ibar(curve_point(mid, s), s) > ibar_target) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    TrilinearPoint x = curve_point(0.5 * (lo + hi), s);

    Residual f = eval(x, s, ibar_target, caly_target);
    bool converged = false;
    for (int it = 0; it < 100; ++it) {
        if (std::abs(f.f_ibar) < 1e-12 && std::abs(f.f_caly) < 1e-12) {
            converged = true;
            break;
        }
        // Jacobian in the unknowns (x1, x3) with x2 = 1 - x1 - x3.
        const double ib = ibar(x, s);
        const double j11 = ib * (s.k2 / x.x1 - s.k1 / x.x2);
        const double j12 = ib * (-s.k1 / x.x2 - (s.k1 + s.k2) / x.x3);
        const double j21 =
            2.0 * s.k2 * s.k3 * x.x1 - 2.0 * s.k3 * s.k1 * x.x2;
        const double j22 =
            -2.0 * s.k3 * s.k1 * x.x2 + 2.0 * s.k1 * s.k2 * x.x3;
        const double det = j11 * j22 - j12 * j21;
        if (det == 0.0) {
            throw NoSolutionError("point_at_offset: singular Jacobian");
        }
        const double dx1 = (-f.f_ibar * j22 + f.f_caly * j12) / det;
        const double dx3 = (-f.f_caly * j11 + f.f_ibar * j21) / det;

        double lambda = 1.0;
        TrilinearPoint x_new = x;
        Residual f_new = f;
        for (int halve = 0; halve < 60; ++halve) {
            x_new.x1 = x.x1 + lambda * dx1;
            x_new.x3 = x.x3 + lambda * dx3;
            x_new.x2 = 1.0 - x_new.x1 - x_new.x3;
            if (x_new.x1 > 0.0 && x_new.x2 > 0.0 && x_new.x3 > 0.0) {
                f_new = eval(x_new, s, ibar_target, caly_target);
                if (f_new.norm() < f.norm()) break;
            }
            lambda *= 0.5;
        }
        x = x_new;
        f = f_new;
    }
    if (!converged && !(std::abs(f.f_ibar) < 1e-12 && std::abs(f.f_caly) < 1e-12)) {
        throw NoSolutionError(
            "point_at_offset: Newton did not reach 1e-12 residuals in 100 "
            "iterations");
    }
    x.gamma = gamma < 0 ? -1 : +1;
    return x;
}

}  // namespace trivortex
