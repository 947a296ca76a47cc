#include "trivortex/core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "trivortex/geometry.hpp"

namespace trivortex {

VortexStrengths make_strengths(double k1, double k2, double k3) {
    if (!(k1 >= k2) || !(k2 > 0.0)) {
        throw InvalidStrengthsError("strengths must satisfy k1 >= k2 > 0");
    }
    return VortexStrengths{k1, k2, k3};
}

VortexStrengths parabolic_strengths(double k1, double k2) {
    if (!(k1 >= k2) || !(k2 > 0.0)) {
        throw InvalidStrengthsError("parabolic strengths require k1 >= k2 > 0");
    }
    return VortexStrengths{k1, k2, -k1 * k2 / (k1 + k2)};
}

const char* to_string(KClass c) {
    switch (c) {
        case KClass::Elliptic: return "elliptic";
        case KClass::Parabolic: return "parabolic";
        case KClass::Hyperbolic: return "hyperbolic";
    }
    return "?";
}

KClass classify_k(const VortexStrengths& s) {
    const double K = s.K();
    const double band = 1e-12 * (s.k1 * s.k1 + s.k2 * s.k2);
    if (std::abs(K) <= band) return KClass::Parabolic;
    return K > 0.0 ? KClass::Elliptic : KClass::Hyperbolic;
}

bool is_parabolic(const VortexStrengths& s) {
    return classify_k(s) == KClass::Parabolic;
}

double signed_area(const VortexState& state) {
    return 0.5 * std::imag(std::conj(state.z2 - state.z1) * (state.z3 - state.z1));
}

Configuration configuration_of(const VortexState& state) {
    Configuration c;
    c.r1 = std::abs(state.z2 - state.z3);
    c.r2 = std::abs(state.z3 - state.z1);
    c.r3 = std::abs(state.z1 - state.z2);
    c.p = c.r1 + c.r2 + c.r3;
    const double rmin = std::min({c.r1, c.r2, c.r3});
    if (rmin < 1e-9 * c.p) {
        throw CollisionError("two vortices closer than 1e-9 of the perimeter");
    }
    const double as = signed_area(state);
    c.area = std::abs(as);
    if (c.area < 1e-14 * c.p * c.p) {
        c.gamma = 0;
    } else {
        c.gamma = as > 0.0 ? +1 : -1;
    }
    return c;
}

Invariants invariants_of(const VortexState& state, const VortexStrengths& s) {
    const Configuration c = configuration_of(state);
    Invariants inv;
    inv.a = c.r1 * c.r1 / s.k1 + c.r2 * c.r2 / s.k2 + c.r3 * c.r3 / s.k3;
    inv.b = std::pow(c.r1, 1.0 / s.k1) * std::pow(c.r2, 1.0 / s.k2) *
            std::pow(c.r3, 1.0 / s.k3);
    inv.ibar = ibar(reduce(c), s);
    const double ksum = s.k1 + s.k2 + s.k3;
    if (ksum != 0.0) {
        inv.vorticity_center =
            (s.k1 * state.z1 + s.k2 * state.z2 + s.k3 * state.z3) / ksum;
    } else {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        inv.vorticity_center = Complex(nan, nan);
    }
    inv.polar_moment = s.k1 * std::norm(state.z1) + s.k2 * std::norm(state.z2) +
                       s.k3 * std::norm(state.z3);
    return inv;
}

}  // namespace trivortex
