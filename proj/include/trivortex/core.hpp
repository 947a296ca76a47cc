#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace trivortex {

using Complex = std::complex<double>;

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidStrengthsError : Error { using Error::Error; };
struct CollisionError : Error { using Error::Error; };
struct DegenerateConfigurationError : Error { using Error::Error; };
struct DivergentInvariantError : Error { using Error::Error; };
struct OffCurveDomainError : Error { using Error::Error; };
struct UnsupportedCaseError : Error { using Error::Error; };
struct InconsistentConfigurationError : Error { using Error::Error; };
struct NoSolutionError : Error { using Error::Error; };
struct CollinearStateError : Error { using Error::Error; };

/// Contraction of a self-similar family reached zero perimeter.
struct CoalescenceError : Error {
    explicit CoalescenceError(double t_star_)
        : Error("self-similar contraction coalesces at t* = " + std::to_string(t_star_)),
          t_star(t_star_) {}
    double t_star;
};

/// Vortex strengths k_j = Gamma_j / 2pi, ordered k1 >= k2 > 0.
struct VortexStrengths {
    double k1 = 0.0;
    double k2 = 0.0;
    double k3 = 0.0;

    /// K = k1 k2 + k2 k3 + k3 k1, the classification parameter.
    double K() const { return k1 * k2 + k2 * k3 + k3 * k1; }
};

/// Validates the canonical ordering k1 >= k2 > 0 (k3 unrestricted).
VortexStrengths make_strengths(double k1, double k2, double k3);

/// Strengths with k3 = -k1 k2 / (k1 + k2), so that K = 0.
VortexStrengths parabolic_strengths(double k1, double k2);

enum class KClass { Elliptic, Parabolic, Hyperbolic };

const char* to_string(KClass c);

/// Sign of K with a scale-aware tolerance band |K| <= 1e-12 (k1^2 + k2^2)
/// treated as parabolic.
KClass classify_k(const VortexStrengths& s);

bool is_parabolic(const VortexStrengths& s);

/// Positions of the three vortices at time t. Units: lengths in p(0),
/// time in p(0)^2 / k2; everything here is nondimensional.
struct VortexState {
    double t = 0.0;
    Complex z1, z2, z3;
};

/// Twice the signed triangle area is Im[conj(z2-z1) (z3-z1)]; positive for
/// counterclockwise vertex order.
double signed_area(const VortexState& state);

/// Triangle of the three vortices: side r_j faces vortex j.
struct Configuration {
    double r1 = 0.0, r2 = 0.0, r3 = 0.0;
    double p = 0.0;     // perimeter
    double area = 0.0;  // unsigned area |A|
    int gamma = 0;      // +1 ccw, -1 cw, 0 collinear sentinel
};

/// Side lengths, perimeter, area and orientation of a state.
///
/// gamma = 0 is returned when |signed area| < 1e-14 p^2; edge crossings are
/// regular events of the flow, so callers decide how to carry orientation
/// through them. Throws CollisionError when min side < 1e-9 p.
Configuration configuration_of(const VortexState& state);

/// Kirchhoff / Synge constants of the motion.
struct Invariants {
    double a = 0.0;     // sum R_j^2 / k_j
    double b = 0.0;     // prod R_j^(1/k_j)
    double ibar = 0.0;  // planar trajectory label (b^(k1 k2) when K = 0)
    Complex vorticity_center;  // sum k_j z_j / sum k_j (NaN if sum k_j = 0)
    double polar_moment = 0.0; // sum k_j |z_j|^2
};

Invariants invariants_of(const VortexState& state, const VortexStrengths& s);

}  // namespace trivortex
