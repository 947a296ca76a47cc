#pragma once

#include <array>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "trivortex/core.hpp"
#include "trivortex/geometry.hpp"

namespace trivortex {

struct IntegratorSettings {
    double rel_tol = 1e-10;
    double abs_tol = 1e-13;
    double max_step = 0.01;
    double t_max = 100.0;
    double collision_floor = 1e-6;  // abort when min R_j < floor * p(0)
};

/// zdot_j = -i sum_{m != j} k_m / (conj(z_m) - conj(z_j)).
std::array<Complex, 3> rhs_z(const VortexState& state, const VortexStrengths& s);

/// Side rates from the configuration equation,
///   Rdot_j = 2 gamma |A| k_j (R_next^2 - R_prev^2) / (R_j ... ),
/// valid only away from collinearity (CollinearStateError at gamma = 0).
std::array<double, 3> rhs_r(const Configuration& c, const VortexStrengths& s);

/// Rates of the planar reduction evaluated at unit perimeter; for a general
/// perimeter both rates scale by 1/p^2.
struct TrilinearRates {
    std::array<double, 3> xdot{};
    double p_log_rate = 0.0;  // pdot / p
};

/// xdot_j = gamma F_j H calY and pdot/p, parabolic case only; requires x
/// strictly inside the admissible triangle.
TrilinearRates rhs_trilinear(const TrilinearPoint& x, const VortexStrengths& s);

enum class Edge { Q1Q2, Q2Q3, Q3Q1 };  // x3 = 1/2, x1 = 1/2, x2 = 1/2

const char* to_string(Edge e);

struct EdgeCrossing {
    double t_cross = 0.0;
    Edge edge = Edge::Q1Q2;
    int gamma_before = 0;
    int gamma_after = 0;
};

enum class Termination {
    ReachedTMax,
    TerminalEvent,
    Settled,
    CollisionAbort,
    StiffnessAbort,
};

const char* to_string(Termination t);

struct TrajectorySample {
    double t = 0.0;
    VortexState state;
    Configuration config;
    TrilinearPoint x;
    double caly = 0.0;
    double ibar = 0.0;
    double p = 0.0;
};

/// User-supplied event function; a sign change of value() across an accepted
/// step is refined by bisection on the dense interpolant.
struct ScalarEvent {
    std::function<double(const VortexState&)> value;
    bool terminal = false;
    std::string label;
};

struct TriggeredEvent {
    double t = 0.0;
    std::string label;
    VortexState state;
};

struct IntegrationEvents {
    bool detect_edge_crossings = true;
    /// When > 0, stop once the trailing settle_window accepted samples all
    /// have |calY| < settle_tol with |calY| nonincreasing.
    double settle_tol = 0.0;
    int settle_window = 10;
    std::vector<ScalarEvent> scalar_events;
};

struct InvariantDrift {
    double a_rel = 0.0;
    double b_rel = 0.0;
    double ibar_rel = 0.0;
    double kirchhoff_abs = 0.0;  // |sum k_j z_j - initial|
    double polar_abs = 0.0;      // |sum k_j |z_j|^2 - initial|
};

struct TrajectoryRecord {
    std::vector<TrajectorySample> samples;
    std::vector<EdgeCrossing> crossings;
    std::vector<TriggeredEvent> events;
    Termination termination = Termination::ReachedTMax;
    InvariantDrift drift;
    int caly_sign_flips = 0;  // counted while |calY| > 1e-12
    double t_end = 0.0;

    const TrajectorySample& initial() const { return samples.front(); }
    const TrajectorySample& final() const { return samples.back(); }
};

/// Adaptive embedded Runge-Kutta 5(4) integration of the z-plane equations
/// with samples at every accepted step, edge-crossing detection and optional
/// scalar events. Collision-floor breaches and step-size underflow are
/// recorded terminations, not exceptions.
TrajectoryRecord integrate(const VortexState& state0, const VortexStrengths& s,
                           const IntegratorSettings& settings,
                           const IntegrationEvents& events = {});

/// Self-similar family through a point of the critical curve:
///   p^2(t) = p0^2 + 4 gamma D0 S0 t,   D0 = (x2^2 - x1^2)/(k1 k2),
///   S0 = k1 k2 k3 sqrt((1-2x1)(1-2x2)(1-2x3)) / (4 (x1 x2 x3)^2).
struct SimilarSolution {
    double d0 = 0.0;
    double s0 = 0.0;
    double p0 = 1.0;
    int gamma = +1;
    double p_squared_rate = 0.0;  // 4 gamma D0 S0
    bool expanding = false;
    std::optional<double> coalescence_time;  // set when contracting

    /// Perimeter at time t; throws CoalescenceError for t past coalescence.
    double p_at(double t) const;
};

/// Requires |calY(x)| < 1e-10 and x strictly inside the triangle.
SimilarSolution similar_solution(const TrilinearPoint& x_on_curve,
                                 const VortexStrengths& s, int gamma,
                                 double p0);

struct OracleComparison {
    double max_r_discrepancy = 0.0;  // across formulations, same times
    double max_x_discrepancy = 0.0;
    double horizon_used = 0.0;
    bool shortened = false;
    std::string notice;
};

/// Integrates the z-plane, configuration-space and trilinear formulations
/// side by side from the same initial data and reports the worst
/// disagreement. The trilinear leg requires parabolic strengths and is
/// skipped otherwise.
OracleComparison oracle_compare(const VortexState& state0,
                                const VortexStrengths& s,
                                const IntegratorSettings& settings,
                                double horizon);

}  // namespace trivortex
