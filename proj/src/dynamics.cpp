#include "trivortex/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

namespace trivortex {

namespace {

// Dormand-Prince 5(4) tableau, error weights and the 4th-order dense-output
// coefficients (Hairer-Norsett-Wanner).
constexpr double kA21 = 0.2;
constexpr double kA31 = 3.0 / 40.0, kA32 = 9.0 / 40.0;
constexpr double kA41 = 44.0 / 45.0, kA42 = -56.0 / 15.0, kA43 = 32.0 / 9.0;
constexpr double kA51 = 19372.0 / 6561.0, kA52 = -25360.0 / 2187.0,
                 kA53 = 64448.0 / 6561.0, kA54 = -212.0 / 729.0;
constexpr double kA61 = 9017.0 / 3168.0, kA62 = -355.0 / 33.0,
                 kA63 = 46732.0 / 5247.0, kA64 = 49.0 / 176.0,
                 kA65 = -5103.0 / 18656.0;
constexpr double kA71 = 35.0 / 384.0, kA73 = 500.0 / 1113.0,
                 kA74 = 125.0 / 192.0, kA75 = -2187.0 / 6784.0,
                 kA76 = 11.0 / 84.0;
constexpr double kC2 = 0.2, kC3 = 0.3, kC4 = 0.8, kC5 = 8.0 / 9.0;
constexpr double kE1 = 71.0 / 57600.0, kE3 = -71.0 / 16695.0,
                 kE4 = 71.0 / 1920.0, kE5 = -17253.0 / 339200.0,
                 kE6 = 22.0 / 525.0, kE7 = -1.0 / 40.0;
constexpr double kD1 = -12715105075.0 / 11282082432.0,
                 kD3 = 87487479700.0 / 32700410799.0,
                 kD4 = -10690763975.0 / 1880347072.0,
                 kD5 = 701980252875.0 / 199316789632.0,
                 kD6 = -1453857185.0 / 822651844.0,
                 kD7 = 69997945.0 / 29380423.0;

constexpr double kSafe = 0.9, kBeta = 0.04;
constexpr double kExpo1 = 0.2 - kBeta * 0.75;
constexpr double kFacc1 = 5.0;   // max growth of 1/fac
constexpr double kFacc2 = 0.1;   // max shrink of 1/fac

template <std::size_t N>
using Vec = std::array<double, N>;

template <std::size_t N>
struct DenseStep {
    double t0 = 0.0, h = 0.0;
    Vec<N> r1{}, r2{}, r3{}, r4{}, r5{};

    Vec<N> at(double t) const {
        const double th = (t - t0) / h;
        const double th1 = 1.0 - th;
        Vec<N> out;
        for (std::size_t i = 0; i < N; ++i) {
            out[i] = r1[i] + th * (r2[i] + th1 * (r3[i] + th * (r4[i] + th1 * r5[i])));
        }
        return out;
    }
};

/// One adaptively controlled DOPRI5 step at a time; FSAL reuse of the last
/// stage; dense interpolant for the most recent accepted step.
template <std::size_t N, class Rhs>
class Dopri5 {
  public:
    Dopri5(Rhs rhs, double t0, const Vec<N>& y0, const IntegratorSettings& st)
        : rhs_(rhs), settings_(st), t_(t0), y_(y0) {
        rhs_(t_, y_, k1_);
        h_ = initial_step();
    }

    double t() const { return t_; }
    double t_prev() const { return dense_.t0; }
    const Vec<N>& y() const { return y_; }
    const DenseStep<N>& dense() const { return dense_; }

    /// Truncate the last accepted step at t_stop (for terminal events).
    void cut_back(double t_stop) {
        y_ = dense_.at(t_stop);
        t_ = t_stop;
        rhs_(t_, y_, k1_);
    }

    /// Advance by one accepted step, not beyond t_limit.
    /// Returns false on step-size underflow.
    bool advance(double t_limit) {
        Vec<N> k2, k3, k4, k5, k6, k7, yt, y1;
        bool rejected = false;
        for (int attempt = 0; attempt < 1000; ++attempt) {
            double h = std::min(h_, settings_.max_step);
            if (t_ + h > t_limit) h = t_limit - t_;
            const double hmin = 16.0 * std::numeric_limits<double>::epsilon() *
                                std::max(1.0, std::abs(t_));
            if (h < hmin) return false;

            stage(h, yt, kA21, k1_);
            rhs_(t_ + kC2 * h, yt, k2);
            stage(h, yt, kA31, k1_, kA32, k2);
            rhs_(t_ + kC3 * h, yt, k3);
            stage(h, yt, kA41, k1_, kA42, k2, kA43, k3);
            rhs_(t_ + kC4 * h, yt, k4);
            stage(h, yt, kA51, k1_, kA52, k2, kA53, k3, kA54, k4);
            rhs_(t_ + kC5 * h, yt, k5);
            stage(h, yt, kA61, k1_, kA62, k2, kA63, k3, kA64, k4, kA65, k5);
            rhs_(t_ + h, yt, k6);
            for (std::size_t i = 0; i < N; ++i) {
                y1[i] = y_[i] + h * (kA71 * k1_[i] + kA73 * k3[i] + kA74 * k4[i] +
                                     kA75 * k5[i] + kA76 * k6[i]);
            }
            rhs_(t_ + h, y1, k7);

            double err = 0.0;
            for (std::size_t i = 0; i < N; ++i) {
                const double sc = settings_.abs_tol +
                                  settings_.rel_tol *
                                      std::max(std::abs(y_[i]), std::abs(y1[i]));
                const double e = h * (kE1 * k1_[i] + kE3 * k3[i] + kE4 * k4[i] +
                                      kE5 * k5[i] + kE6 * k6[i] + kE7 * k7[i]);
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / static_cast<double>(N));

            if (!std::isfinite(err)) {
                h_ = 0.1 * h;
                rejected = true;
                continue;
            }
            const double fac11 = std::pow(err, kExpo1);
            if (err <= 1.0) {
                dense_.t0 = t_;
                dense_.h = h;
                for (std::size_t i = 0; i < N; ++i) {
                    const double ydiff = y1[i] - y_[i];
                    const double bspl = h * k1_[i] - ydiff;
                    dense_.r1[i] = y_[i];
                    dense_.r2[i] = ydiff;
                    dense_.r3[i] = bspl;
                    dense_.r4[i] = ydiff - h * k7[i] - bspl;
                    dense_.r5[i] = h * (kD1 * k1_[i] + kD3 * k3[i] + kD4 * k4[i] +
                                        kD5 * k5[i] + kD6 * k6[i] + kD7 * k7[i]);
                }
                double fac = fac11 / std::pow(facold_, kBeta);
                fac = std::max(kFacc2, std::min(kFacc1, fac / kSafe));
                double hnew = h / fac;
                if (rejected) hnew = std::min(hnew, h);
                facold_ = std::max(err, 1e-4);
                t_ += h;
                y_ = y1;
                k1_ = k7;  // FSAL
                h_ = hnew;
                return true;
            }
            h_ = h / std::min(kFacc1, fac11 / kSafe);
            rejected = true;
        }
        return false;
    }

  private:
    template <class... Args>
    void stage(double h, Vec<N>& out, Args&&... args) {
        axpy(h, out, std::forward<Args>(args)...);
    }
    void axpy(double h, Vec<N>& out, double a, const Vec<N>& k) {
        for (std::size_t i = 0; i < N; ++i) out[i] = y_[i] + h * a * k[i];
    }
    template <class... Rest>
    void axpy(double h, Vec<N>& out, double a, const Vec<N>& k, Rest&&... rest) {
        axpy(h, out, std::forward<Rest>(rest)...);
        for (std::size_t i = 0; i < N; ++i) out[i] += h * a * k[i];
    }

    double initial_step() const {
        double dnf = 0.0, dny = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = settings_.abs_tol + settings_.rel_tol * std::abs(y_[i]);
            dnf += (k1_[i] / sc) * (k1_[i] / sc);
            dny += (y_[i] / sc) * (y_[i] / sc);
        }
        double h = (dnf <= 1e-10 || dny <= 1e-10) ? 1e-6
                                                  : 0.01 * std::sqrt(dny / dnf);
        h = std::min(h, settings_.max_step);
        Vec<N> y1, f1;
        for (std::size_t i = 0; i < N; ++i) y1[i] = y_[i] + h * k1_[i];
        rhs_(t_ + h, y1, f1);
        double der2 = 0.0;
        for (std::size_t i = 0; i < N; ++i) {
            const double sc = settings_.abs_tol + settings_.rel_tol * std::abs(y_[i]);
            der2 += ((f1[i] - k1_[i]) / sc) * ((f1[i] - k1_[i]) / sc);
        }
        der2 = std::sqrt(der2) / h;
        const double der12 = std::max(der2, std::sqrt(dnf));
        const double h1 = (der12 <= 1e-15) ? std::max(1e-6, h * 1e-3)
                                           : std::pow(0.01 / der12, 0.2);
        return std::min({100.0 * h, h1, settings_.max_step});
    }

    Rhs rhs_;
    IntegratorSettings settings_;
    double t_;
    Vec<N> y_;
    Vec<N> k1_{};
    double h_ = 0.0;
    double facold_ = 1e-4;
    DenseStep<N> dense_{};
};

VortexState unpack_state(double t, const Vec<6>& y) {
    return VortexState{t, {y[0], y[1]}, {y[2], y[3]}, {y[4], y[5]}};
}

Vec<6> pack_state(const VortexState& st) {
    return {st.z1.real(), st.z1.imag(), st.z2.real(),
            st.z2.imag(), st.z3.real(), st.z3.imag()};
}

struct ZRhs {
    VortexStrengths s;
    void operator()(double /*t*/, const Vec<6>& y, Vec<6>& dy) const {
        const Complex z1{y[0], y[1]}, z2{y[2], y[3]}, z3{y[4], y[5]};
        const Complex d12 = std::conj(z2) - std::conj(z1);
        const Complex d13 = std::conj(z3) - std::conj(z1);
        const Complex d23 = std::conj(z3) - std::conj(z2);
        const Complex i(0.0, 1.0);
        const Complex v1 = -i * (s.k2 / d12 + s.k3 / d13);
        const Complex v2 = -i * (s.k1 / -d12 + s.k3 / d23);
        const Complex v3 = -i * (s.k1 / -d13 + s.k2 / -d23);
        dy = {v1.real(), v1.imag(), v2.real(), v2.imag(), v3.real(), v3.imag()};
    }
};

double signed_area_flat(const Vec<6>& y) {
    const double ax = y[2] - y[0], ay = y[3] - y[1];
    const double bx = y[4] - y[0], by = y[5] - y[1];
    return 0.5 * (ax * by - ay * bx);
}

void validate_settings(const IntegratorSettings& st) {
    if (!(st.rel_tol >= 1e-14) || !(st.abs_tol > 0.0) || !(st.max_step > 0.0) ||
        !(st.t_max > 0.0) || !(st.collision_floor > 0.0)) {
        throw Error("integrator settings must be positive with rel_tol >= 1e-14");
    }
}

}  // namespace

std::array<Complex, 3> rhs_z(const VortexState& state, const VortexStrengths& s) {
    const double d12 = std::abs(state.z1 - state.z2);
    const double d13 = std::abs(state.z1 - state.z3);
    const double d23 = std::abs(state.z2 - state.z3);
    if (d12 == 0.0 || d13 == 0.0 || d23 == 0.0) {
        throw CollisionError("rhs_z: coincident vortices");
    }
    ZRhs f{s};
    Vec<6> dy;
    f(state.t, pack_state(state), dy);
    return {Complex{dy[0], dy[1]}, Complex{dy[2], dy[3]}, Complex{dy[4], dy[5]}};
}

std::array<double, 3> rhs_r(const Configuration& c, const VortexStrengths& s) {
    if (c.gamma == 0 || !(c.area > 0.0)) {
        throw CollinearStateError("rhs_r: direction undefined at zero area");
    }
    const double p2 = c.r1 * c.r1 * c.r2 * c.r2 * c.r3 * c.r3;
    const double f = 2.0 * c.gamma * c.area / p2;
    return {f * s.k1 * c.r1 * (c.r3 * c.r3 - c.r2 * c.r2),
            f * s.k2 * c.r2 * (c.r1 * c.r1 - c.r3 * c.r3),
            f * s.k3 * c.r3 * (c.r2 * c.r2 - c.r1 * c.r1)};
}

TrilinearRates rhs_trilinear(const TrilinearPoint& x, const VortexStrengths& s) {
    if (!is_parabolic(s)) {
        throw UnsupportedCaseError("rhs_trilinear requires parabolic strengths");
    }
    if (!(x.x1 > 0.0 && x.x2 > 0.0 && x.x3 > 0.0) ||
        x.x1 >= 0.5 || x.x2 >= 0.5 || x.x3 >= 0.5) {
        throw CollinearStateError(
            "rhs_trilinear: point must lie strictly inside the triangle");
    }
    const int gamma = x.gamma >= 0 ? +1 : -1;
    const double w = x.x1 * x.x2 * x.x3;
    const double area1 =
        0.25 * std::sqrt((1.0 - 2.0 * x.x1) * (1.0 - 2.0 * x.x2) *
                         (1.0 - 2.0 * x.x3));
    const double h = 2.0 * area1 / (w * w);  // at p = 1
    const double y = cal_y(x, s);
    const double f1 = x.x1 * (x.x3 / s.k2 - x.x2 / s.k3);
    const double f2 = x.x2 * (x.x1 / s.k3 - x.x3 / s.k1);
    const double f3 = x.x3 * (x.x2 / s.k1 - x.x1 / s.k2);
    TrilinearRates r;
    r.xdot = {gamma * f1 * h * y, gamma * f2 * h * y, gamma * f3 * h * y};
    r.p_log_rate =
        gamma * h *
        (s.k1 * x.x1 * (x.x3 * x.x3 - x.x2 * x.x2) +
         s.k2 * x.x2 * (x.x1 * x.x1 - x.x3 * x.x3) +
         s.k3 * x.x3 * (x.x2 * x.x2 - x.x1 * x.x1));
    return r;
}

const char* to_string(Edge e) {
    switch (e) {
        case Edge::Q1Q2: return "Q1Q2";
        case Edge::Q2Q3: return "Q2Q3";
        case Edge::Q3Q1: return "Q3Q1";
    }
    return "?";
}

const char* to_string(Termination t) {
    switch (t) {
        case Termination::ReachedTMax: return "t-max";
        case Termination::TerminalEvent: return "terminal-event";
        case Termination::Settled: return "settled";
        case Termination::CollisionAbort: return "collision-abort";
        case Termination::StiffnessAbort: return "stiffness-abort";
    }
    return "?";
}

namespace {

Edge edge_of(const TrilinearPoint& x) {
    if (x.x1 >= x.x2 && x.x1 >= x.x3) return Edge::Q2Q3;
    if (x.x2 >= x.x1 && x.x2 >= x.x3) return Edge::Q3Q1;
    return Edge::Q1Q2;
}

struct DriftTracker {
    double a0 = 0.0, b0 = 0.0, ibar0 = 0.0, polar0 = 0.0;
    Complex m0;
    bool initialized = false;

    void update(const VortexState& st, const VortexStrengths& s,
                const Configuration& c, double ib, InvariantDrift& d) {
        const double a = c.r1 * c.r1 / s.k1 + c.r2 * c.r2 / s.k2 +
                         c.r3 * c.r3 / s.k3;
        const double b = std::pow(c.r1, 1.0 / s.k1) *
                         std::pow(c.r2, 1.0 / s.k2) *
                         std::pow(c.r3, 1.0 / s.k3);
        const Complex m = s.k1 * st.z1 + s.k2 * st.z2 + s.k3 * st.z3;
        const double polar = s.k1 * std::norm(st.z1) + s.k2 * std::norm(st.z2) +
                             s.k3 * std::norm(st.z3);
        if (!initialized) {
            a0 = a; b0 = b; ibar0 = ib; m0 = m; polar0 = polar;
            initialized = true;
            return;
        }
        const auto rel = [](double v, double v0) {
            return std::abs(v - v0) / std::max(std::abs(v0), 1e-300);
        };
        d.a_rel = std::max(d.a_rel, rel(a, a0));
        d.b_rel = std::max(d.b_rel, rel(b, b0));
        d.ibar_rel = std::max(d.ibar_rel, rel(ib, ibar0));
        d.kirchhoff_abs = std::max(d.kirchhoff_abs, std::abs(m - m0));
        d.polar_abs = std::max(d.polar_abs, std::abs(polar - polar0));
    }
};

}  // namespace

TrajectoryRecord integrate(const VortexState& state0, const VortexStrengths& s,
                           const IntegratorSettings& settings,
                           const IntegrationEvents& events) {
    validate_settings(settings);
    const Configuration c0 = configuration_of(state0);
    const double p0 = c0.p;
    int gamma = c0.gamma != 0 ? c0.gamma : +1;

    TrajectoryRecord rec;
    DriftTracker drift;
    int last_caly_sign = 0;

    const auto emit = [&](double t, const Vec<6>& y) {
        TrajectorySample sm;
        sm.t = t;
        sm.state = unpack_state(t, y);
        sm.config = configuration_of(sm.state);
        sm.config.gamma = gamma;
        sm.x = reduce(sm.config);
        sm.caly = cal_y(sm.x, s);
        sm.ibar = ibar(sm.x, s);
        sm.p = sm.config.p;
        drift.update(sm.state, s, sm.config, sm.ibar, rec.drift);
        if (std::abs(sm.caly) > 1e-12) {
            const int sign = sm.caly > 0.0 ? +1 : -1;
            if (last_caly_sign != 0 && sign != last_caly_sign) {
                ++rec.caly_sign_flips;
            }
            last_caly_sign = sign;
        }
        rec.samples.push_back(std::move(sm));
    };

    ZRhs rhs{s};
    Dopri5<6, ZRhs> stepper(rhs, state0.t, pack_state(state0), settings);
    const double t_end = state0.t + settings.t_max;
    const double t_eps = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(t_end));

    emit(state0.t, stepper.y());

    double area_prev = signed_area_flat(stepper.y());
    std::vector<double> scalar_prev;
    scalar_prev.reserve(events.scalar_events.size());
    for (const auto& ev : events.scalar_events) {
        scalar_prev.push_back(ev.value(state0));
    }

    // Bisect a sign change of fn over the last accepted step; 1e-12 in t.
    const auto locate = [&](double ga, auto&& fn) {
        double a = stepper.t_prev(), b = stepper.t();
        while (b - a > 1e-12) {
            const double m = 0.5 * (a + b);
            const double gm = fn(m);
            if ((ga < 0.0) == (gm < 0.0) && gm != 0.0) {
                a = m;
                ga = gm;
            } else {
                b = m;
            }
        }
        return 0.5 * (a + b);
    };

    rec.termination = Termination::ReachedTMax;
    while (t_end - stepper.t() > t_eps) {
        if (!stepper.advance(t_end)) {
            rec.termination = Termination::StiffnessAbort;
            break;
        }

        struct Hit {
            double t;
            int kind;  // -1 edge crossing, >= 0 scalar event index
        };
        std::vector<Hit> hits;

        if (events.detect_edge_crossings) {
            const double area_new = signed_area_flat(stepper.y());
            if (area_prev != 0.0 &&
                ((area_prev < 0.0) != (area_new < 0.0) || area_new == 0.0)) {
                const double tc = locate(area_prev, [&](double tm) {
                    return signed_area_flat(stepper.dense().at(tm));
                });
                hits.push_back({tc, -1});
            }
            area_prev = area_new;
        }
        for (std::size_t i = 0; i < events.scalar_events.size(); ++i) {
            const double g_new =
                events.scalar_events[i].value(unpack_state(stepper.t(), stepper.y()));
            if (scalar_prev[i] != 0.0 &&
                ((scalar_prev[i] < 0.0) != (g_new < 0.0) || g_new == 0.0)) {
                const double tc = locate(scalar_prev[i], [&](double tm) {
                    return events.scalar_events[i].value(
                        unpack_state(tm, stepper.dense().at(tm)));
                });
                hits.push_back({tc, static_cast<int>(i)});
            }
            scalar_prev[i] = g_new;
        }
        std::sort(hits.begin(), hits.end(),
                  [](const Hit& a, const Hit& b) { return a.t < b.t; });

        bool stop = false;
        for (const Hit& hit : hits) {
            if (hit.kind < 0) {
                const VortexState sc = unpack_state(hit.t, stepper.dense().at(hit.t));
                const Configuration cc = configuration_of(sc);
                rec.crossings.push_back(
                    EdgeCrossing{hit.t, edge_of(reduce(cc)), gamma, -gamma});
                gamma = -gamma;
            } else {
                const auto& ev = events.scalar_events[hit.kind];
                const VortexState sc = unpack_state(hit.t, stepper.dense().at(hit.t));
                rec.events.push_back(TriggeredEvent{hit.t, ev.label, sc});
                if (ev.terminal) {
                    stepper.cut_back(hit.t);
                    rec.termination = Termination::TerminalEvent;
                    stop = true;
                    break;
                }
            }
        }

        emit(stepper.t(), stepper.y());
        if (stop) break;

        const Configuration& cc = rec.samples.back().config;
        if (std::min({cc.r1, cc.r2, cc.r3}) < settings.collision_floor * p0) {
            rec.termination = Termination::CollisionAbort;
            break;
        }

        if (events.settle_tol > 0.0 &&
            rec.samples.size() >= static_cast<std::size_t>(events.settle_window)) {
            bool settled = std::abs(rec.samples.back().caly) < events.settle_tol;
            const std::size_t n = rec.samples.size();
            for (std::size_t i = n - events.settle_window; settled && i + 1 < n; ++i) {
                const double c_here = std::abs(rec.samples[i].caly);
                const double c_next = std::abs(rec.samples[i + 1].caly);
                settled = c_here < events.settle_tol &&
                          c_next <= c_here * (1.0 + 1e-9);
            }
            if (settled) {
                rec.termination = Termination::Settled;
                break;
            }
        }
    }

    rec.t_end = rec.samples.back().t;
    return rec;
}

double SimilarSolution::p_at(double t) const {
    const double v = p0 * p0 + p_squared_rate * t;
    if (v <= 0.0) {
        throw CoalescenceError(coalescence_time.value_or(t));
    }
    return std::sqrt(v);
}

SimilarSolution similar_solution(const TrilinearPoint& x,
                                 const VortexStrengths& s, int gamma,
                                 double p0) {
    if (!is_parabolic(s)) {
        throw UnsupportedCaseError("similar_solution requires parabolic strengths");
    }
    if (std::abs(cal_y(x, s)) >= 1e-10) {
        throw OffCurveDomainError("similar_solution requires |calY(x)| < 1e-10");
    }
    if (!(x.x1 > 0.0 && x.x2 > 0.0 && x.x3 > 0.0) || x.x1 > 0.5 + 1e-12 ||
        x.x2 > 0.5 + 1e-12 || x.x3 > 0.5 + 1e-12) {
        throw OffCurveDomainError("similar_solution: point outside the triangle");
    }
    SimilarSolution sol;
    sol.p0 = p0;
    sol.gamma = gamma >= 0 ? +1 : -1;
    sol.d0 = (x.x2 * x.x2 - x.x1 * x.x1) / (s.k1 * s.k2);
    const double w = x.x1 * x.x2 * x.x3;
    const double rad = std::max(0.0, (1.0 - 2.0 * x.x1) * (1.0 - 2.0 * x.x2) *
                                         (1.0 - 2.0 * x.x3));
    sol.s0 = s.k1 * s.k2 * s.k3 * std::sqrt(rad) / (4.0 * w * w);
    sol.p_squared_rate = 4.0 * sol.gamma * sol.d0 * sol.s0;
    sol.expanding = sol.p_squared_rate > 0.0;
    if (sol.p_squared_rate < 0.0) {
        sol.coalescence_time = -p0 * p0 / sol.p_squared_rate;
    }
    return sol;
}

namespace {

// Combined state for the three-formulation comparison:
//   [0..5] z-plane, [6..8] sides R, [9] signed area of triangle_p,
//   [10..12] trilinear x, [13] perimeter, [14] signed area of triangle_1.
// Carrying the signed areas as smooth variables removes the gamma
// bookkeeping at collinear states (gamma |A| is analytic along the flow).
struct CombinedRhs {
    VortexStrengths s;
    bool with_trilinear;

    void operator()(double t, const Vec<15>& y, Vec<15>& dy) const {
        Vec<6> z, dz;
        std::copy_n(y.begin(), 6, z.begin());
        ZRhs{s}(t, z, dz);
        std::copy_n(dz.begin(), 6, dy.begin());

        const double r1 = y[6], r2 = y[7], r3 = y[8], as = y[9];
        const double pr2 = r1 * r1 * r2 * r2 * r3 * r3;
        const double d1 = r3 * r3 - r2 * r2;
        const double d2 = r1 * r1 - r3 * r3;
        const double d3 = r2 * r2 - r1 * r1;
        dy[6] = 2.0 * as * s.k1 * r1 * d1 / pr2;
        dy[7] = 2.0 * as * s.k2 * r2 * d2 / pr2;
        dy[8] = 2.0 * as * s.k3 * r3 * d3 / pr2;
        // 16 As^2 = G(R); dG/dt has a factor As, so dAs/dt is smooth.
        const double s2 = r1 * r1 + r2 * r2 + r3 * r3;
        const double g1 = 4.0 * r1 * (s2 - 2.0 * r1 * r1);
        const double g2 = 4.0 * r2 * (s2 - 2.0 * r2 * r2);
        const double g3 = 4.0 * r3 * (s2 - 2.0 * r3 * r3);
        dy[9] = (g1 * s.k1 * r1 * d1 + g2 * s.k2 * r2 * d2 + g3 * s.k3 * r3 * d3) /
                (16.0 * pr2);

        if (!with_trilinear) {
            dy[10] = dy[11] = dy[12] = dy[13] = dy[14] = 0.0;
            return;
        }
        const double x1 = y[10], x2 = y[11], x3 = y[12], p = y[13], a1 = y[14];
        const double w2 = x1 * x1 * x2 * x2 * x3 * x3;
        const double caly = s.k2 * s.k3 * x1 * x1 + s.k3 * s.k1 * x2 * x2 +
                            s.k1 * s.k2 * x3 * x3;
        const double f1 = x1 * (x3 / s.k2 - x2 / s.k3);
        const double f2 = x2 * (x1 / s.k3 - x3 / s.k1);
        const double f3 = x3 * (x2 / s.k1 - x1 / s.k2);
        const double scale = 2.0 * a1 * caly / (p * p * w2);
        dy[10] = scale * f1;
        dy[11] = scale * f2;
        dy[12] = scale * f3;
        const double bracket = s.k1 * x1 * (x3 * x3 - x2 * x2) +
                               s.k2 * x2 * (x1 * x1 - x3 * x3) +
                               s.k3 * x3 * (x2 * x2 - x1 * x1);
        dy[13] = 2.0 * a1 * bracket / (p * w2);
        const double sx2 = x1 * x1 + x2 * x2 + x3 * x3;
        const double gx1 = 4.0 * x1 * (sx2 - 2.0 * x1 * x1);
        const double gx2 = 4.0 * x2 * (sx2 - 2.0 * x2 * x2);
        const double gx3 = 4.0 * x3 * (sx2 - 2.0 * x3 * x3);
        dy[14] = (gx1 * f1 + gx2 * f2 + gx3 * f3) * caly / (16.0 * p * p * w2);
    }
};

}  // namespace

OracleComparison oracle_compare(const VortexState& state0,
                                const VortexStrengths& s,
                                const IntegratorSettings& settings,
                                double horizon) {
    validate_settings(settings);
    const Configuration c0 = configuration_of(state0);
    const bool with_trilinear = is_parabolic(s);

    Vec<15> y0{};
    const Vec<6> z0 = pack_state(state0);
    std::copy_n(z0.begin(), 6, y0.begin());
    y0[6] = c0.r1;
    y0[7] = c0.r2;
    y0[8] = c0.r3;
    y0[9] = signed_area(state0);
    y0[10] = c0.r1 / c0.p;
    y0[11] = c0.r2 / c0.p;
    y0[12] = c0.r3 / c0.p;
    y0[13] = c0.p;
    y0[14] = signed_area(state0) / (c0.p * c0.p);

    CombinedRhs rhs{s, with_trilinear};
    IntegratorSettings st = settings;
    st.t_max = horizon;
    Dopri5<15, CombinedRhs> stepper(rhs, state0.t, y0, st);
    const double t_end = state0.t + horizon;
    const double t_eps = 64.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, std::abs(t_end));

    OracleComparison cmp;
    cmp.horizon_used = horizon;
    while (t_end - stepper.t() > t_eps) {
        if (!stepper.advance(t_end)) {
            cmp.shortened = true;
            cmp.horizon_used = stepper.t() - state0.t;
            cmp.notice = "step-size underflow";
            break;
        }
        const Vec<15>& y = stepper.y();
        Vec<6> zpart;
        std::copy_n(y.begin(), 6, zpart.begin());
        const VortexState zs = unpack_state(stepper.t(), zpart);
        const Configuration cz = configuration_of(zs);
        const double rz[3] = {cz.r1, cz.r2, cz.r3};
        const double rr[3] = {y[6], y[7], y[8]};
        for (int j = 0; j < 3; ++j) {
            cmp.max_r_discrepancy =
                std::max(cmp.max_r_discrepancy, std::abs(rr[j] - rz[j]));
            const double xr = rr[j] / (rr[0] + rr[1] + rr[2]);
            cmp.max_x_discrepancy =
                std::max(cmp.max_x_discrepancy, std::abs(xr - rz[j] / cz.p));
        }
        if (with_trilinear) {
            const double xt[3] = {y[10], y[11], y[12]};
            for (int j = 0; j < 3; ++j) {
                cmp.max_r_discrepancy = std::max(
                    cmp.max_r_discrepancy, std::abs(xt[j] * y[13] - rz[j]));
                cmp.max_x_discrepancy = std::max(
                    cmp.max_x_discrepancy, std::abs(xt[j] - rz[j] / cz.p));
            }
        }
        const double xmin =
            std::min({rz[0], rz[1], rz[2]}) / cz.p;
        if (xmin < 0.02) {
            cmp.shortened = true;
            cmp.horizon_used = stepper.t() - state0.t;
            cmp.notice = "vertex approach (two sides degenerating)";
            break;
        }
        if (std::min({rz[0], rz[1], rz[2]}) < settings.collision_floor * c0.p) {
            cmp.shortened = true;
            cmp.horizon_used = stepper.t() - state0.t;
            cmp.notice = "collision floor reached";
            break;
        }
    }
    return cmp;
}

}  // namespace trivortex
