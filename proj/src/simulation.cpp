#include "trivortex/simulation.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace trivortex {

namespace {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

InitialSpec resolve_start(const StartSpec& start, const VortexStrengths& s) {
    const int n_set = (start.sides ? 1 : 0) + (start.offset ? 1 : 0) +
                      (start.on_curve_x1 ? 1 : 0);
    if (n_set != 1) {
        throw Error(
            "start spec must set exactly one of sides, (ibar, calY) offset, "
            "or on-curve x1");
    }
    InitialSpec spec;
    spec.k = s;
    spec.gamma = start.gamma < 0 ? -1 : +1;
    if (start.sides) {
        spec.r = *start.sides;
    } else if (start.offset) {
        const TrilinearPoint x =
            point_at_offset(start.offset->first, start.offset->second,
                            spec.gamma, s);
        spec.r = {x.x1, x.x2, x.x3};
    } else {
        const TrilinearPoint x = curve_point(*start.on_curve_x1, s);
        spec.r = {x.x1, x.x2, x.x3};
    }
    return spec;
}

RunResult run_simulation(const RunConfig& cfg) {
    const InitialSpec spec = resolve_start(cfg.start, cfg.strengths);
    const VortexState state0 = positions_from_config(spec);
    const TrilinearPoint x0{spec.r[0], spec.r[1], spec.r[2], spec.gamma};

    RunResult out;
    out.summary.run_id = cfg.run_id;
    out.summary.strengths = cfg.strengths;
    out.summary.initial = spec;
    out.summary.prediction = predict(x0, cfg.strengths);

    IntegrationEvents events;
    events.settle_tol = cfg.settle_tol;

    const auto t0 = std::chrono::steady_clock::now();
    out.record = integrate(state0, cfg.strengths, cfg.settings, events);
    const auto t1 = std::chrono::steady_clock::now();

    out.summary.report = observe(out.record, cfg.strengths, cfg.tol_conv);
    out.summary.ibar_rel_drift = out.record.drift.ibar_rel;
    out.summary.kirchhoff_abs_drift =
        std::max(out.record.drift.kirchhoff_abs, out.record.drift.polar_abs);
    out.summary.termination = out.record.termination;
    out.summary.wall_time_ms =
        std::chrono::duration_cast<std::chrono::milliseconds>(t1 - t0).count();
    out.summary.valid = out.summary.ibar_rel_drift < 1e-3;
    return out;
}

VortexStrengths preset_strengths() { return parabolic_strengths(2.0, 1.0); }

const std::array<Preset, 4>& table1_presets() {
    static const std::array<Preset, 4> presets = {{
        {"r-", {0.18195, 0.44396, 0.37409}, -0.00498, 0.68503,
         TrajectoryType::I, 1, 1},
        {"r+", {0.19108, 0.43424, 0.37468}, 0.00501, 0.68500,
         TrajectoryType::II, 0, 1},
        {"u-", {0.10442, 0.49225, 0.40333}, -0.00500, 0.38563,
         TrajectoryType::I, 1, 1},
        {"u+", {0.10839, 0.48643, 0.40518}, 0.00502, 0.38555,
         TrajectoryType::III, 1, 3},
    }};
    return presets;
}

Table1Report run_table1(double t_max) {
    const VortexStrengths s = preset_strengths();
    Table1Report report;

    std::array<std::future<RunResult>, 4> futures;
    for (std::size_t i = 0; i < 4; ++i) {
        const Preset& preset = table1_presets()[i];
        futures[i] = std::async(std::launch::async, [&s, preset, t_max] {
            RunConfig cfg;
            cfg.run_id = preset.name;
            cfg.strengths = s;
            cfg.start.sides = preset.sides;
            cfg.settings.t_max = t_max;
            cfg.settle_tol = 1e-6;
            return run_simulation(cfg);
        });
    }
    bool all = true;
    for (std::size_t i = 0; i < 4; ++i) {
        const Preset& preset = table1_presets()[i];
        const TrilinearPoint x{preset.sides[0], preset.sides[1],
                               preset.sides[2], +1};
        Table1Row& row = report.rows[i];
        row.name = preset.name;
        row.computed_caly = cal_y(x, s);
        row.published_caly = preset.published_caly;
        row.computed_ibar = ibar(x, s);
        row.published_ibar = preset.published_ibar;
        row.published_type = preset.published_type;
        row.observed_type = futures[i].get().summary.report.observed_type;
        row.pass = std::abs(row.computed_caly - row.published_caly) <= 1e-4 &&
                   std::abs(row.computed_ibar - row.published_ibar) <= 1e-4 &&
                   row.observed_type == row.published_type;
        all = all && row.pass;
    }
    report.all_pass = all;
    return report;
}

namespace {

struct CsvRow {
    double t;
    VortexState state;
    Configuration config;
    TrilinearPoint x;
};

void write_row(std::ostream& os, const CsvRow& row, const VortexStrengths& s) {
    const AlphaBeta ab = to_alpha_beta(row.x);
    os << fmt17(row.t) << ',' << fmt17(row.state.z1.real()) << ','
       << fmt17(row.state.z1.imag()) << ',' << fmt17(row.state.z2.real()) << ','
       << fmt17(row.state.z2.imag()) << ',' << fmt17(row.state.z3.real()) << ','
       << fmt17(row.state.z3.imag()) << ',' << fmt17(row.config.r1) << ','
       << fmt17(row.config.r2) << ',' << fmt17(row.config.r3) << ','
       << fmt17(row.config.p) << ',' << fmt17(row.x.x1) << ','
       << fmt17(row.x.x2) << ',' << fmt17(row.x.x3) << ',' << fmt17(ab.alpha)
       << ',' << fmt17(ab.beta) << ',' << row.x.gamma << ','
       << fmt17(cal_y(row.x, s)) << ',' << fmt17(ibar(row.x, s)) << '\n';
}

}  // namespace

void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record,
                          const VortexStrengths& s, int samples) {
    os << "t,re_z1,im_z1,re_z2,im_z2,re_z3,im_z3,R1,R2,R3,p,"
          "x1,x2,x3,alpha,beta,gamma,calY,ibar\n";
    if (record.samples.empty()) return;

    if (samples <= 0 || record.samples.size() < 2) {
        for (const TrajectorySample& sm : record.samples) {
            write_row(os, CsvRow{sm.t, sm.state, sm.config, sm.x}, s);
        }
        return;
    }

    // Uniform-grid output: linear interpolation of the positions, all
    // derived columns recomputed so each row is internally consistent.
    const double t0 = record.samples.front().t;
    const double t1 = record.samples.back().t;
    const int gamma0 = record.samples.front().x.gamma;
    std::size_t lo = 0;
    std::size_t next_cross = 0;
    int gamma = gamma0;
    for (int i = 0; i < samples; ++i) {
        const double t =
            samples == 1 ? t0 : t0 + (t1 - t0) * i / double(samples - 1);
        while (lo + 2 < record.samples.size() && record.samples[lo + 1].t < t) {
            ++lo;
        }
        while (next_cross < record.crossings.size() &&
               record.crossings[next_cross].t_cross <= t) {
            gamma = record.crossings[next_cross].gamma_after;
            ++next_cross;
        }
        const TrajectorySample& a = record.samples[lo];
        const TrajectorySample& b = record.samples[lo + 1];
        const double w = (b.t == a.t) ? 0.0 : (t - a.t) / (b.t - a.t);
        VortexState st;
        st.t = t;
        st.z1 = a.state.z1 + w * (b.state.z1 - a.state.z1);
        st.z2 = a.state.z2 + w * (b.state.z2 - a.state.z2);
        st.z3 = a.state.z3 + w * (b.state.z3 - a.state.z3);
        Configuration c = configuration_of(st);
        c.gamma = gamma;
        write_row(os, CsvRow{t, st, c, reduce(c)}, s);
    }
}

void write_curve_csv(std::ostream& os, const VortexStrengths& s, int n) {
    os << "x1,x2,x3,alpha,beta\n";
    const double x1_lo = curve_x1_min(s);
    const double x1_hi = 0.5;
    for (int i = 0; i < n; ++i) {
        const double x1 =
            n == 1 ? x1_lo : x1_lo + (x1_hi - x1_lo) * i / double(n - 1);
        const TrilinearPoint x = curve_point(x1, s);
        const AlphaBeta ab = to_alpha_beta(x);
        os << fmt17(x.x1) << ',' << fmt17(x.x2) << ',' << fmt17(x.x3) << ','
           << fmt17(ab.alpha) << ',' << fmt17(ab.beta) << '\n';
    }
}

std::string summary_to_json(const RunSummary& summary) {
    nlohmann::json j;
    j["run_id"] = summary.run_id;
    j["strengths"] = {{"k1", summary.strengths.k1},
                      {"k2", summary.strengths.k2},
                      {"k3", summary.strengths.k3},
                      {"K", summary.strengths.K()}};
    j["initial"] = {{"R1", summary.initial.r[0]},
                    {"R2", summary.initial.r[1]},
                    {"R3", summary.initial.r[2]},
                    {"gamma", summary.initial.gamma}};
    j["prediction"] = {{"type", to_string(summary.prediction.type)},
                       {"basis", to_string(summary.prediction.basis)},
                       {"branch_start", to_string(summary.prediction.branch_start)}};
    std::vector<std::string> edges;
    for (const EdgeCrossing& c : summary.report.crossings) {
        edges.push_back(to_string(c.edge));
    }
    j["report"] = {{"converged", summary.report.converged},
                   {"t_conv", summary.report.t_conv},
                   {"final_x1", summary.report.final_point.x1},
                   {"final_x2", summary.report.final_point.x2},
                   {"final_x3", summary.report.final_point.x3},
                   {"final_gamma", summary.report.final_point.gamma},
                   {"final_branch", to_string(summary.report.final_branch)},
                   {"crossings", summary.report.crossings.size()},
                   {"crossing_edges", edges},
                   {"caly_extrema_count", summary.report.caly_extrema_count},
                   {"observed_type", to_string(summary.report.observed_type)}};
    j["invariant_drift"] = {{"ibar_rel", summary.ibar_rel_drift},
                            {"kirchhoff_abs", summary.kirchhoff_abs_drift}};
    j["termination"] = to_string(summary.termination);
    j["wall_time_ms"] = summary.wall_time_ms;
    j["valid"] = summary.valid;
    return j.dump(2) + "\n";
}

std::string critical_points_to_json(const VortexStrengths& s) {
    const CriticalPoints cp = critical_points(s);
    const auto point = [](const TrilinearPoint& x) {
        return nlohmann::json{{"x1", x.x1}, {"x2", x.x2}, {"x3", x.x3}};
    };
    nlohmann::json j;
    j["E"] = point(cp.e);
    j["Q4"] = point(cp.q4);
    j["Q5"] = point(cp.q5);
    j["Q6"] = point(cp.q6);
    j["S4"] = point(cp.s4);
    j["beta4"] = cp.beta4;
    j["beta5"] = cp.beta5;
    j["I4"] = cp.i4;
    j["I5"] = cp.i5;
    j["I6"] = cp.i6;
    j["nu_roots"] = cp.nu_roots;
    return j.dump(2) + "\n";
}

std::vector<VerifyCheck> run_verify() {
    std::vector<VerifyCheck> checks;
    const VortexStrengths s = preset_strengths();
    std::ostringstream detail;

    {
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            for (int jj = 0; jj <= 40; ++jj) {
                const double x1 = 0.05 + 0.45 * i / 40.0;
                const double x3 = 0.05 + 0.45 * jj / 40.0;
                const double x2 = 1.0 - x1 - x3;
                if (x2 <= 0.0 || x2 > 0.5 || x1 > 0.5 || x3 > 0.5) continue;
                const TrilinearPoint x{x1, x2, x3, +1};
                const TrilinearPoint back =
                    from_alpha_beta(to_alpha_beta(x), x.gamma);
                worst = std::max({worst, std::abs(back.x1 - x1),
                                  std::abs(back.x2 - x2), std::abs(back.x3 - x3)});
            }
        }
        detail.str("");
        detail << "max round-trip error " << worst;
        checks.push_back({"alpha-beta round trip", worst < 1e-14, detail.str()});
    }
    {
        double worst_y = 0.0, worst_h = 0.0;
        const double x1_lo = curve_x1_min(s);
        for (int i = 0; i < 512; ++i) {
            const double x1 = x1_lo + (0.5 - x1_lo) * i / 511.0;
            const TrilinearPoint x = curve_point(x1, s);
            worst_y = std::max(worst_y, std::abs(cal_y(x, s)));
            worst_h = std::max(worst_h,
                               std::abs(hyperbola_residual(to_alpha_beta(x), s)));
        }
        detail.str("");
        detail << "max |calY| " << worst_y << ", max hyperbola residual "
               << worst_h;
        checks.push_back(
            {"critical curve sampling", worst_y < 1e-10 && worst_h < 1e-10,
             detail.str()});
    }
    {
        InitialSpec spec{{0.18195, 0.44396, 0.37409}, +1, s};
        const VortexState st = positions_from_config(spec);
        IntegratorSettings settings;
        const OracleComparison cmp = oracle_compare(st, s, settings, 0.5);
        detail.str("");
        detail << "max |R_j| discrepancy " << cmp.max_r_discrepancy
               << " over horizon " << cmp.horizon_used;
        checks.push_back({"three-formulation equivalence",
                          !cmp.shortened && cmp.max_r_discrepancy < 1e-8,
                          detail.str()});
    }
    {
        RunConfig cfg;
        cfg.run_id = "verify-r-";
        cfg.strengths = s;
        cfg.start.sides = {{0.18195, 0.44396, 0.37409}};
        cfg.settings.t_max = 50.0;
        const RunResult res = run_simulation(cfg);
        detail.str("");
        detail << "ibar rel drift " << res.record.drift.ibar_rel
               << ", kirchhoff abs " << res.record.drift.kirchhoff_abs
               << ", polar abs " << res.record.drift.polar_abs;
        checks.push_back({"invariant conservation",
                          res.record.drift.ibar_rel < 1e-6 &&
                              res.record.drift.kirchhoff_abs < 1e-10 &&
                              res.record.drift.polar_abs < 1e-10,
                          detail.str()});
    }
    {
        const TrilinearPoint xc = curve_point(0.4, s);
        const SimilarSolution sol = similar_solution(xc, s, +1, 1.0);
        RunConfig cfg;
        cfg.run_id = "verify-on-curve";
        cfg.strengths = s;
        cfg.start.on_curve_x1 = 0.4;
        cfg.settings.t_max = 0.1;
        const RunResult res = run_simulation(cfg);
        double max_dx = 0.0, max_p_rel = 0.0;
        for (const TrajectorySample& sm : res.record.samples) {
            max_dx = std::max({max_dx, std::abs(sm.x.x1 - xc.x1),
                               std::abs(sm.x.x2 - xc.x2),
                               std::abs(sm.x.x3 - xc.x3)});
            const double p2 = 1.0 + sol.p_squared_rate * sm.t;
            max_p_rel = std::max(
                max_p_rel, std::abs(sm.p * sm.p - p2) / (sm.p * sm.p));
        }
        detail.str("");
        detail << "max |x - x0| " << max_dx << ", max rel p^2 deviation "
               << max_p_rel;
        checks.push_back({"self-similar solution law",
                          max_dx < 1e-6 && max_p_rel < 1e-6, detail.str()});
    }
    return checks;
}

}  // namespace trivortex
