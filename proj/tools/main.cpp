#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "trivortex/simulation.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnconverged = 2;
constexpr int kExitCollision = 3;
constexpr int kExitUsage = 64;
constexpr int kExitBadData = 65;

int run_simulate(const trivortex::RunConfig& cfg, const std::string& out_csv,
                 const std::string& out_summary, int samples) {
    using namespace trivortex;
    const RunResult res = run_simulation(cfg);

    if (!out_csv.empty()) {
        std::ofstream os(out_csv);
        if (!os) {
            std::cerr << "cannot open " << out_csv << "\n";
            return kExitBadData;
        }
        write_trajectory_csv(os, res.record, cfg.strengths, samples);
    }
    if (!out_summary.empty()) {
        std::ofstream os(out_summary);
        if (!os) {
            std::cerr << "cannot open " << out_summary << "\n";
            return kExitBadData;
        }
        os << summary_to_json(res.summary);
    }

    const RunSummary& sm = res.summary;
    std::printf("run %s: predicted type %s, observed type %s\n",
                sm.run_id.c_str(), to_string(sm.prediction.type),
                to_string(sm.report.observed_type));
    std::printf("  converged: %s (t_conv = %g), termination: %s\n",
                sm.report.converged ? "yes" : "no", sm.report.t_conv,
                to_string(sm.termination));
    std::printf("  crossings: %zu, calY extrema: %d, final branch: %s\n",
                sm.report.crossings.size(), sm.report.caly_extrema_count,
                to_string(sm.report.final_branch));
    std::printf("  ibar drift: %.3e (rel), kirchhoff drift: %.3e (abs)\n",
                sm.ibar_rel_drift, sm.kirchhoff_abs_drift);

    if (sm.termination == trivortex::Termination::CollisionAbort) {
        return kExitCollision;
    }
    return sm.report.converged ? kExitOk : kExitUnconverged;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "trivortex: planar motion of three point vortices, parabolic case "
        "(K = 0)"};
    app.require_subcommand(1);

    double k1 = 2.0, k2 = 1.0;
    const auto add_strength_flags = [&](CLI::App* cmd) {
        cmd->add_option("--k1", k1, "strength of vortex 1 (k1 >= k2)")
            ->capture_default_str();
        cmd->add_option("--k2", k2, "strength of vortex 2 (k2 > 0)")
            ->capture_default_str();
    };

    // simulate
    auto* sim = app.add_subcommand(
        "simulate", "integrate one trajectory and classify its departure");
    add_strength_flags(sim);
    std::vector<double> sides;
    double ibar_target = 0.0, caly_target = 0.0, on_curve_x1 = 0.0;
    int gamma = +1, samples = 0;
    std::string out_csv, out_summary;
    trivortex::IntegratorSettings settings;
    settings.t_max = 200.0;
    auto* opt_r = sim->add_option("--R", sides,
                                  "initial sides R1,R2,R3 (unit perimeter)")
                      ->delimiter(',')
                      ->expected(3);
    auto* opt_ibar =
        sim->add_option("--ibar", ibar_target, "target invariant of the start");
    auto* opt_caly = sim->add_option(
        "--caly", caly_target, "target calY offset from the critical curve");
    auto* opt_oncurve = sim->add_option("--on-curve-x1", on_curve_x1,
                                        "start exactly on the curve at this x1");
    opt_r->excludes(opt_ibar)->excludes(opt_caly)->excludes(opt_oncurve);
    opt_ibar->excludes(opt_oncurve);
    opt_caly->needs(opt_ibar);
    sim->add_option("--gamma", gamma, "initial orientation (+1 or -1)")
        ->check(CLI::IsMember({-1, 1}))
        ->capture_default_str();
    sim->add_option("--t-max", settings.t_max, "integration horizon")
        ->capture_default_str();
    sim->add_option("--rel-tol", settings.rel_tol, "relative tolerance")
        ->capture_default_str();
    sim->add_option("--abs-tol", settings.abs_tol, "absolute tolerance")
        ->capture_default_str();
    sim->add_option("--max-step", settings.max_step, "maximum step size")
        ->capture_default_str();
    sim->add_option("--out", out_csv, "trajectory CSV path");
    sim->add_option("--summary", out_summary, "run summary JSON path");
    sim->add_option("--samples", samples,
                    "resample the CSV to this many uniform times");

    // curve
    auto* curve = app.add_subcommand("curve", "sample the critical curve");
    add_strength_flags(curve);
    int curve_n = 512;
    std::string curve_out;
    curve->add_option("--n", curve_n, "number of samples")->capture_default_str();
    curve->add_option("--out", curve_out, "output CSV path (default stdout)");

    // points
    auto* points =
        app.add_subcommand("points", "critical points and strip constants");
    add_strength_flags(points);
    std::string points_out;
    points->add_option("--out", points_out, "output JSON path (default stdout)");

    // table1
    auto* table1 = app.add_subcommand(
        "table1", "reproduce the four reference runs and compare");
    double table1_tmax = 200.0;
    table1->add_option("--t-max", table1_tmax, "integration horizon per run")
        ->capture_default_str();

    // verify
    app.add_subcommand("verify",
                       "run the oracle-equivalence and invariant checks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        const trivortex::VortexStrengths s =
            trivortex::parabolic_strengths(k1, k2);

        if (sim->parsed()) {
            trivortex::RunConfig cfg;
            cfg.run_id = "simulate";
            cfg.strengths = s;
            cfg.start.gamma = gamma;
            if (*opt_r) {
                cfg.start.sides = {{sides[0], sides[1], sides[2]}};
            } else if (*opt_oncurve) {
                cfg.start.on_curve_x1 = on_curve_x1;
            } else if (*opt_ibar) {
                cfg.start.offset = {ibar_target, caly_target};
            } else {
                std::cerr << "simulate needs one of --R, --ibar, --on-curve-x1\n";
                return kExitUsage;
            }
            cfg.settings = settings;
            cfg.settle_tol = 1e-6;
            return run_simulate(cfg, out_csv, out_summary, samples);
        }

        if (curve->parsed()) {
            if (!curve_out.empty()) {
                std::ofstream os(curve_out);
                if (!os) {
                    std::cerr << "cannot open " << curve_out << "\n";
                    return kExitBadData;
                }
                trivortex::write_curve_csv(os, s, curve_n);
            } else {
                trivortex::write_curve_csv(std::cout, s, curve_n);
            }
            return kExitOk;
        }

        if (points->parsed()) {
            const std::string json = trivortex::critical_points_to_json(s);
            if (!points_out.empty()) {
                std::ofstream os(points_out);
                if (!os) {
                    std::cerr << "cannot open " << points_out << "\n";
                    return kExitBadData;
                }
                os << json;
            } else {
                std::cout << json;
            }
            return kExitOk;
        }

        if (table1->parsed()) {
            const trivortex::Table1Report rep = trivortex::run_table1(table1_tmax);
            std::printf("%-4s %12s %12s %10s %10s %9s %9s  %s\n", "case",
                        "calY", "calY(pub)", "ibar", "ibar(pub)", "type",
                        "type(pub)", "result");
            for (const auto& row : rep.rows) {
                std::printf("%-4s %12.5f %12.5f %10.5f %10.5f %9s %9s  %s\n",
                            row.name.c_str(), row.computed_caly,
                            row.published_caly, row.computed_ibar,
                            row.published_ibar, to_string(row.observed_type),
                            to_string(row.published_type),
                            row.pass ? "PASS" : "FAIL");
            }
            std::printf("table1: %s\n", rep.all_pass ? "PASS" : "FAIL");
            return rep.all_pass ? kExitOk : 1;
        }

        // verify
        const auto checks = trivortex::run_verify();
        bool all = true;
        for (const auto& c : checks) {
            std::printf("[%s] %s: %s\n", c.pass ? "PASS" : "FAIL",
                        c.name.c_str(), c.detail.c_str());
            all = all && c.pass;
        }
        std::printf("verify: %s\n", all ? "PASS" : "FAIL");
        return all ? kExitOk : 1;
    } catch (const trivortex::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitBadData;
    }
}
