#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "trivortex/classify.hpp"
#include "trivortex/dynamics.hpp"
#include "trivortex/initcond.hpp"

namespace trivortex {

/// How to build the initial configuration of a run: explicit sides, an
/// (ibar, calY) offset from the critical curve, or a point exactly on it.
struct StartSpec {
    std::optional<std::array<double, 3>> sides;
    std::optional<std::pair<double, double>> offset;  // (ibar, calY)
    std::optional<double> on_curve_x1;
    int gamma = +1;
};

struct RunConfig {
    std::string run_id = "run";
    VortexStrengths strengths;
    StartSpec start;
    IntegratorSettings settings;
    double settle_tol = 0.0;  // forwarded to IntegrationEvents
    double tol_conv = 1e-4;   // forwarded to observe()
};

struct RunSummary {
    std::string run_id;
    VortexStrengths strengths;
    InitialSpec initial;
    TypePrediction prediction;
    ConvergenceReport report;
    double ibar_rel_drift = 0.0;
    double kirchhoff_abs_drift = 0.0;
    Termination termination = Termination::ReachedTMax;
    std::int64_t wall_time_ms = 0;
    bool valid = false;  // ibar_rel_drift < 1e-3
};

struct RunResult {
    TrajectoryRecord record;
    RunSummary summary;
};

/// Resolve the start spec into an InitialSpec (unit perimeter sides).
InitialSpec resolve_start(const StartSpec& start, const VortexStrengths& s);

RunResult run_simulation(const RunConfig& cfg);

/// Table 1 rows of the reference experiment: the four perturbed starts near
/// the contracting branch, with the published values they must reproduce.
struct Preset {
    std::string name;
    std::array<double, 3> sides;
    double published_caly = 0.0;
    double published_ibar = 0.0;
    TrajectoryType published_type = TrajectoryType::I;
    int published_crossings = 0;
    int published_extrema = 0;
};

const std::array<Preset, 4>& table1_presets();

/// k = (2, 1, -2/3), the strengths of every preset.
VortexStrengths preset_strengths();

struct Table1Row {
    std::string name;
    double computed_caly = 0.0, published_caly = 0.0;
    double computed_ibar = 0.0, published_ibar = 0.0;
    TrajectoryType observed_type = TrajectoryType::I;
    TrajectoryType published_type = TrajectoryType::I;
    bool pass = false;
};

struct Table1Report {
    std::array<Table1Row, 4> rows;
    bool all_pass = false;
};

/// Runs the four presets (values and full trajectories) and compares
/// against the published numbers at +-1e-4.
Table1Report run_table1(double t_max = 200.0);

/// Trajectory CSV with fixed column order, 17 significant digits. When
/// samples > 0 the series is interpolated to that many uniform times.
void write_trajectory_csv(std::ostream& os, const TrajectoryRecord& record,
                          const VortexStrengths& s, int samples = 0);

/// Critical-curve CSV: x1,x2,x3,alpha,beta sampled uniformly in x1.
void write_curve_csv(std::ostream& os, const VortexStrengths& s, int n = 512);

std::string summary_to_json(const RunSummary& summary);
std::string critical_points_to_json(const VortexStrengths& s);

struct VerifyCheck {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Oracle-equivalence and invariant property suite used by the CLI.
std::vector<VerifyCheck> run_verify();

}  // namespace trivortex
