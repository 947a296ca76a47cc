#pragma once

#include <vector>

#include "trivortex/core.hpp"
#include "trivortex/dynamics.hpp"
#include "trivortex/geometry.hpp"

namespace trivortex {

enum class TrajectoryType { I, II, III, Periodic, OnCurve };

enum class PredictionBasis {
    BelowCurve,
    AboveCurveS4Plus,  // ibar in (i4, 1)
    AboveCurveS5Plus,  // ibar in (i5, i4)
    OutsideStrip,
    OnCurve,
};

/// Branch of the critical curve, by side of the plane P and sign of x1 - x2.
/// Q4E and E*Q5 are expanding (stable); EQ5 and E*Q4 contracting (unstable).
enum class Branch { Q4E, EQ5, EStarQ5, EStarQ4 };

const char* to_string(TrajectoryType t);
const char* to_string(PredictionBasis b);
const char* to_string(Branch b);

/// Branch label for a point by its side (gamma) and sign of x1 - x2.
Branch branch_of(const TrilinearPoint& x, int gamma);

bool is_expanding(Branch b);

struct TypePrediction {
    TrajectoryType type = TrajectoryType::OnCurve;
    PredictionBasis basis = PredictionBasis::OnCurve;
    Branch branch_start = Branch::EQ5;
};

/// Departure type from the initial point alone. gamma = +1: calY < 0 gives
/// type I, calY > 0 gives II or III split at ibar = i4; ibar outside
/// (i5, 1) is periodic; |calY| <= 1e-12 reports on-curve.
TypePrediction predict(const TrilinearPoint& x0, const VortexStrengths& s);

struct ConvergenceReport {
    bool converged = false;
    double t_conv = 0.0;
    TrilinearPoint final_point;
    Branch final_branch = Branch::EQ5;
    std::vector<EdgeCrossing> crossings;
    int caly_extrema_count = 0;
    TrajectoryType observed_type = TrajectoryType::OnCurve;
    double max_coord_distance = 0.0;  // max_j |x_j(final) - x_j(0)|
};

/// Realized outcome of an integrated run. Converged when the trailing ten
/// accepted samples keep |calY| < tol_conv and nonincreasing; the observed
/// type follows from (sign calY(0), crossing count).
ConvergenceReport observe(const TrajectoryRecord& record,
                          const VortexStrengths& s, double tol_conv = 1e-4);

enum class Similarity { SimilarWithFlip, Dissimilar };

const char* to_string(Similarity s);

/// similar-with-flip when max_j |x_initial_j - x_final_j| < threshold and
/// the orientations differ.
Similarity similarity_check(const TrilinearPoint& x_initial,
                            const TrilinearPoint& x_final,
                            double threshold = 0.02);

}  // namespace trivortex
