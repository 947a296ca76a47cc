#include "trivortex/classify.hpp"

#include <algorithm>
#include <cmath>

namespace trivortex {

const char* to_string(TrajectoryType t) {
    switch (t) {
        case TrajectoryType::I: return "I";
        case TrajectoryType::II: return "II";
        case TrajectoryType::III: return "III";
        case TrajectoryType::Periodic: return "periodic";
        case TrajectoryType::OnCurve: return "on-curve";
    }
    return "?";
}

const char* to_string(PredictionBasis b) {
    switch (b) {
        case PredictionBasis::BelowCurve: return "below-curve";
        case PredictionBasis::AboveCurveS4Plus: return "above-curve-S4plus";
        case PredictionBasis::AboveCurveS5Plus: return "above-curve-S5plus";
        case PredictionBasis::OutsideStrip: return "outside-strip";
        case PredictionBasis::OnCurve: return "on-curve";
    }
    return "?";
}

const char* to_string(Branch b) {
    switch (b) {
        case Branch::Q4E: return "Q4E";
        case Branch::EQ5: return "EQ5";
        case Branch::EStarQ5: return "E*Q5";
        case Branch::EStarQ4: return "E*Q4";
    }
    return "?";
}

const char* to_string(Similarity s) {
    return s == Similarity::SimilarWithFlip ? "similar-with-flip" : "dissimilar";
}

Branch branch_of(const TrilinearPoint& x, int gamma) {
    if (gamma >= 0) {
        return x.x1 > x.x2 ? Branch::Q4E : Branch::EQ5;
    }
    return x.x1 > x.x2 ? Branch::EStarQ4 : Branch::EStarQ5;
}

bool is_expanding(Branch b) {
    return b == Branch::Q4E || b == Branch::EStarQ5;
}

TypePrediction predict(const TrilinearPoint& x0, const VortexStrengths& s) {
    if (!is_parabolic(s)) {
        throw UnsupportedCaseError("predict requires parabolic strengths");
    }
    const double y = cal_y(x0, s);
    const int gamma = x0.gamma >= 0 ? +1 : -1;

    TypePrediction pred;
    pred.branch_start = branch_of(x0, gamma);
    if (std::abs(y) <= 1e-12) {
        pred.type = TrajectoryType::OnCurve;
        pred.basis = PredictionBasis::OnCurve;
        return pred;
    }

    const StripBounds strip = strip_bounds(s);
    const double ib = ibar(x0, s);
    if (!(ib > strip.ibar_upper) || !(ib < strip.ibar_lower)) {
        pred.type = TrajectoryType::Periodic;
        pred.basis = PredictionBasis::OutsideStrip;
        return pred;
    }
    if (y < 0.0) {
        pred.type = TrajectoryType::I;
        pred.basis = PredictionBasis::BelowCurve;
        return pred;
    }
    pred.basis = ib > strip.i4 ? PredictionBasis::AboveCurveS4Plus
                               : PredictionBasis::AboveCurveS5Plus;
    if (gamma > 0) {
        pred.type = ib > strip.i4 ? TrajectoryType::II : TrajectoryType::III;
    } else {
        // Departures from the negative side come in two kinds only
        // (ibar4 >= ibar5): above the contracting branch is always type II.
        pred.type = TrajectoryType::II;
    }
    return pred;
}

ConvergenceReport observe(const TrajectoryRecord& record,
                          const VortexStrengths& s, double tol_conv) {
    if (record.samples.empty()) {
        throw Error("observe: empty trajectory record");
    }
    ConvergenceReport rep;
    const TrajectorySample& last = record.samples.back();
    rep.final_point = last.x;
    rep.final_branch = branch_of(last.x, last.config.gamma);
    rep.crossings = record.crossings;

    // Trailing-window convergence: the last ten accepted samples keep
    // |calY| < tol_conv and nonincreasing (up to roundoff slack).
    const std::size_t n = record.samples.size();
    const std::size_t window = 10;
    if (n >= window) {
        bool ok = true;
        for (std::size_t i = n - window; i < n && ok; ++i) {
            ok = std::abs(record.samples[i].caly) < tol_conv;
            if (ok && i + 1 < n) {
                ok = std::abs(record.samples[i + 1].caly) <=
                     std::abs(record.samples[i].caly) * (1.0 + 1e-9);
            }
        }
        rep.converged = ok;
    }
    if (rep.converged) {
        // Earliest time from which |calY| stays below tol_conv.
        std::size_t first = n - 1;
        while (first > 0 && std::abs(record.samples[first - 1].caly) < tol_conv) {
            --first;
        }
        rep.t_conv = record.samples[first].t;
    }

    // Extrema of calY(t): sign changes of the discrete derivative.
    int flips = 0;
    int last_dir = 0;
    for (std::size_t i = 1; i < n; ++i) {
        const double d = record.samples[i].caly - record.samples[i - 1].caly;
        if (std::abs(d) <= 1e-14) continue;
        const int dir = d > 0.0 ? +1 : -1;
        if (last_dir != 0 && dir != last_dir) ++flips;
        last_dir = dir;
    }
    rep.caly_extrema_count = flips;

    const double caly0 = record.samples.front().caly;
    const std::size_t ncross = record.crossings.size();
    if (caly0 < 0.0) {
        rep.observed_type = TrajectoryType::I;
    } else if (ncross == 0) {
        rep.observed_type = TrajectoryType::II;
    } else {
        rep.observed_type = TrajectoryType::III;
    }

    const TrilinearPoint& x0 = record.samples.front().x;
    rep.max_coord_distance =
        std::max({std::abs(last.x.x1 - x0.x1), std::abs(last.x.x2 - x0.x2),
                  std::abs(last.x.x3 - x0.x3)});
    return rep;
}

Similarity similarity_check(const TrilinearPoint& x_initial,
                            const TrilinearPoint& x_final, double threshold) {
    const double dist = std::max({std::abs(x_initial.x1 - x_final.x1),
                                  std::abs(x_initial.x2 - x_final.x2),
                                  std::abs(x_initial.x3 - x_final.x3)});
    if (dist < threshold && x_initial.gamma != x_final.gamma) {
        return Similarity::SimilarWithFlip;
    }
    return Similarity::Dissimilar;
}

}  // namespace trivortex
