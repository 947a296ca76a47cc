#include <doctest.h>

#include <cmath>

#include "trivortex/classify.hpp"
#include "trivortex/simulation.hpp"

using namespace trivortex;

namespace {

const VortexStrengths kS21 = parabolic_strengths(2.0, 1.0);

RunResult run_preset(const std::array<double, 3>& sides, double t_max = 200.0) {
    RunConfig cfg;
    cfg.run_id = "test";
    cfg.strengths = kS21;
    cfg.start.sides = sides;
    cfg.settings.t_max = t_max;
    cfg.settle_tol = 1e-6;
    return run_simulation(cfg);
}

RunResult run_offset(double ib, double caly, double t_max = 100.0) {
    RunConfig cfg;
    cfg.run_id = "grid";
    cfg.strengths = kS21;
    cfg.start.offset = {ib, caly};
    cfg.settings.t_max = t_max;
    cfg.settle_tol = 1e-5;
    return run_simulation(cfg);
}

}  // namespace

TEST_CASE("predict classifies the published starts") {
    const TypePrediction rm =
        predict(TrilinearPoint{0.18195, 0.44396, 0.37409, +1}, kS21);
    CHECK(rm.type == TrajectoryType::I);
    CHECK(rm.basis == PredictionBasis::BelowCurve);
    CHECK(rm.branch_start == Branch::EQ5);

    const TypePrediction rp =
        predict(TrilinearPoint{0.19108, 0.43424, 0.37468, +1}, kS21);
    CHECK(rp.type == TrajectoryType::II);
    CHECK(rp.basis == PredictionBasis::AboveCurveS4Plus);

    const TypePrediction up =
        predict(TrilinearPoint{0.10839, 0.48643, 0.40518, +1}, kS21);
    CHECK(up.type == TrajectoryType::III);
    CHECK(up.basis == PredictionBasis::AboveCurveS5Plus);

    const TypePrediction um =
        predict(TrilinearPoint{0.10442, 0.49225, 0.40333, +1}, kS21);
    CHECK(um.type == TrajectoryType::I);
}

TEST_CASE("predict: on-curve, periodic and mirrored starts") {
    const TrilinearPoint xc = curve_point(0.4, kS21);
    CHECK(predict(xc, kS21).type == TrajectoryType::OnCurve);

    // ibar > 1: periodic orbit around Q3
    const TypePrediction periodic =
        predict(TrilinearPoint{0.45, 0.35, 0.20, +1}, kS21);
    CHECK(periodic.type == TrajectoryType::Periodic);
    CHECK(periodic.basis == PredictionBasis::OutsideStrip);

    // negative side: below the contracting branch is type I, above type II
    TrilinearPoint below{0.18195, 0.44396, 0.37409, -1};
    CHECK(predict(below, kS21).type == TrajectoryType::I);
    TrilinearPoint above{0.19108, 0.43424, 0.37468, -1};
    CHECK(predict(above, kS21).type == TrajectoryType::II);

    CHECK_THROWS_AS(predict(xc, make_strengths(1, 1, 1)), UnsupportedCaseError);
}

TEST_CASE("observe: the four reference runs") {
    const RunResult rm = run_preset({0.18195, 0.44396, 0.37409});
    CHECK(rm.summary.report.observed_type == TrajectoryType::I);
    CHECK(rm.summary.report.converged);
    CHECK(rm.summary.report.crossings.size() == 1);
    CHECK(rm.summary.report.crossings[0].edge == Edge::Q3Q1);
    CHECK(rm.summary.report.caly_extrema_count == 1);
    CHECK(rm.summary.report.final_point.gamma == -1);
    CHECK(rm.summary.report.final_branch == Branch::EStarQ5);
    CHECK(is_expanding(rm.summary.report.final_branch));
    CHECK(similarity_check(TrilinearPoint{0.18195, 0.44396, 0.37409, +1},
                           rm.summary.report.final_point) ==
          Similarity::SimilarWithFlip);

    const RunResult rp = run_preset({0.19108, 0.43424, 0.37468});
    CHECK(rp.summary.report.observed_type == TrajectoryType::II);
    CHECK(rp.summary.report.converged);
    CHECK(rp.summary.report.crossings.empty());
    CHECK(rp.summary.report.caly_extrema_count == 1);
    CHECK(rp.summary.report.final_point.gamma == +1);
    CHECK(rp.summary.report.final_branch == Branch::Q4E);
    CHECK(similarity_check(TrilinearPoint{0.19108, 0.43424, 0.37468, +1},
                           rp.summary.report.final_point) ==
          Similarity::Dissimilar);

    const RunResult um = run_preset({0.10442, 0.49225, 0.40333});
    CHECK(um.summary.report.observed_type == TrajectoryType::I);
    CHECK(um.summary.report.crossings.size() == 1);
    CHECK(um.summary.report.caly_extrema_count == 1);

    const RunResult up = run_preset({0.10839, 0.48643, 0.40518});
    CHECK(up.summary.report.observed_type == TrajectoryType::III);
    CHECK(up.summary.report.converged);
    REQUIRE(up.summary.report.crossings.size() == 1);
    CHECK(up.summary.report.crossings[0].edge == Edge::Q2Q3);
    CHECK(up.summary.report.caly_extrema_count == 3);
    CHECK(up.summary.report.final_point.gamma == -1);
    // the type-III endpoint image returns near the starting point
    CHECK(up.summary.report.max_coord_distance < 0.02);
}

TEST_CASE("predict and observe agree on the offset grid") {
    for (double ib : {0.40, 0.55, 0.70, 0.85, 0.95}) {
        for (double caly : {-0.005, 0.005}) {
            const TrilinearPoint x0 = point_at_offset(ib, caly, +1, kS21);
            const TypePrediction pred = predict(x0, kS21);
            if (pred.type == TrajectoryType::Periodic) continue;
            const RunResult res = run_offset(ib, caly);
            INFO("ibar ", ib, " caly ", caly);
            CHECK(res.summary.report.observed_type == pred.type);
            CHECK(res.summary.report.converged);
            CHECK(res.record.caly_sign_flips == 0);

            // type I/III cross exactly once; type II never
            const std::size_t crossings = res.summary.report.crossings.size();
            if (pred.type == TrajectoryType::II) {
                CHECK(crossings == 0);
            } else {
                CHECK(crossings == 1);
            }
            // converged on an expanding branch
            const TrilinearPoint& xf = res.summary.report.final_point;
            CHECK((xf.x1 - xf.x2) * xf.gamma > 0.0);
            CHECK(is_expanding(res.summary.report.final_branch));
        }
    }
}

TEST_CASE("similarity_check requires both closeness and a flip") {
    const TrilinearPoint a{0.2, 0.45, 0.35, +1};
    TrilinearPoint b = a;
    b.gamma = -1;
    CHECK(similarity_check(a, b) == Similarity::SimilarWithFlip);
    CHECK(similarity_check(a, a) == Similarity::Dissimilar);  // no flip
    TrilinearPoint far{0.30, 0.35, 0.35, -1};
    CHECK(similarity_check(a, far) == Similarity::Dissimilar);
    CHECK(similarity_check(a, far, 0.2) == Similarity::SimilarWithFlip);
}
