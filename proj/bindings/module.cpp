#include <pybind11/complex.h>
#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "trivortex/simulation.hpp"

namespace py = pybind11;
using namespace trivortex;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Planar motion of three point vortices in the parabolic case";

    py::register_exception<Error>(m, "TrivortexError");

    py::enum_<KClass>(m, "KClass")
        .value("elliptic", KClass::Elliptic)
        .value("parabolic", KClass::Parabolic)
        .value("hyperbolic", KClass::Hyperbolic);

    py::class_<VortexStrengths>(m, "VortexStrengths")
        .def(py::init([](double k1, double k2, double k3) {
                 return make_strengths(k1, k2, k3);
             }),
             py::arg("k1"), py::arg("k2"), py::arg("k3"))
        .def_readonly("k1", &VortexStrengths::k1)
        .def_readonly("k2", &VortexStrengths::k2)
        .def_readonly("k3", &VortexStrengths::k3)
        .def_property_readonly("K", &VortexStrengths::K)
        .def("__repr__", [](const VortexStrengths& s) {
            return "VortexStrengths(k1=" + std::to_string(s.k1) +
                   ", k2=" + std::to_string(s.k2) +
                   ", k3=" + std::to_string(s.k3) + ")";
        });

    m.def("parabolic_strengths", &parabolic_strengths, py::arg("k1"),
          py::arg("k2"));
    m.def("classify_k", &classify_k);
    m.def("is_parabolic", &is_parabolic);

    py::class_<VortexState>(m, "VortexState")
        .def(py::init([](double t, Complex z1, Complex z2, Complex z3) {
                 return VortexState{t, z1, z2, z3};
             }),
             py::arg("t"), py::arg("z1"), py::arg("z2"), py::arg("z3"))
        .def_readwrite("t", &VortexState::t)
        .def_readwrite("z1", &VortexState::z1)
        .def_readwrite("z2", &VortexState::z2)
        .def_readwrite("z3", &VortexState::z3);

    m.def("signed_area", &signed_area);

    py::class_<Configuration>(m, "Configuration")
        .def_readonly("r1", &Configuration::r1)
        .def_readonly("r2", &Configuration::r2)
        .def_readonly("r3", &Configuration::r3)
        .def_readonly("p", &Configuration::p)
        .def_readonly("area", &Configuration::area)
        .def_readonly("gamma", &Configuration::gamma);

    m.def("configuration_of", &configuration_of);

    py::class_<Invariants>(m, "Invariants")
        .def_readonly("a", &Invariants::a)
        .def_readonly("b", &Invariants::b)
        .def_readonly("ibar", &Invariants::ibar)
        .def_readonly("vorticity_center", &Invariants::vorticity_center)
        .def_readonly("polar_moment", &Invariants::polar_moment);

    m.def("invariants_of", &invariants_of);

    py::class_<TrilinearPoint>(m, "TrilinearPoint")
        .def(py::init([](double x1, double x2, double x3, int gamma) {
                 return TrilinearPoint{x1, x2, x3, gamma};
             }),
             py::arg("x1"), py::arg("x2"), py::arg("x3"), py::arg("gamma") = 1)
        .def_readwrite("x1", &TrilinearPoint::x1)
        .def_readwrite("x2", &TrilinearPoint::x2)
        .def_readwrite("x3", &TrilinearPoint::x3)
        .def_readwrite("gamma", &TrilinearPoint::gamma)
        .def("__repr__", [](const TrilinearPoint& x) {
            return "TrilinearPoint(" + std::to_string(x.x1) + ", " +
                   std::to_string(x.x2) + ", " + std::to_string(x.x3) +
                   ", gamma=" + std::to_string(x.gamma) + ")";
        });

    py::class_<AlphaBeta>(m, "AlphaBeta")
        .def(py::init([](double a, double b) { return AlphaBeta{a, b}; }),
             py::arg("alpha"), py::arg("beta"))
        .def_readwrite("alpha", &AlphaBeta::alpha)
        .def_readwrite("beta", &AlphaBeta::beta);

    m.def("reduce", &reduce);
    m.def("to_alpha_beta", &to_alpha_beta);
    m.def("from_alpha_beta", &from_alpha_beta, py::arg("ab"), py::arg("gamma"));
    m.def("cal_y", &cal_y);
    m.def("big_y", &big_y);
    m.def("ibar", &ibar);
    m.def("curve_x1_min", &curve_x1_min);
    m.def("curve_point", &curve_point, py::arg("x1"), py::arg("s"));
    m.def("hyperbola_residual", &hyperbola_residual);

    py::class_<CriticalPoints>(m, "CriticalPoints")
        .def_readonly("e", &CriticalPoints::e)
        .def_readonly("q4", &CriticalPoints::q4)
        .def_readonly("q5", &CriticalPoints::q5)
        .def_readonly("q6", &CriticalPoints::q6)
        .def_readonly("s4", &CriticalPoints::s4)
        .def_readonly("beta4", &CriticalPoints::beta4)
        .def_readonly("beta5", &CriticalPoints::beta5)
        .def_readonly("i4", &CriticalPoints::i4)
        .def_readonly("i5", &CriticalPoints::i5)
        .def_readonly("i6", &CriticalPoints::i6)
        .def_readonly("nu_roots", &CriticalPoints::nu_roots);

    m.def("critical_points", &critical_points);
    m.def("i4_i5_ratio", &i4_i5_ratio, py::arg("k1"));
    m.def("slope_curve", &slope_curve);
    m.def("slope_trajectory", &slope_trajectory);

    py::class_<StripBounds>(m, "StripBounds")
        .def_readonly("ibar_lower", &StripBounds::ibar_lower)
        .def_readonly("ibar_upper", &StripBounds::ibar_upper)
        .def_readonly("i4", &StripBounds::i4);

    m.def("strip_bounds", &strip_bounds);

    py::class_<IntegratorSettings>(m, "IntegratorSettings")
        .def(py::init<>())
        .def_readwrite("rel_tol", &IntegratorSettings::rel_tol)
        .def_readwrite("abs_tol", &IntegratorSettings::abs_tol)
        .def_readwrite("max_step", &IntegratorSettings::max_step)
        .def_readwrite("t_max", &IntegratorSettings::t_max)
        .def_readwrite("collision_floor", &IntegratorSettings::collision_floor);

    m.def("rhs_z", &rhs_z);
    m.def("rhs_r", &rhs_r);

    py::class_<TrilinearRates>(m, "TrilinearRates")
        .def_readonly("xdot", &TrilinearRates::xdot)
        .def_readonly("p_log_rate", &TrilinearRates::p_log_rate);

    m.def("rhs_trilinear", &rhs_trilinear);

    py::enum_<Edge>(m, "Edge")
        .value("Q1Q2", Edge::Q1Q2)
        .value("Q2Q3", Edge::Q2Q3)
        .value("Q3Q1", Edge::Q3Q1);

    py::enum_<Termination>(m, "Termination")
        .value("reached_t_max", Termination::ReachedTMax)
        .value("terminal_event", Termination::TerminalEvent)
        .value("settled", Termination::Settled)
        .value("collision_abort", Termination::CollisionAbort)
        .value("stiffness_abort", Termination::StiffnessAbort);

    py::class_<EdgeCrossing>(m, "EdgeCrossing")
        .def_readonly("t_cross", &EdgeCrossing::t_cross)
        .def_readonly("edge", &EdgeCrossing::edge)
        .def_readonly("gamma_before", &EdgeCrossing::gamma_before)
        .def_readonly("gamma_after", &EdgeCrossing::gamma_after);

    py::class_<TrajectorySample>(m, "TrajectorySample")
        .def_readonly("t", &TrajectorySample::t)
        .def_readonly("state", &TrajectorySample::state)
        .def_readonly("config", &TrajectorySample::config)
        .def_readonly("x", &TrajectorySample::x)
        .def_readonly("caly", &TrajectorySample::caly)
        .def_readonly("ibar", &TrajectorySample::ibar)
        .def_readonly("p", &TrajectorySample::p);

    py::class_<InvariantDrift>(m, "InvariantDrift")
        .def_readonly("a_rel", &InvariantDrift::a_rel)
        .def_readonly("b_rel", &InvariantDrift::b_rel)
        .def_readonly("ibar_rel", &InvariantDrift::ibar_rel)
        .def_readonly("kirchhoff_abs", &InvariantDrift::kirchhoff_abs)
        .def_readonly("polar_abs", &InvariantDrift::polar_abs);

    py::class_<TrajectoryRecord>(m, "TrajectoryRecord")
        .def_readonly("samples", &TrajectoryRecord::samples)
        .def_readonly("crossings", &TrajectoryRecord::crossings)
        .def_readonly("termination", &TrajectoryRecord::termination)
        .def_readonly("drift", &TrajectoryRecord::drift)
        .def_readonly("caly_sign_flips", &TrajectoryRecord::caly_sign_flips)
        .def_readonly("t_end", &TrajectoryRecord::t_end);

    m.def(
        "integrate",
        [](const VortexState& state0, const VortexStrengths& s,
           const IntegratorSettings& settings, double settle_tol) {
            IntegrationEvents ev;
            ev.settle_tol = settle_tol;
            return integrate(state0, s, settings, ev);
        },
        py::arg("state0"), py::arg("strengths"),
        py::arg("settings") = IntegratorSettings{}, py::arg("settle_tol") = 0.0);

    py::class_<SimilarSolution>(m, "SimilarSolution")
        .def_readonly("d0", &SimilarSolution::d0)
        .def_readonly("s0", &SimilarSolution::s0)
        .def_readonly("p0", &SimilarSolution::p0)
        .def_readonly("gamma", &SimilarSolution::gamma)
        .def_readonly("p_squared_rate", &SimilarSolution::p_squared_rate)
        .def_readonly("expanding", &SimilarSolution::expanding)
        .def_readonly("coalescence_time", &SimilarSolution::coalescence_time)
        .def("p_at", &SimilarSolution::p_at, py::arg("t"));

    m.def("similar_solution", &similar_solution, py::arg("x_on_curve"),
          py::arg("strengths"), py::arg("gamma"), py::arg("p0"));

    py::class_<OracleComparison>(m, "OracleComparison")
        .def_readonly("max_r_discrepancy", &OracleComparison::max_r_discrepancy)
        .def_readonly("max_x_discrepancy", &OracleComparison::max_x_discrepancy)
        .def_readonly("horizon_used", &OracleComparison::horizon_used)
        .def_readonly("shortened", &OracleComparison::shortened)
        .def_readonly("notice", &OracleComparison::notice);

    m.def("oracle_compare", &oracle_compare, py::arg("state0"),
          py::arg("strengths"), py::arg("settings") = IntegratorSettings{},
          py::arg("horizon") = 0.5);

    py::class_<InitialSpec>(m, "InitialSpec")
        .def(py::init([](std::array<double, 3> r, int gamma,
                         const VortexStrengths& k) {
                 return InitialSpec{r, gamma, k};
             }),
             py::arg("r"), py::arg("gamma"), py::arg("k"))
        .def_readonly("r", &InitialSpec::r)
        .def_readonly("gamma", &InitialSpec::gamma)
        .def_readonly("k", &InitialSpec::k);

    m.def("positions_from_config", &positions_from_config);
    m.def("point_at_offset", &point_at_offset, py::arg("ibar_target"),
          py::arg("caly_target"), py::arg("gamma"), py::arg("strengths"));

    py::enum_<TrajectoryType>(m, "TrajectoryType")
        .value("I", TrajectoryType::I)
        .value("II", TrajectoryType::II)
        .value("III", TrajectoryType::III)
        .value("periodic", TrajectoryType::Periodic)
        .value("on_curve", TrajectoryType::OnCurve);

    py::enum_<PredictionBasis>(m, "PredictionBasis")
        .value("below_curve", PredictionBasis::BelowCurve)
        .value("above_curve_s4plus", PredictionBasis::AboveCurveS4Plus)
        .value("above_curve_s5plus", PredictionBasis::AboveCurveS5Plus)
        .value("outside_strip", PredictionBasis::OutsideStrip)
        .value("on_curve", PredictionBasis::OnCurve);

    py::enum_<Branch>(m, "Branch")
        .value("Q4E", Branch::Q4E)
        .value("EQ5", Branch::EQ5)
        .value("EStarQ5", Branch::EStarQ5)
        .value("EStarQ4", Branch::EStarQ4);

    m.def("branch_of", &branch_of);
    m.def("is_expanding", &is_expanding);

    py::class_<TypePrediction>(m, "TypePrediction")
        .def_readonly("type", &TypePrediction::type)
        .def_readonly("basis", &TypePrediction::basis)
        .def_readonly("branch_start", &TypePrediction::branch_start);

    m.def("predict", &predict);

    py::class_<ConvergenceReport>(m, "ConvergenceReport")
        .def_readonly("converged", &ConvergenceReport::converged)
        .def_readonly("t_conv", &ConvergenceReport::t_conv)
        .def_readonly("final_point", &ConvergenceReport::final_point)
        .def_readonly("final_branch", &ConvergenceReport::final_branch)
        .def_readonly("crossings", &ConvergenceReport::crossings)
        .def_readonly("caly_extrema_count", &ConvergenceReport::caly_extrema_count)
        .def_readonly("observed_type", &ConvergenceReport::observed_type)
        .def_readonly("max_coord_distance",
                      &ConvergenceReport::max_coord_distance);

    m.def("observe", &observe, py::arg("record"), py::arg("strengths"),
          py::arg("tol_conv") = 1e-4);

    py::enum_<Similarity>(m, "Similarity")
        .value("similar_with_flip", Similarity::SimilarWithFlip)
        .value("dissimilar", Similarity::Dissimilar);

    m.def("similarity_check", &similarity_check, py::arg("x_initial"),
          py::arg("x_final"), py::arg("threshold") = 0.02);

    py::class_<Preset>(m, "Preset")
        .def_readonly("name", &Preset::name)
        .def_readonly("sides", &Preset::sides)
        .def_readonly("published_caly", &Preset::published_caly)
        .def_readonly("published_ibar", &Preset::published_ibar)
        .def_readonly("published_type", &Preset::published_type);

    m.def("table1_presets",
          []() { return std::vector<Preset>(table1_presets().begin(),
                                            table1_presets().end()); });
    m.def("preset_strengths", &preset_strengths);

    m.attr("__version__") = "0.1.0";
}
