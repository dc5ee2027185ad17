#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "oscil/catalog.hpp"
#include "oscil/classify.hpp"
#include "oscil/errors.hpp"
#include "oscil/expr.hpp"
#include "oscil/integrate.hpp"
#include "oscil/json_io.hpp"
#include "oscil/ode.hpp"
#include "oscil/verify.hpp"

namespace py = pybind11;
using namespace oscil;

PYBIND11_MODULE(_core, m) {
    m.doc() = "Oscillation analysis for y'' + b(x) y' + c(x) y = f(x)";

    // exceptions; the generic runtime_error translator stays as the fallback
    py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
    py::register_exception<UnboundParameterError>(m, "UnboundParameterError", PyExc_ValueError);
    py::register_exception<SpecError>(m, "SpecError", PyExc_ValueError);
    py::register_exception<SingularPathError>(m, "SingularPathError", PyExc_RuntimeError);
    py::register_exception<NumericError>(m, "NumericError", PyExc_RuntimeError);
    py::register_exception<HypothesisError>(m, "HypothesisError", PyExc_RuntimeError);

    py::class_<Expr>(m, "Expr")
        .def("__str__", &Expr::str)
        .def("__repr__", [](const Expr& e) { return "Expr(" + e.str() + ")"; });

    m.def("parse", &parse, py::arg("text"));
    m.def("eval", py::overload_cast<const Expr&, double, const ParamBindings&>(&eval),
          py::arg("expr"), py::arg("x"), py::arg("params") = ParamBindings{});
    m.def("differentiate", &differentiate, py::arg("expr"));
    m.def("simplify", &simplify, py::arg("expr"));

    py::class_<OdeSpec>(m, "OdeSpec")
        .def(py::init([](const std::string& b, const std::string& c, const std::string& f,
                         ParamBindings params, std::vector<double> singular_points) {
                 return OdeSpec::create(b, c, f, std::move(params), std::move(singular_points));
             }),
             py::arg("b"), py::arg("c"), py::arg("f") = "0",
             py::arg("params") = ParamBindings{},
             py::arg("singular_points") = std::vector<double>{})
        .def_readonly("b", &OdeSpec::b)
        .def_readonly("c", &OdeSpec::c)
        .def_readonly("f", &OdeSpec::f)
        .def_readonly("params", &OdeSpec::params)
        .def_readonly("singular_points", &OdeSpec::singular_points)
        .def_readonly("homogeneous", &OdeSpec::homogeneous)
        .def("eval_b", &OdeSpec::eval_b, py::arg("x"))
        .def("eval_c", &OdeSpec::eval_c, py::arg("x"))
        .def("eval_f", &OdeSpec::eval_f, py::arg("x"));

    m.def("discriminant", &discriminant, py::arg("spec"));
    m.def("naive_discriminant", &naive_discriminant, py::arg("spec"));
    m.def("integrate_expr", &integrate_expr, py::arg("expr"), py::arg("params"), py::arg("a"),
          py::arg("b"), py::arg("abs_tol") = 1e-10);

    py::class_<NormalForm>(m, "NormalForm")
        .def_readonly("q", &NormalForm::q)
        .def_readonly("anchor", &NormalForm::anchor)
        .def("weight", [](const NormalForm& nf, double x) { return nf.weight(x); }, py::arg("x"));

    m.def("normal_form", &normal_form, py::arg("spec"), py::arg("anchor"));

    py::enum_<Oscillation>(m, "Oscillation")
        .value("Oscillatory", Oscillation::Oscillatory)
        .value("NonOscillatory", Oscillation::NonOscillatory)
        .value("Indeterminate", Oscillation::Indeterminate);

    py::class_<Window>(m, "Window")
        .def(py::init([](double lo, double hi, bool unbounded_left, bool unbounded_right) {
                 return Window{lo, hi, unbounded_left, unbounded_right};
             }),
             py::arg("lo"), py::arg("hi"), py::arg("unbounded_left") = false,
             py::arg("unbounded_right") = false)
        .def_readwrite("lo", &Window::lo)
        .def_readwrite("hi", &Window::hi)
        .def_readwrite("unbounded_left", &Window::unbounded_left)
        .def_readwrite("unbounded_right", &Window::unbounded_right);

    py::class_<SignPiece>(m, "SignPiece")
        .def_readonly("lo", &SignPiece::lo)
        .def_readonly("hi", &SignPiece::hi)
        .def_readonly("sign", &SignPiece::sign)
        .def_readonly("verdict", &SignPiece::verdict)
        .def_readonly("justification", &SignPiece::justification)
        .def_readonly("witness", &SignPiece::witness);

    py::class_<ClassificationReport>(m, "ClassificationReport")
        .def_readonly("b", &ClassificationReport::b)
        .def_readonly("c", &ClassificationReport::c)
        .def_readonly("f", &ClassificationReport::f)
        .def_readonly("params", &ClassificationReport::params)
        .def_readonly("window", &ClassificationReport::window)
        .def_readonly("margin", &ClassificationReport::margin)
        .def_readonly("samples", &ClassificationReport::samples)
        .def_readonly("discriminant", &ClassificationReport::discriminant)
        .def_readonly("naive_discriminant", &ClassificationReport::naive_discriminant)
        .def_readonly("pieces", &ClassificationReport::pieces)
        .def_readonly("roots", &ClassificationReport::roots)
        .def_readonly("invalid", &ClassificationReport::invalid)
        .def("json", [](const ClassificationReport& r) { return write_json(json_of(r)); });

    m.def("classify", &classify, py::arg("spec"), py::arg("window"), py::arg("margin") = 1e-6,
          py::arg("samples") = 2048);

    py::class_<InitialCondition>(m, "InitialCondition")
        .def(py::init([](double x0, double y0, double dy0) {
                 return InitialCondition{x0, y0, dy0};
             }),
             py::arg("x0"), py::arg("y0"), py::arg("dy0"))
        .def_readwrite("x0", &InitialCondition::x0)
        .def_readwrite("y0", &InitialCondition::y0)
        .def_readwrite("dy0", &InitialCondition::dy0)
        .def("trivial", &InitialCondition::trivial);

    py::class_<IntegrationStats>(m, "IntegrationStats")
        .def_readonly("rel_tol", &IntegrationStats::rel_tol)
        .def_readonly("abs_tol", &IntegrationStats::abs_tol)
        .def_readonly("accepted", &IntegrationStats::accepted)
        .def_readonly("rejected", &IntegrationStats::rejected)
        .def_readonly("truncated", &IntegrationStats::truncated)
        .def_readonly("stop_reason", &IntegrationStats::stop_reason);

    py::class_<Trajectory>(m, "Trajectory")
        .def("x_min", &Trajectory::x_min)
        .def("x_max", &Trajectory::x_max)
        .def("covers", &Trajectory::covers, py::arg("lo"), py::arg("hi"))
        .def("y", &Trajectory::y, py::arg("x"))
        .def("dy", &Trajectory::dy, py::arg("x"))
        .def("ddy", &Trajectory::ddy, py::arg("x"))
        .def("__len__", &Trajectory::size)
        .def("xs", &Trajectory::xs)
        .def("ys", &Trajectory::ys)
        .def("dys", &Trajectory::dys)
        .def("stats", &Trajectory::stats)
        .def("max_abs_y", &Trajectory::max_abs_y)
        .def("csv", [](const Trajectory& t) { return trajectory_csv(t); });

    py::class_<Zero>(m, "Zero")
        .def_readonly("x", &Zero::x)
        .def_readonly("residual", &Zero::residual)
        .def_readonly("simple", &Zero::simple)
        .def("__repr__", [](const Zero& z) { return "Zero(" + fmt_g17(z.x) + ")"; });

    py::class_<ZeroList>(m, "ZeroList")
        .def_readonly("zeros", &ZeroList::zeros)
        .def_readonly("suspects", &ZeroList::suspects)
        .def("__len__", &ZeroList::count)
        .def("json", [](const ZeroList& zl) { return write_json(json_of(zl)); });

    m.def("solve_ivp", &solve_ivp, py::arg("spec"), py::arg("ic"), py::arg("to_x"),
          py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12);
    m.def("solve_ivp_window", &solve_ivp_window, py::arg("spec"), py::arg("ic"), py::arg("lo"),
          py::arg("hi"), py::arg("rel_tol") = 1e-10, py::arg("abs_tol") = 1e-12);
    m.def("count_zeros", &count_zeros, py::arg("trajectory"), py::arg("lo"), py::arg("hi"));
    m.def("residual", &residual, py::arg("spec"), py::arg("trajectory"), py::arg("samples"));
    m.def("subtract_expr", &subtract_expr, py::arg("trajectory"), py::arg("expr"),
          py::arg("params") = ParamBindings{});

    py::class_<CheckOptions>(m, "CheckOptions")
        .def(py::init([](double rel_tol, double abs_tol, int samples, double threshold) {
                 return CheckOptions{rel_tol, abs_tol, samples, threshold};
             }),
             py::arg("rel_tol") = 1e-12, py::arg("abs_tol") = 1e-12, py::arg("samples") = 512,
             py::arg("threshold") = 1e-6)
        .def_readwrite("rel_tol", &CheckOptions::rel_tol)
        .def_readwrite("abs_tol", &CheckOptions::abs_tol)
        .def_readwrite("samples", &CheckOptions::samples)
        .def_readwrite("threshold", &CheckOptions::threshold);

    py::class_<GapCheck>(m, "GapCheck")
        .def_readonly("lo", &GapCheck::lo)
        .def_readonly("hi", &GapCheck::hi)
        .def_readonly("interior", &GapCheck::interior)
        .def_readonly("pass_", &GapCheck::pass);

    py::class_<SturmCheckResult>(m, "SturmCheckResult")
        .def_readonly("min_gap", &SturmCheckResult::min_gap)
        .def_readonly("zeros_fast", &SturmCheckResult::zeros_fast)
        .def_readonly("zeros_slow", &SturmCheckResult::zeros_slow)
        .def_readonly("gaps", &SturmCheckResult::gaps)
        .def_readonly("shared", &SturmCheckResult::shared)
        .def_readonly("pass_rate", &SturmCheckResult::pass_rate)
        .def_readonly("pass_", &SturmCheckResult::pass)
        .def("json", [](const SturmCheckResult& r) { return write_json(json_of(r)); });

    py::class_<WronskianCheckResult>(m, "WronskianCheckResult")
        .def_readonly("max_residual", &WronskianCheckResult::max_residual)
        .def_readonly("at_x", &WronskianCheckResult::at_x)
        .def_readonly("w_min", &WronskianCheckResult::w_min)
        .def_readonly("w_max", &WronskianCheckResult::w_max)
        .def_readonly("monotone_violations", &WronskianCheckResult::monotone_violations)
        .def_readonly("monotone_ok", &WronskianCheckResult::monotone_ok)
        .def_readonly("pass_", &WronskianCheckResult::pass)
        .def("json", [](const WronskianCheckResult& r) { return write_json(json_of(r)); });

    py::class_<RiccatiCheckResult>(m, "RiccatiCheckResult")
        .def_readonly("max_residual", &RiccatiCheckResult::max_residual)
        .def_readonly("at_x", &RiccatiCheckResult::at_x)
        .def_readonly("cutoff", &RiccatiCheckResult::cutoff)
        .def_readonly("m_samples", &RiccatiCheckResult::m_samples)
        .def_readonly("skipped", &RiccatiCheckResult::skipped)
        .def_readonly("pass_", &RiccatiCheckResult::pass)
        .def("json", [](const RiccatiCheckResult& r) { return write_json(json_of(r)); });

    py::class_<NormalFormCheckResult>(m, "NormalFormCheckResult")
        .def_readonly("max_deviation", &NormalFormCheckResult::max_deviation)
        .def_readonly("scale", &NormalFormCheckResult::scale)
        .def_readonly("zeros_psi", &NormalFormCheckResult::zeros_psi)
        .def_readonly("zeros_u", &NormalFormCheckResult::zeros_u)
        .def_readonly("zero_sets_match", &NormalFormCheckResult::zero_sets_match)
        .def_readonly("max_zero_gap", &NormalFormCheckResult::max_zero_gap)
        .def_readonly("pass_", &NormalFormCheckResult::pass)
        .def("json", [](const NormalFormCheckResult& r) { return write_json(json_of(r)); });

    py::class_<OscillatesAboutResult>(m, "OscillatesAboutResult")
        .def_readonly("particular_residual", &OscillatesAboutResult::particular_residual)
        .def_readonly("zeros", &OscillatesAboutResult::zeros)
        .def("json", [](const OscillatesAboutResult& r) { return write_json(json_of(r)); });

    m.def("check_sturm", &check_sturm, py::arg("q1"), py::arg("q2"), py::arg("window"),
          py::arg("ic1"), py::arg("ic2"), py::arg("params") = ParamBindings{},
          py::arg("options") = CheckOptions{});
    m.def("check_wronskian", &check_wronskian, py::arg("q1"), py::arg("q2"), py::arg("window"),
          py::arg("ic1"), py::arg("ic2"), py::arg("params") = ParamBindings{},
          py::arg("options") = CheckOptions{});
    m.def("check_riccati", &check_riccati, py::arg("spec"), py::arg("trajectory"),
          py::arg("cutoff") = 1e-3, py::arg("samples") = 512, py::arg("threshold") = 1e-4);
    m.def("check_normal_form", &check_normal_form, py::arg("spec"), py::arg("ic"),
          py::arg("window"), py::arg("tol") = 1e-6, py::arg("options") = CheckOptions{});
    m.def("oscillates_about", &oscillates_about, py::arg("spec"), py::arg("particular"),
          py::arg("ic"), py::arg("window"), py::arg("gate") = 1e-8,
          py::arg("options") = CheckOptions{});

    py::class_<CatalogEntry>(m, "CatalogEntry")
        .def_readonly("name", &CatalogEntry::name)
        .def_readonly("note", &CatalogEntry::note)
        .def_readonly("b", &CatalogEntry::b)
        .def_readonly("c", &CatalogEntry::c)
        .def_readonly("f", &CatalogEntry::f)
        .def_readonly("defaults", &CatalogEntry::defaults)
        .def_readonly("singular_points", &CatalogEntry::singular_points)
        .def_readonly("window", &CatalogEntry::window)
        .def_readonly("boundaries", &CatalogEntry::boundaries)
        .def_readonly("labels", &CatalogEntry::labels)
        .def_readonly("exact", &CatalogEntry::exact)
        .def_readonly("particular", &CatalogEntry::particular)
        .def_readonly("ic", &CatalogEntry::ic)
        .def("json", [](const CatalogEntry& e) { return write_json(json_of(e)); });

    py::class_<RegressionResult>(m, "RegressionResult")
        .def_readonly("name", &RegressionResult::name)
        .def_readonly("ok", &RegressionResult::ok)
        .def_readonly("notes", &RegressionResult::notes)
        .def_readonly("report", &RegressionResult::report)
        .def("json", [](const RegressionResult& r) { return write_json(json_of(r)); });

    m.def("catalog_entries", &catalog_entries, py::return_value_policy::copy);
    m.def("find_entry", &find_entry, py::arg("name"), py::return_value_policy::copy);
    m.def("make_spec", &make_spec, py::arg("entry"), py::arg("overrides") = ParamBindings{});
    m.def("boundary_values", &boundary_values, py::arg("entry"),
          py::arg("overrides") = ParamBindings{});
    m.def("regression_check", &regression_check, py::arg("entry"), py::arg("margin") = 1e-6,
          py::arg("samples") = 2048);
}
