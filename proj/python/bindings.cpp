#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "varigrid/io.hpp"
#include "varigrid/metrics.hpp"
#include "varigrid/optimizer.hpp"
#include "varigrid/synth.hpp"

namespace py = pybind11;
using namespace varigrid;

namespace {

// Fields cross the boundary as (ny, nx) float64 arrays, matching the
// x-fastest storage: a[j, i] is the value at node (i, j).
py::array_t<double> field_to_numpy(const ScalarField& f) {
    const GridSpec& s = f.spec();
    py::array_t<double> out({s.ny, s.nx});
    std::copy(f.values().begin(), f.values().end(), out.mutable_data());
    return out;
}

ScalarField field_from_numpy(const GridSpec& spec, py::array_t<double> a) {
    auto buf = a.request();
    if (buf.ndim != 2 || buf.shape[0] != spec.ny || buf.shape[1] != spec.nx)
        throw std::invalid_argument("expected a (ny, nx) array matching the spec");
    ScalarField f(spec);
    auto r = a.unchecked<2>();
    for (int j = 0; j < spec.ny; ++j)
        for (int i = 0; i < spec.nx; ++i) f(i, j) = r(j, i);
    return f;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Variational grid generation with prescribed Jacobian "
              "determinant and curl";
#ifdef VARIGRID_VERSION
    m.attr("__version__") = VARIGRID_VERSION;
#else
    m.attr("__version__") = "dev";
#endif

    py::class_<GridSpec>(m, "GridSpec")
        .def_readonly("nx", &GridSpec::nx)
        .def_readonly("ny", &GridSpec::ny)
        .def_readonly("xmin", &GridSpec::xmin)
        .def_readonly("xmax", &GridSpec::xmax)
        .def_readonly("ymin", &GridSpec::ymin)
        .def_readonly("ymax", &GridSpec::ymax)
        .def_readonly("hx", &GridSpec::hx)
        .def_readonly("hy", &GridSpec::hy)
        .def("x", &GridSpec::x)
        .def("y", &GridSpec::y)
        .def("is_interior", &GridSpec::is_interior)
        .def("__eq__", [](const GridSpec& a, const GridSpec& b) { return a == b; })
        .def("__repr__", [](const GridSpec& s) {
            return "GridSpec(" + std::to_string(s.nx) + "x" + std::to_string(s.ny) + ")";
        });

    m.def("make_uniform_grid", &make_uniform_grid, py::arg("nx"), py::arg("ny"),
          py::arg("xmin"), py::arg("xmax"), py::arg("ymin"), py::arg("ymax"));

    py::class_<ScalarField>(m, "ScalarField")
        .def(py::init<const GridSpec&, double>(), py::arg("spec"),
             py::arg("fill") = 0.0)
        .def(py::init(&field_from_numpy), py::arg("spec"), py::arg("values"))
        .def_property_readonly("spec", &ScalarField::spec)
        .def("to_numpy", &field_to_numpy)
        .def("at", [](const ScalarField& f, int i, int j) { return f(i, j); })
        .def("set", [](ScalarField& f, int i, int j, double v) { f(i, j) = v; });

    py::class_<VectorField>(m, "VectorField")
        .def(py::init<const GridSpec&, double>(), py::arg("spec"),
             py::arg("fill") = 0.0)
        .def(py::init<ScalarField, ScalarField>(), py::arg("x"), py::arg("y"))
        .def_readwrite("x", &VectorField::x)
        .def_readwrite("y", &VectorField::y)
        .def_property_readonly("spec", &VectorField::spec);

    py::class_<Transformation>(m, "Transformation")
        .def(py::init<VectorField>(), py::arg("positions"))
        .def_readwrite("pos", &Transformation::pos)
        .def_property_readonly("spec", &Transformation::spec);

    m.def("identity_map", &identity_map);
    m.def("weighted_l2_inner", &weighted_l2_inner);
    m.def("max_abs", py::overload_cast<const ScalarField&>(&max_abs));

    m.def("partials", [](const ScalarField& f) {
        PartialPair p = partials(f);
        return py::make_tuple(std::move(p.fx), std::move(p.fy));
    });
    m.def("jacobian_det", &jacobian_det);
    m.def("curl2d", &curl2d);
    m.def("adjoint_divergence", &adjoint_divergence);
    m.def("laplacian5", &laplacian5);

    py::class_<PoissonSolver>(m, "PoissonSolver")
        .def(py::init<const GridSpec&>(), py::arg("spec"))
        .def_property_readonly("spec", &PoissonSolver::spec)
        .def("solve_dirichlet_zero", &PoissonSolver::solve_dirichlet_zero)
        .def("solve_dirichlet", &PoissonSolver::solve_dirichlet, py::arg("rhs"),
             py::arg("boundary"));

    py::class_<MonitorPair>(m, "MonitorPair")
        .def(py::init<ScalarField, ScalarField>(), py::arg("f0"), py::arg("g0"))
        .def_readonly("f0", &MonitorPair::f0)
        .def_readonly("g0", &MonitorPair::g0);

    py::class_<ControlField>(m, "ControlField")
        .def(py::init<const GridSpec&>(), py::arg("spec"))
        .def(py::init<VectorField>(), py::arg("values"))
        .def_readwrite("f", &ControlField::f)
        .def_property_readonly("spec", &ControlField::spec);

    py::class_<ObjectiveReport>(m, "ObjectiveReport")
        .def_readonly("ssd", &ObjectiveReport::ssd)
        .def_readonly("ssd_J", &ObjectiveReport::ssd_J)
        .def_readonly("ssd_curl", &ObjectiveReport::ssd_curl)
        .def_readonly("alpha", &ObjectiveReport::alpha);

    py::class_<ResidualPair>(m, "ResidualPair")
        .def_readonly("P", &ResidualPair::P)
        .def_readonly("Q", &ResidualPair::Q);

    py::class_<AdjointPair>(m, "AdjointPair")
        .def_readonly("a1", &AdjointPair::a1)
        .def_readonly("a2", &AdjointPair::a2);

    m.def("assemble_transformation", &assemble_transformation,
          py::arg("solver"), py::arg("base"), py::arg("control"));
    m.def("evaluate_ssd", &evaluate_ssd, py::arg("T"), py::arg("monitors"),
          py::arg("alpha"));
    m.def("residual_fields", &residual_fields, py::arg("T"), py::arg("monitors"),
          py::arg("alpha"));
    m.def("adjoint_vector_fields", &adjoint_vector_fields, py::arg("T"),
          py::arg("residuals"));
    m.def("control_gradient", &control_gradient, py::arg("solver"),
          py::arg("adjoints"));

    py::enum_<StopReason>(m, "StopReason")
        .value("max_iters", StopReason::max_iters)
        .value("tolerance", StopReason::tolerance)
        .value("divergence", StopReason::divergence);

    py::class_<DescentOptions>(m, "DescentOptions")
        .def(py::init<>())
        .def_readwrite("tstep", &DescentOptions::tstep)
        .def_readwrite("max_iters", &DescentOptions::max_iters)
        .def_readwrite("tol", &DescentOptions::tol)
        .def_readwrite("alpha", &DescentOptions::alpha)
        .def_readwrite("line_search", &DescentOptions::line_search)
        .def_readwrite("record_every", &DescentOptions::record_every)
        .def_readwrite("curl_term", &DescentOptions::curl_term)
        .def_readwrite("grad_atol", &DescentOptions::grad_atol);

    py::class_<HistoryRow>(m, "HistoryRow")
        .def_readonly("iteration", &HistoryRow::iteration)
        .def_readonly("ssd", &HistoryRow::ssd)
        .def_readonly("ssd_J", &HistoryRow::ssd_J)
        .def_readonly("ssd_curl", &HistoryRow::ssd_curl)
        .def_readonly("max_grad", &HistoryRow::max_grad);

    py::class_<RunResult>(m, "RunResult")
        .def_readonly("final_control", &RunResult::final_control)
        .def_readonly("final_T", &RunResult::final_T)
        .def_readonly("history", &RunResult::history)
        .def_readonly("iterations_run", &RunResult::iterations_run)
        .def_readonly("stop_reason", &RunResult::stop_reason)
        .def_property_readonly("initial_ssd", &RunResult::initial_ssd)
        .def_property_readonly("final_ssd", &RunResult::final_ssd);

    m.def("run_descent", &run_descent, py::arg("base"), py::arg("monitors"),
          py::arg("opts") = DescentOptions{},
          py::call_guard<py::gil_scoped_release>());
    m.def("fd_gradient_probe", &fd_gradient_probe, py::arg("base"),
          py::arg("monitors"), py::arg("control"), py::arg("i"), py::arg("j"),
          py::arg("component"), py::arg("eps"), py::arg("alpha") = 1.0,
          py::arg("curl_term") = true);

    m.def("default_fixed_boundary_map", &default_fixed_boundary_map,
          py::arg("spec"), py::arg("amplitude"));
    m.def("default_moving_boundary_map", &default_moving_boundary_map,
          py::arg("spec"), py::arg("amplitude"));
    m.def("monitors_from_map", &monitors_from_map, py::arg("T0"));
    m.def("harmonic_boundary_match", &harmonic_boundary_match, py::arg("spec"),
          py::arg("target_boundary"));
    m.def("normalize_monitor", &normalize_monitor, py::arg("f0"));

    py::class_<DistanceStats>(m, "DistanceStats")
        .def_readonly("max", &DistanceStats::max)
        .def_readonly("avg", &DistanceStats::avg);
    py::class_<AngleStats>(m, "AngleStats")
        .def_readonly("max_deg", &AngleStats::max_deg)
        .def_readonly("avg_deg", &AngleStats::avg_deg);
    py::class_<ComparisonReport>(m, "ComparisonReport")
        .def_readonly("ssd_J", &ComparisonReport::ssd_J)
        .def_readonly("ssd", &ComparisonReport::ssd)
        .def_readonly("max_distance", &ComparisonReport::max_distance)
        .def_readonly("avg_distance", &ComparisonReport::avg_distance)
        .def_readonly("max_angle_diff", &ComparisonReport::max_angle_diff)
        .def_readonly("avg_angle_diff", &ComparisonReport::avg_angle_diff);

    m.def("distance_stats", &distance_stats, py::arg("T"), py::arg("T0"));
    m.def("angle_stats", &angle_stats, py::arg("T"), py::arg("T0"));
    m.def("compare_report", &compare_report, py::arg("T"), py::arg("T0"),
          py::arg("monitors"), py::arg("alpha"));

    m.def("write_field_csv",
          py::overload_cast<const ScalarField&, const std::string&>(&write_field_csv),
          py::arg("field"), py::arg("path"));
    m.def("read_field_csv",
          py::overload_cast<const std::string&>(&read_field_csv), py::arg("path"));
    m.def("write_transformation_csv", &write_transformation_csv, py::arg("T"),
          py::arg("prefix"));
    m.def("read_transformation_csv", &read_transformation_csv, py::arg("prefix"));
    m.def("write_vtk", &write_vtk, py::arg("T"), py::arg("path"),
          py::arg("title") = "varigrid transformation");
    m.def("write_grid_svg",
          [](const Transformation& T, const std::string& path,
             const Transformation* t0) { write_grid_svg(T, path, t0); },
          py::arg("T"), py::arg("path"), py::arg("t0") = nullptr);
    m.def("write_history_csv", &write_history_csv, py::arg("history"),
          py::arg("path"));
    m.def("write_report_csv", &write_report_csv, py::arg("report"), py::arg("path"));
}
