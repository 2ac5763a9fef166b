#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "cesaro/carleson.hpp"
#include "cesaro/io.hpp"
#include "cesaro/norms.hpp"
#include "cesaro/verify.hpp"

namespace py = pybind11;
using namespace cesaro;

namespace {

using carray = py::array_t<cplx, py::array::c_style | py::array::forcecast>;

PowerSeries series_from(const carray& a) {
    const auto v = a.unchecked<1>();
    std::vector<cplx> c(v.shape(0));
    for (py::ssize_t i = 0; i < v.shape(0); ++i) c[i] = v(i);
    return PowerSeries(std::move(c));
}

carray to_array(const PowerSeries& f) {
    const auto& c = f.coeffs();
    carray out(static_cast<py::ssize_t>(c.size()));
    std::copy(c.begin(), c.end(), out.mutable_data());
    return out;
}

py::object to_python(const io::json& j) { return py::module_::import("json").attr("loads")(j.dump()); }

}  // namespace

PYBIND11_MODULE(_core, mod) {
    mod.doc() = "Cesaro-like operators induced by radial measures";

    py::register_exception<io::SpecError>(mod, "SpecError", PyExc_ValueError);
    py::register_exception<quad::QuadratureError>(mod, "QuadratureError", PyExc_ArithmeticError);

    py::class_<RadialMeasure>(mod, "Measure")
        .def_static("lebesgue", &RadialMeasure::lebesgue)
        .def_static("power", &RadialMeasure::power, py::arg("gamma"), "(1-t)^(gamma-1) dt")
        .def_static("point", &RadialMeasure::point, py::arg("w"), py::arg("t0"))
        .def_static("from_json", [](const std::string& s) { return io::measure_from_json(io::json::parse(s)); })
        .def_static("load", &io::load_measure, py::arg("path"))
        .def("to_json", [](const RadialMeasure& m) { return io::measure_to_json(m).dump(); })
        .def("scaled", &RadialMeasure::scaled, py::arg("factor"))
        .def("__add__", &RadialMeasure::operator+)
        .def("total_mass", [](const RadialMeasure& m) { return total_mass(m); })
        .def("tail", [](const RadialMeasure& m, double t) { return tail(m, t); }, py::arg("t"))
        .def("moment", [](const RadialMeasure& m, std::size_t n) { return moment(m, n); }, py::arg("n"))
        .def("moment_via_tail", [](const RadialMeasure& m, std::size_t n) { return moment_via_tail(m, n); },
             py::arg("n"))
        .def("moments",
             [](const RadialMeasure& m, std::size_t n_max) {
                 const auto mu = moments(m, n_max);
                 return py::array_t<double>(static_cast<py::ssize_t>(mu.values.size()), mu.values.data());
             },
             py::arg("n_max"));

    mod.def("cesaro_like",
            [](const RadialMeasure& m, const carray& a) {
                const auto f = series_from(a);
                return to_array(cesaro_like(moments(m, f.degree()), f));
            },
            py::arg("measure"), py::arg("coeffs"), "Coefficients mu_n (a_0 + ... + a_n).");
    mod.def("cesaro_like_integral",
            [](const RadialMeasure& m, const carray& a, cplx z) {
                return cesaro_like_integral_eval(m, series_from(a), EvalPoint(z));
            },
            py::arg("measure"), py::arg("coeffs"), py::arg("z"));
    mod.def("test_function", [](double t, double p, std::size_t degree) { return to_array(test_function(t, p, degree)); },
            py::arg("t"), py::arg("p"), py::arg("degree"));
    mod.def("log_one_over_one_minus_z", [](std::size_t degree) { return to_array(log_one_over_one_minus_z(degree)); },
            py::arg("degree"));

    mod.def("bloch_norm", [](const carray& a) { return bloch_norm(series_from(a)).value; }, py::arg("coeffs"));
    mod.def("besov_norm", [](const carray& a, double p) { return besov_norm(series_from(a), p).value; },
            py::arg("coeffs"), py::arg("p"));
    mod.def("mean_lipschitz_norm",
            [](const carray& a, double p, double alpha) { return mean_lipschitz_norm(series_from(a), p, alpha).value; },
            py::arg("coeffs"), py::arg("p"), py::arg("alpha"));

    mod.def("classify",
            [](const RadialMeasure& m, double s, double alpha, int depth, bool use_integral) {
                ClassifyConfig c;
                c.depth = depth;
                c.use_integral = use_integral;
                CarlesonVerdict v;
                {
                    py::gil_scoped_release release;
                    v = classify(m, CarlesonParams{s, alpha}, c);
                }
                return to_python(io::to_json(v));
            },
            py::arg("measure"), py::arg("s"), py::arg("alpha") = 0.0, py::arg("depth") = 14,
            py::arg("use_integral") = true);

    mod.def("lower_bound_statistic",
            [](const RadialMeasure& m, double p, std::size_t n) { return lower_bound_statistic(moments(m, n), p, n); },
            py::arg("measure"), py::arg("p"), py::arg("n"));

    mod.def("verify",
            [](const RadialMeasure& m, const std::string& theorem, double p, double s, int t_depth,
               std::size_t degree) {
                VerifyConfig c;
                c.t_depth = t_depth;
                c.degree = degree;
                VerificationReport r;
                {
                    py::gil_scoped_release release;
                    if (theorem == "boundedness") r = boundedness_experiment(m, p, s, c);
                    else if (theorem == "compactness") r = compactness_experiment(m, p, s, c);
                    else throw std::invalid_argument("verify: theorem must be boundedness or compactness");
                }
                return to_python(io::to_json(r));
            },
            py::arg("measure"), py::arg("theorem") = "boundedness", py::arg("p") = 2.0, py::arg("s") = 2.0,
            py::arg("t_depth") = 12, py::arg("degree") = std::size_t{1} << 17);
}
