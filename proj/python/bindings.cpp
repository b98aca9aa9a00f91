#include "hardwall/asymptotics.hpp"
#include "hardwall/errors.hpp"
#include "hardwall/harness.hpp"
#include "hardwall/kernel.hpp"
#include "hardwall/sampler.hpp"

#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace hardwall;

namespace {

py::dict prediction_dict(Prediction const& p)
{
    py::list breakdown;
    for (auto const& [name, v] : p.breakdown)
        breakdown.append(py::make_tuple(name, v));
    py::dict d;
    d["theorem"] = theorem_name(p.theorem);
    d["value"] = p.value;
    d["breakdown"] = breakdown;
    d["error_order"] = p.error_order;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m)
{
    m.doc() = "Exact kernel, asymptotics and sampler for the hard-wall Mittag-Leffler ensemble";

    auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", base.ptr());
    py::register_exception<NonConvergence>(m, "NonConvergence", base.ptr());
    py::register_exception<InvalidParams>(m, "InvalidParams", base.ptr());
    py::register_exception<DivergentSeries>(m, "DivergentSeries", base.ptr());
    py::register_exception<DegenerateAngles>(m, "DegenerateAngles", base.ptr());
    py::register_exception<RegimeUnknown>(m, "RegimeUnknown", base.ptr());

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double b, double alpha, double r1, double r2, int n) {
                 ModelParams p{b, alpha, r1, r2, n};
                 p.validate();
                 return p;
             }),
             py::arg("b"), py::arg("alpha"), py::arg("r1"), py::arg("r2"), py::arg("n"))
        .def_static("from_fractions", &ModelParams::from_fractions, py::arg("b"), py::arg("alpha"),
                    py::arg("r1_frac"), py::arg("r2_frac"), py::arg("n"))
        .def_readwrite("b", &ModelParams::b)
        .def_readwrite("alpha", &ModelParams::alpha)
        .def_readwrite("r1", &ModelParams::r1)
        .def_readwrite("r2", &ModelParams::r2)
        .def_readwrite("n", &ModelParams::n)
        .def("outer_radius", &ModelParams::outer_radius)
        .def("__repr__", [](ModelParams const& p) {
            return "ModelParams(b=" + std::to_string(p.b) + ", alpha=" + std::to_string(p.alpha) +
                   ", r1=" + std::to_string(p.r1) + ", r2=" + std::to_string(p.r2) + ", n=" + std::to_string(p.n) + ")";
        });

    py::class_<EquilibriumData>(m, "EquilibriumData")
        .def_readonly("sigma_star", &EquilibriumData::sigma_star)
        .def_readonly("sigma1", &EquilibriumData::sigma1)
        .def_readonly("sigma2", &EquilibriumData::sigma2)
        .def_readonly("j_star", &EquilibriumData::j_star)
        .def_readonly("x", &EquilibriumData::x);
    m.def("equilibrium", &equilibrium);
    m.def("default_model", &default_model, py::arg("n"));

    auto point = [](std::pair<double, double> p) { return PlanePoint{p.first, p.second}; };
    m.def("log_hj", &log_hj, py::arg("params"), py::arg("j"));
    m.def(
        "kernel_eval",
        [point](ModelParams const& p, std::pair<double, double> z, std::pair<double, double> w) {
            return kernel_eval(p, point(z), point(w)).value;
        },
        py::arg("params"), py::arg("z"), py::arg("w"), "K_n(z, w) with z and w given as (r, theta)");
    m.def(
        "one_point", [point](ModelParams const& p, std::pair<double, double> z) { return one_point(p, point(z)); },
        py::arg("params"), py::arg("z"));
    m.def("expected_count_in_disk", &expected_count_in_disk, py::arg("params"), py::arg("r"));

    m.def("integrals", [] {
        auto const v = integrals_I1_to_I4();
        py::dict d;
        d["I"] = v.I;
        d["I1"] = v.I1;
        d["I2"] = v.I2;
        d["I3"] = v.I3;
        d["I4"] = v.I4;
        return d;
    });
    m.def("density_profile_rho", [](double x) { return density_profile_rho(x); }, py::arg("x"));

    m.def(
        "predict",
        [](std::string const& theorem, ModelParams const& p, double u1, double u2, double theta1, double theta2) {
            auto const eq = equilibrium(p);
            if (theorem == "1.1")
                return prediction_dict(predict_hard_micro(p, eq, u1, u2));
            if (theorem == "1.2")
                return prediction_dict(predict_semi_hard_micro(p, eq, u1, u2));
            if (theorem == "1.3")
                return prediction_dict(predict_r1r2_macro(p, eq, u1, u2, theta1, theta2));
            if (theorem == "1.4")
                return prediction_dict(predict_r1r1_macro(p, eq, u1, u2, theta1, theta2));
            if (theorem == "1.5")
                return prediction_dict(predict_semi_hard_macro_bound(p, eq, u1, u2, theta1, theta2));
            throw DomainError("unknown theorem '" + theorem + "'");
        },
        py::arg("theorem"), py::arg("params"), py::arg("u1"), py::arg("u2"), py::arg("theta1") = 0.0,
        py::arg("theta2") = 0.0, "u1, u2 are t-distances for 1.1, 1.3, 1.4 and s-distances for 1.2, 1.5");

    m.def(
        "figure_diag",
        [](std::string const& which, std::vector<int> const& n_grid) {
            Figure const f = parse_figure(which);
            py::list rows;
            for (auto const& r : figure_diag(f, default_model(1), default_scenario(f), n_grid)) {
                py::dict d;
                d["n"] = r.n;
                d["exact"] = r.exact;
                d["predicted"] = r.predicted;
                d["diagnostic"] = r.diagnostic;
                d["wall_time_ms"] = r.wall_time_ms;
                rows.append(d);
            }
            return rows;
        },
        py::arg("which"), py::arg("n_grid") = default_n_grid());

    m.def("radial_cdf", &radial_cdf, py::arg("params"), py::arg("j"), py::arg("r"));
    m.def(
        "sample",
        [](ModelParams const& p, std::uint64_t seed) {
            SampleConfig cfg;
            cfg.seed = seed;
            cfg.n_points = p.n;
            std::vector<PlanePoint> pts;
            {
                py::gil_scoped_release release;
                pts = sample_configuration(p, cfg);
            }
            py::array_t<double> out({static_cast<py::ssize_t>(pts.size()), py::ssize_t{2}});
            auto a = out.mutable_unchecked<2>();
            for (std::size_t i = 0; i < pts.size(); ++i) {
                a(i, 0) = pts[i].r;
                a(i, 1) = pts[i].theta;
            }
            return out;
        },
        py::arg("params"), py::arg("seed"), "n x 2 array of (r, theta), ordered by mode");

    m.def(
        "selftest",
        [](bool full) {
            py::list out;
            for (auto const& c : selftest(full ? SelftestLevel::Full : SelftestLevel::Quick))
                out.append(py::make_tuple(c.name, c.passed, c.measured, c.tolerance));
            return out;
        },
        py::arg("full") = false);
}
