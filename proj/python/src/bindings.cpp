#include "nbhd/cech/cohomology.hpp"
#include "nbhd/error.hpp"
#include "nbhd/lab/suites.hpp"
#include "nbhd/scenario/io.hpp"
#include "nbhd/scenario/pipeline.hpp"
#include "nbhd/version.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace nbhd;

namespace {

py::list suite_rows(const std::vector<lab::PropertyResult>& rs) {
    py::list out;
    for (const auto& r : rs) {
        py::dict d;
        d["name"] = r.name;
        d["passed"] = r.passed;
        d["trials"] = r.trials;
        d["nontrivial"] = r.nontrivial;
        d["detail"] = r.detail;
        out.append(d);
    }
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.attr("__version__") = kEngineVersion;
    py::register_exception<Error>(m, "EngineError");

    m.def("builtin_names", [] { return scenario::builtin_names(); });
    m.def(
        "generate",
        [](const std::string& name, int twist, int order, std::optional<std::uint64_t> perturb) {
            auto s = scenario::generate_builtin(name, twist, order);
            if (perturb) s = scenario::perturb_coordinates(s, *perturb);
            return scenario::dump_scenario(s);
        },
        py::arg("name"), py::arg("twist") = 1, py::arg("order") = 2, py::arg("perturb") = py::none(),
        "Scenario JSON text of a builtin embedding.");
    m.def(
        "canonicalize", [](const std::string& text) { return scenario::dump_scenario(scenario::parse_scenario(text)); },
        py::arg("scenario_json"));
    m.def(
        "validate",
        [](const std::string& text) {
            return scenario::validation_to_json(scenario::validate_scenario(scenario::parse_scenario(text))).dump();
        },
        py::arg("scenario_json"), "Validation log as JSON text.");
    m.def(
        "obstruct",
        [](const std::string& text, std::optional<int> order, std::optional<int> window, std::size_t workers) {
            scenario::PipelineOptions opt;
            opt.order = order;
            opt.radius = window;
            opt.workers = workers;
            const auto s = scenario::parse_scenario(text);
            py::gil_scoped_release release;
            return scenario::report_to_json(scenario::run_pipeline(s, opt)).dump(2);
        },
        py::arg("scenario_json"), py::arg("order") = py::none(), py::arg("window") = py::none(),
        py::arg("workers") = 1, "Report bundle as JSON text.");
    m.def("cohomology_dim", &cech::cohomology_dim, py::arg("n"), py::arg("twists"));
    m.def("formal_lab", [](std::uint64_t seed) { return suite_rows(lab::formal_suite(seed)); }, py::arg("seed") = 1);
    m.def("mc_lab", [](std::uint64_t seed) { return suite_rows(lab::mc_suite(seed)); }, py::arg("seed") = 1);
    m.def(
        "geometry_lab", [](std::uint64_t seed, int trials) { return suite_rows(lab::geometry_suite(seed, trials)); },
        py::arg("seed") = 1, py::arg("trials") = 200);
}
