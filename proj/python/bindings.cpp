// Python bindings. Results cross the boundary as JSON text, which the
// package layer decodes into plain dicts and lists.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "matcon/bounds.hpp"
#include "matcon/cli.hpp"
#include "matcon/experiments.hpp"
#include "matcon/model_json.hpp"
#include "matcon/montecarlo.hpp"
#include "matcon/output.hpp"

namespace py = pybind11;
using namespace matcon;

namespace {

std::string report(const std::string& model_json, std::uint64_t seed, std::size_t samples,
                   const std::string& estimator) {
    const IndependentSumModel model = model_from_json_text(model_json);
    MCConfig cfg;
    cfg.samples = samples;
    cfg.seed = RngSeed{seed};
    cfg.blocks = block_count_for(samples);
    if (estimator == "mom") {
        cfg.estimator = EstimatorKind::MedianOfMeans;
    } else if (estimator != "mean") {
        throw std::invalid_argument("estimator must be 'mean' or 'mom'");
    }
    return report_json(bound_report(model, cfg)).dump();
}

std::string experiment(const std::string& name, std::uint64_t seed, const std::vector<std::size_t>& ds,
                       std::size_t n, std::size_t samples) {
    const auto id = parse_experiment(name);
    if (!id) throw std::invalid_argument("unknown experiment '" + name + "'");
    ExperimentSpec spec = default_experiment(*id);
    if (!ds.empty()) spec.ds = ds;
    if (n > 0) spec.n = n;
    spec.cfg.samples = samples;
    spec.cfg.seed = RngSeed{seed};
    spec.cfg.estimator = default_estimator(*id);
    spec.cfg.blocks = block_count_for(samples);
    return experiment_json(run_experiment(spec)).dump();
}

py::tuple cli(const std::vector<std::string>& args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return py::make_tuple(code, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_matcon, m) {
    m.doc() = "Expected-norm bounds for sums of independent random matrices";
    m.def("report_json", &report, py::arg("model_json"), py::arg("seed"), py::arg("samples") = 200,
          py::arg("estimator") = "mean", py::call_guard<py::gil_scoped_release>());
    m.def("experiment_json", &experiment, py::arg("name"), py::arg("seed"), py::arg("ds") = std::vector<std::size_t>{},
          py::arg("n") = 0, py::arg("samples") = 200, py::call_guard<py::gil_scoped_release>());
    m.def("run_cli", &cli, py::arg("args"));
    m.def("dimensional_constant", [](std::size_t d1, std::size_t d2) { return dimensional_constant(d1, d2); },
          py::arg("d1"), py::arg("d2"));

    py::register_exception<ModelParseError>(m, "ModelParseError", PyExc_ValueError);
}
