#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "fracio/errors.hpp"
#include "fracio/fiocli.hpp"
#include "fracio/matrixcore.hpp"
#include "fracio/memsolver.hpp"
#include "fracio/specfun.hpp"

namespace py = pybind11;
using namespace fracio;

namespace {

RealMatrix to_matrix(const std::vector<std::vector<double>>& rows) { return RealMatrix::from_rows(rows); }

// Runs the CLI in-process; returns (exit code, stdout text, stderr text).
py::tuple run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "fracio");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::main_with_args(static_cast<int>(argv.size()), argv.data(), out, err);
  return py::make_tuple(code, out.str(), err.str());
}

std::string analyze_path(const std::string& path) {
  const cli::LoadedModel lm = cli::load_model(path);
  return cli::dump_report(cli::analysis_report(lm.model, lm.findings));
}

}  // namespace

PYBIND11_MODULE(_fracio, m) {
  m.doc() = "Input-output models with power-law memory";

  py::register_exception<Error>(m, "FracioError", PyExc_RuntimeError);

  m.def("gamma", &specfun::gamma, py::arg("x"));
  m.def("ml", &specfun::ml_two, py::arg("alpha"), py::arg("beta"), py::arg("z"),
        "Two-parameter Mittag-Leffler function E_{alpha,beta}(z)");
  m.def("effective_growth_rate", &effective_growth_rate, py::arg("lam"), py::arg("alpha"));
  m.def(
      "eigenvalues", [](const std::vector<std::vector<double>>& a) { return eigenvalues(to_matrix(a)); },
      py::arg("matrix"));
  m.def(
      "perron",
      [](const std::vector<std::vector<double>>& a) {
        const PerronResult p = perron(to_matrix(a));
        return py::make_tuple(p.value, p.vector);
      },
      py::arg("matrix"), "Frobenius-Perron value and its nonnegative eigenvector (sums to 1)");
  m.def("analyze_json", &analyze_path, py::arg("path"), "Analysis report of a model file as JSON text");
  m.def("run_cli", &run_cli, py::arg("args"));
}
