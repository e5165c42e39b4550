#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "pairfluor/closed_forms.hpp"
#include "pairfluor/errors.hpp"
#include "pairfluor/hamiltonian.hpp"
#include "pairfluor/liouville.hpp"
#include "pairfluor/moments.hpp"
#include "pairfluor/params.hpp"
#include "pairfluor/single_emitter.hpp"
#include "pairfluor/spectrum.hpp"
#include "pairfluor/sweep.hpp"

namespace py = pybind11;
using namespace pairfluor;

PYBIND11_MODULE(_core, m) {
  m.doc() = "Coupled two-level emitter pair: steady states, correlations and spectra";
  m.attr("__version__") = kVersion;

  auto base = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
  auto validation = py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
  py::register_exception<UnsupportedConfiguration>(m, "UnsupportedConfiguration", validation.ptr());
  auto numerical = py::register_exception<NumericalError>(m, "NumericalError", base.ptr());
  py::register_exception<SingularSystemError>(m, "SingularSystemError", numerical.ptr());
  py::register_exception<DegenerateSteadyStateError>(m, "DegenerateSteadyStateError", numerical.ptr());
  py::register_exception<DegenerateEigenError>(m, "DegenerateEigenError", numerical.ptr());
  py::register_exception<ResolutionError>(m, "ResolutionError", numerical.ptr());
  py::register_exception<UndefinedObservable>(m, "UndefinedObservable", numerical.ptr());
  py::register_exception<IoError>(m, "IoError", base.ptr());

  py::enum_<Regime>(m, "Regime")
      .value("Coherent", Regime::Coherent)
      .value("Dissipative", Regime::Dissipative)
      .value("UnidirectionalForward", Regime::UnidirectionalForward)
      .value("UnidirectionalBackward", Regime::UnidirectionalBackward)
      .value("Asymmetric", Regime::Asymmetric);

  py::enum_<Emitter>(m, "Emitter").value("First", Emitter::First).value("Second", Emitter::Second);

  py::class_<SystemParams>(m, "SystemParams")
      .def(py::init<>())
      .def(py::init([](py::kwargs kw) {
        SystemParams p;
        for (auto item : kw) set_param(p, py::cast<std::string>(item.first), py::cast<double>(item.second));
        p.validate();
        return p;
      }))
      .def_readwrite("gamma0", &SystemParams::gamma0)
      .def_readwrite("delta", &SystemParams::delta)
      .def_readwrite("g", &SystemParams::g)
      .def_readwrite("theta", &SystemParams::theta)
      .def_readwrite("gamma", &SystemParams::gamma)
      .def_readwrite("phi", &SystemParams::phi)
      .def_readwrite("omega1", &SystemParams::omega1)
      .def_readwrite("omega2", &SystemParams::omega2)
      .def("validate", &SystemParams::validate)
      .def("normalized", &SystemParams::normalized)
      .def("to_dict", [](const SystemParams& p) { return to_map(p); })
      .def("__repr__", [](const SystemParams& p) { return "SystemParams(" + format_config(p) + ")"; });

  m.def("classify_regime", [](const SystemParams& p) { return classify_regime(p); });
  m.def("apply_regime", &apply_regime);
  m.def("coherent_pair", &coherent_pair, py::arg("g"), py::arg("omega"), py::arg("gamma0") = 1.0);
  m.def("dissipative_pair", &dissipative_pair, py::arg("gamma"), py::arg("omega"), py::arg("gamma0") = 1.0);
  m.def("unidirectional_pair", &unidirectional_pair, py::arg("gamma"), py::arg("omega"), py::arg("gamma0") = 1.0,
        py::arg("forward") = true);
  m.def("asymmetric_pair", &asymmetric_pair, py::arg("g"), py::arg("gamma"), py::arg("relative_phase"),
        py::arg("omega"), py::arg("gamma0") = 1.0);

  m.def("populations", [](const SystemParams& p) { return populations(steady_state(p)).as_array(); },
        "Steady-state (rho00, rho10, rho01, rho11) from the moment system.");
  m.def("g2", [](const SystemParams& p) { return g2_cross(steady_state(p)); });
  m.def("closed_form_populations", [](const SystemParams& p) { return closed_form_populations(p).as_array(); });
  m.def("closed_form_g2", [](const SystemParams& p) { return closed_form_g2(p); });
  m.def("has_closed_form", [](const SystemParams& p) { return has_closed_form(p); });
  m.def("dressed_energies", &dressed_energies);
  m.def("quintuplet_frequencies", &quintuplet_frequencies);
  m.def("oracle_populations", [](const SystemParams& p) {
    return steady_state_dm(build_liouvillian(p)).populations();
  });
  m.def("moment_eigenvalues", &moment_eigenvalues);

  py::class_<SpectralComponent>(m, "SpectralComponent")
      .def_readonly("omega", &SpectralComponent::omega)
      .def_readonly("gamma", &SpectralComponent::gamma)
      .def_readonly("lorentz", &SpectralComponent::lorentz)
      .def_readonly("dispersive", &SpectralComponent::dispersive);

  py::class_<SpectralDecomposition>(m, "SpectralDecomposition")
      .def_readonly("components", &SpectralDecomposition::components)
      .def_readonly("delta_weight", &SpectralDecomposition::delta_weight)
      .def_readonly("population", &SpectralDecomposition::population)
      .def("lorentz_sum", &SpectralDecomposition::lorentz_sum)
      .def("evaluate", [](const SpectralDecomposition& d, const std::vector<double>& grid) {
        return evaluate_spectrum(d, grid);
      });

  m.def("decompose_spectrum", &decompose_spectrum, py::arg("params"), py::arg("emitter") = Emitter::First);
  m.def("default_spectrum_grid", &default_spectrum_grid, py::arg("params"), py::arg("points") = 2001);
  m.def(
      "oracle_spectrum",
      [](const SystemParams& p, const std::vector<double>& grid, Emitter e) {
        const auto o = spectrum_fft(build_liouvillian(p), grid, e);
        return py::make_tuple(o.values, o.delta_weight);
      },
      py::arg("params"), py::arg("grid"), py::arg("emitter") = Emitter::First,
      "Time-domain spectrum on a grid: (values, delta_weight).");
  m.def("single_spectrum_value", &single_spectrum_value);

  m.def("preset_names", [] { return preset_names(); });
  m.def(
      "run_preset",
      [](const std::string& name, int spectrum_points) {
        SweepSpec s = load_preset(name);
        if (spectrum_points > 0) s.spectrum_grid.points = spectrum_points;
        py::gil_scoped_release release;
        return emit(run_sweep(s), Format::Json);
      },
      py::arg("name"), py::arg("spectrum_points") = 0, "Run a named preset and return the JSON document.");
}
