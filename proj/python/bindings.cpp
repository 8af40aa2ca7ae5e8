#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "decomodes/interferometer.hpp"
#include "decomodes/kraus.hpp"
#include "decomodes/lindblad.hpp"
#include "decomodes/measures.hpp"
#include "decomodes/tomography.hpp"

namespace py = pybind11;
using namespace decomodes;

namespace {

DensityMatrix state(const Matrix4c& m) { return DensityMatrix::from_matrix(m); }

DecoherenceSpec make_spec(const std::string& mode, double lambda, std::optional<std::array<double, 4>> energies) {
  return {parse_mode(mode), lambda, SystemHamiltonian{energies.value_or(std::array<double, 4>{})}};
}

FieldSetup make_setup(const std::string& mode, double sigma, const std::string& variant) {
  FieldSetup s{parse_mode(mode), sigma, parse_variant(variant)};
  s.check();
  return s;
}

py::dict report(const MeasureReport& r) {
  py::dict d;
  d["mixedness"] = r.mixedness;
  d["concurrence"] = r.concurrence;
  d["wootters_roots"] = r.wootters_roots;
  return d;
}

py::dict reconstruction(const Reconstruction& r) {
  py::dict d;
  d["estimate"] = r.estimate.matrix();
  d["raw_linear"] = r.raw_linear;
  d["frobenius_residual"] = r.frobenius_residual;
  return d;
}

}  // namespace

PYBIND11_MODULE(_decomodes, m) {
  m.doc() = "Two-qubit decoherence modes: closed forms, integrator, Kraus channels, interferometer, tomography";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<UnsupportedError>(m, "UnsupportedError", PyExc_NotImplementedError);
  py::register_exception<NumericError>(m, "NumericError", PyExc_ArithmeticError);

  // States
  m.def("experiment_initial", [] { return experiment_initial().matrix(); }, "The singlet (e2 - e3)/sqrt2.");
  m.def("maximally_mixed", [] { return maximally_mixed().matrix(); });
  m.def("bell_state", [](int i) { return bell_state(i).amplitudes(); }, py::arg("index"));
  m.def("bell_diagonal", [](const std::array<double, 4>& nu) { return bell_diagonal(BellWeights::create(nu)).matrix(); },
        py::arg("weights"));
  m.def("validate", [](const Matrix4c& rho) { return validate(rho).ok(); }, py::arg("rho"));

  // Measures
  m.def("mixedness", [](const Matrix4c& rho) { return mixedness(state(rho)); }, py::arg("rho"));
  m.def("concurrence", [](const Matrix4c& rho) { return concurrence(state(rho)); }, py::arg("rho"));
  m.def("measure", [](const Matrix4c& rho) { return report(measure(state(rho))); }, py::arg("rho"));

  // Master equation
  m.def("evolve",
        [](const Matrix4c& rho, const std::string& mode, double lambda, double t,
           std::optional<std::array<double, 4>> energies) {
          return evolve(state(rho), make_spec(mode, lambda, energies), t).matrix();
        },
        py::arg("rho"), py::arg("mode"), py::arg("lam"), py::arg("t"), py::arg("energies") = py::none());
  m.def("integrate_master",
        [](const Matrix4c& rho, const std::string& mode, double lambda, double t,
           std::optional<std::array<double, 4>> energies, double dt) {
          const auto spec = make_spec(mode, lambda, energies);
          return integrate_master(state(rho), projectors_for(spec.mode), spec, t, dt).matrix();
        },
        py::arg("rho"), py::arg("mode"), py::arg("lam"), py::arg("t"), py::arg("energies") = py::none(),
        py::arg("dt") = kDefaultIntegratorStep);

  // Kraus channels
  m.def("kraus_operators", [](const std::string& mode, double w) { return kraus_set_for(parse_mode(mode), w).operators(); },
        py::arg("mode"), py::arg("w"));
  m.def("apply_channel",
        [](const Matrix4c& rho, const std::vector<Matrix4c>& ops) {
          return apply_channel(state(rho), KrausSet::custom(ops)).matrix();
        },
        py::arg("rho"), py::arg("operators"));
  m.def("trotter_evolve",
        [](const Matrix4c& rho, const std::string& mode, double lambda, double t, int n) {
          return trotter_evolve(state(rho), parse_mode(mode), lambda, t, n).matrix();
        },
        py::arg("rho"), py::arg("mode"), py::arg("lam"), py::arg("t"), py::arg("n"));

  // Interferometer
  m.def("ensemble_average",
        [](const Matrix4c& rho, const std::string& mode, double sigma, const std::string& variant) {
          return ensemble_average_analytic(state(rho), make_setup(mode, sigma, variant)).matrix();
        },
        py::arg("rho"), py::arg("mode"), py::arg("sigma"), py::arg("variant") = "both_paths_independent");
  m.def("ensemble_monte_carlo",
        [](const Matrix4c& rho, const std::string& mode, double sigma, std::size_t samples, std::uint64_t seed,
           unsigned workers, const std::string& variant) {
          EnsembleEstimate e = [&] {
            py::gil_scoped_release release;
            return ensemble_average_monte_carlo(state(rho), make_setup(mode, sigma, variant), samples, seed,
                                                workers);
          }();
          py::dict d;
          d["mean"] = e.mean.matrix();
          d["stderr_re"] = e.stderr_re;
          d["stderr_im"] = e.stderr_im;
          d["samples"] = e.samples;
          d["seed"] = e.seed;
          return d;
        },
        py::arg("rho"), py::arg("mode"), py::arg("sigma"), py::arg("samples"), py::arg("seed"),
        py::arg("workers") = kDefaultWorkers, py::arg("variant") = "both_paths_independent");
  m.def("lambda_from_sigma",
        [](const std::string& mode, double sigma, double dwell, const std::string& variant) {
          return lambda_from_sigma(make_setup(mode, sigma, variant), dwell);
        },
        py::arg("mode"), py::arg("sigma"), py::arg("dwell_time"), py::arg("variant") = "both_paths_independent");

  // Tomography
  m.def("simulate_counts",
        [](const Matrix4c& rho, std::uint64_t shots, std::uint64_t seed) {
          py::list out;
          for (const auto& r : simulate_counts(state(rho), shots, seed)) {
            py::dict d;
            d["spin"] = to_string(r.setting.spin);
            d["path"] = to_string(r.setting.path);
            d["counts"] = r.counts;
            d["shots"] = r.shots;
            out.append(d);
          }
          return out;
        },
        py::arg("rho"), py::arg("shots"), py::arg("seed"));
  m.def("reconstruct",
        [](const py::list& records) {
          std::vector<CountRecord> recs;
          for (const auto& item : records) {
            const auto d = item.cast<py::dict>();
            recs.push_back({{parse_pauli_axis(d["spin"].cast<std::string>()),
                             parse_pauli_axis(d["path"].cast<std::string>())},
                            d["counts"].cast<std::array<std::uint64_t, 4>>(),
                            d["shots"].cast<std::uint64_t>()});
          }
          return reconstruction(reconstruct_linear(recs));
        },
        py::arg("records"));
  m.def("reconstruct_exact", [](const Matrix4c& rho) { return reconstruction(reconstruct_linear(exact_records(state(rho)))); },
        py::arg("rho"));
  m.def("project_psd", [](const Matrix4c& raw) { return project_psd(raw).matrix(); }, py::arg("m"));
}
