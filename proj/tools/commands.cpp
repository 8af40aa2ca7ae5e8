#include "commands.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>

#include "decomodes/interferometer.hpp"
#include "decomodes/json_io.hpp"
#include "decomodes/kraus.hpp"
#include "decomodes/lindblad.hpp"
#include "decomodes/measures.hpp"
#include "decomodes/pauli.hpp"
#include "decomodes/tomography.hpp"

namespace decomodes::cli {

using io::Json;

namespace {

std::array<double, 4> energies_of(const RunConfig& c) {
  if (c.energies.size() != 4) throw UsageError("--energies takes exactly four values");
  return {c.energies[0], c.energies[1], c.energies[2], c.energies[3]};
}

DecoherenceSpec spec_of(const RunConfig& c) {
  DecoherenceSpec spec{parse_mode(c.mode), c.lambda, SystemHamiltonian{energies_of(c)}};
  spec.check();
  return spec;
}

void require_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw UsageError("--time must be finite and >= 0");
}

Json header(const RunConfig& c) {
  return Json{{"command", c.command}, {"initial", c.initial}};
}

std::string cmd_evolve(const RunConfig& c) {
  require_time(c.time);
  const auto spec = spec_of(c);
  const auto rho = evolve(load_initial(c.initial), spec, c.time);
  Json j = header(c);
  j["mode"] = to_string(spec.mode);
  j["lambda"] = spec.lambda;
  j["time"] = c.time;
  j["energies"] = spec.hamiltonian.energies;
  j["state"] = io::to_json(rho);
  j["measures"] = io::to_json(measure(rho));
  return j.dump(2) + "\n";
}

std::string cmd_sweep(const RunConfig& c) {
  require_time(c.time);
  const int steps = c.steps.value_or(100);
  if (steps < 1) throw UsageError("--steps must be >= 1");
  const auto spec = spec_of(c);
  const auto rho0 = load_initial(c.initial);
  std::string out = "lambda_t,mixedness,concurrence\n";
  for (int i = 0; i <= steps; ++i) {
    const double t = c.time * i / steps;
    const auto rho = evolve(rho0, spec, t);
    out += format_number(spec.lambda * t) + "," + format_number(mixedness(rho)) + "," +
           format_number(concurrence(rho)) + "\n";
  }
  return out;
}

std::string cmd_ensemble(const RunConfig& c) {
  FieldSetup setup{parse_mode(c.mode), c.sigma, parse_variant(c.variant)};
  setup.check();
  const auto rho0 = load_initial(c.initial);
  const auto est = ensemble_average_monte_carlo(rho0, setup, c.samples, c.seed, c.workers);
  const auto exact = ensemble_average_analytic(rho0, setup);

  // Largest deviation in units of the standard error; entries with zero
  // spread must match exactly.
  double agreement = 0.0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      const Complex d = est.mean(i, j) - exact(i, j);
      const std::pair<double, double> parts[] = {{std::abs(d.real()), est.stderr_re(i, j)},
                                                 {std::abs(d.imag()), est.stderr_im(i, j)}};
      for (const auto& [dev, se] : parts) {
        if (se > 0.0)
          agreement = std::max(agreement, dev / se);
        else if (dev > 1e-12)
          agreement = std::numeric_limits<double>::infinity();
      }
    }
  Json j = header(c);
  j["estimate"] = io::to_json(est, setup);
  j["analytic"] = io::to_json(exact);
  j["lambda_t"] = lambda_t_from_sigma(setup);
  j["agreement"] = std::isfinite(agreement) ? Json(agreement) : Json(nullptr);
  j["workers"] = c.workers;
  return j.dump(2) + "\n";
}

std::string cmd_kraus_compare(const RunConfig& c) {
  require_time(c.time);
  const int steps = c.steps.value_or(1024);
  if (steps < 1) throw UsageError("--steps must be >= 1");
  const Mode mode = parse_mode(c.mode);
  // The Kraus sets carry only the dissipator, so compare with H = 0.
  const DecoherenceSpec spec{mode, c.lambda, SystemHamiltonian{}};
  spec.check();
  const auto rho0 = load_initial(c.initial);
  const auto exact = evolve(rho0, spec, c.time);
  const double err = max_abs_diff(trotter_evolve(rho0, mode, c.lambda, c.time, steps).matrix(), exact.matrix());

  Json j = header(c);
  j["mode"] = to_string(mode);
  j["lambda"] = c.lambda;
  j["time"] = c.time;
  j["steps"] = steps;
  j["weight"] = c.lambda * c.time / steps;
  j["max_error"] = err;
  j["max_error_half_steps"] = nullptr;
  j["order"] = nullptr;
  if (steps >= 2) {
    const double half = max_abs_diff(trotter_evolve(rho0, mode, c.lambda, c.time, steps / 2).matrix(),
                                     exact.matrix());
    j["max_error_half_steps"] = half;
    if (err > 0.0 && half > 0.0)
      j["order"] = std::log(half / err) / std::log(static_cast<double>(steps) / (steps / 2));
  }
  return j.dump(2) + "\n";
}

std::string cmd_tomography(const RunConfig& c) {
  const auto rho = load_initial(c.initial);
  Json j = header(c);
  j["shots"] = c.shots;
  j["seed"] = c.seed;
  std::optional<Reconstruction> rec;
  if (c.shots == 0) {
    rec = reconstruct_linear(exact_records(rho));
  } else {
    const auto counts = simulate_counts(rho, c.shots, c.seed);
    j["counts"] = io::to_json(counts);
    rec = reconstruct_linear(counts);
  }
  j["reconstruction"] = io::to_json(*rec);
  j["frobenius_error"] = frobenius_distance(rec->estimate.matrix(), rho.matrix());
  // <s_a (x) s_b> of the linear estimate, index 0 = identity.
  Matrix4d corr;
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      corr(a, b) = (rec->raw_linear * pauli::kron(pauli::by_index(a), pauli::by_index(b))).trace().real();
  j["correlators"] = io::real_matrix_json(corr);
  return j.dump(2) + "\n";
}

std::string cmd_calibrate(const RunConfig& c) {
  const Mode mode = parse_mode(c.mode);
  if (c.sigma_grid.empty()) throw UsageError("--sigma-grid needs at least one value");
  const auto fit = calibrate(mode, c.sigma_grid, c.samples, c.seed, c.workers);
  Json points = Json::array();
  for (const auto& p : fit.points)
    points.push_back(Json{{"sigma", p.sigma}, {"lambda_t", p.lambda_t}, {"lambda_t_error", p.lambda_t_error}});
  Json j{{"command", c.command},
         {"mode", to_string(mode)},
         {"samples", c.samples},
         {"seed", c.seed},
         {"points", points},
         {"coefficient", fit.coefficient},
         {"coefficient_error", fit.coefficient_error},
         {"expected", mode == Mode::A ? 0.25 : 0.5}};
  return j.dump(2) + "\n";
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  if (ec != std::errc{}) throw NumericError("cannot format number");
  return std::string(buf, end);
}

DensityMatrix load_initial(const std::string& name) {
  if (name == "singlet") return experiment_initial();
  if (name == "maximally-mixed") return maximally_mixed();
  if (name.size() == 5 && name.rfind("bell", 0) == 0 && name[4] >= '1' && name[4] <= '4')
    return from_pure(bell_state(name[4] - '0'));
  if (name.rfind("file:", 0) == 0) {
    const std::string path = name.substr(5);
    std::ifstream in(path);
    if (!in) throw UsageError("cannot open initial state file '" + path + "'");
    try {
      Json j = Json::parse(in);
      if (j.is_object() && j.contains("state")) j = j["state"];
      return io::density_from_json(j, Repair::clamp_negative_eigenvalues);
    } catch (const Json::exception& e) {
      throw UsageError("'" + path + "' is not valid JSON: " + e.what());
    } catch (const ValidationError& e) {
      throw UsageError("'" + path + "' is not a valid density matrix: " + e.what());
    } catch (const DomainError& e) {
      throw UsageError("'" + path + "': " + e.what());
    }
  }
  throw UsageError("unknown initial state '" + name +
                   "' (singlet, bell1..bell4, maximally-mixed, file:<path>)");
}

std::string run(const RunConfig& c) {
  if (c.command == "evolve") return cmd_evolve(c);
  if (c.command == "sweep") return cmd_sweep(c);
  if (c.command == "ensemble") return cmd_ensemble(c);
  if (c.command == "kraus-compare") return cmd_kraus_compare(c);
  if (c.command == "tomography") return cmd_tomography(c);
  if (c.command == "calibrate") return cmd_calibrate(c);
  throw UsageError("unknown command '" + c.command + "'");
}

}  // namespace decomodes::cli
