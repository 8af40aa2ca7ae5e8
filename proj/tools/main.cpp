#include <cstdio>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "commands.hpp"
#include "decomodes/types.hpp"

using decomodes::cli::RunConfig;

namespace {

// Exit codes: 0 ok, 2 usage or config error, 3 numeric failure,
// 4 a produced state failed validation, 1 anything unexpected.
enum Exit { kOk = 0, kInternal = 1, kUsage = 2, kNumeric = 3, kInvalidState = 4 };

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--initial", c.initial, "singlet, bell1..bell4, maximally-mixed or file:<path>")
      ->capture_default_str();
  sub->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();
}

void add_mode(CLI::App* sub, RunConfig& c) {
  sub->add_option("--mode", c.mode, "decoherence mode A or B")->capture_default_str();
}

void add_dynamics(CLI::App* sub, RunConfig& c) {
  add_mode(sub, c);
  sub->add_option("--lambda", c.lambda, "decoherence rate")->capture_default_str();
  sub->add_option("--time", c.time, "evolution time (sweep: end time)")->capture_default_str();
}

int write(const std::string& path, const std::string& text) {
  if (path == "-") {
    std::cout << text;
    std::cout.flush();
    return kOk;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    std::cerr << "error: cannot write '" << path << "'\n";
    return kUsage;
  }
  out << text;
  return out.good() ? kOk : kUsage;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-qubit decoherence simulator"};
  app.require_subcommand(1);
  RunConfig c;

  auto* evolve = app.add_subcommand("evolve", "evolve a state and report mixedness and concurrence");
  add_dynamics(evolve, c);
  evolve->add_option("--energies", c.energies, "four level energies E1..E4")
      ->expected(4)
      ->delimiter(',');
  add_common(evolve, c);

  auto* sweep = app.add_subcommand("sweep", "CSV of lambda_t, mixedness, concurrence on a uniform grid");
  add_dynamics(sweep, c);
  sweep->add_option("--steps", c.steps, "grid intervals (default 100)");
  sweep->add_option("--energies", c.energies, "four level energies E1..E4")
      ->expected(4)
      ->delimiter(',');
  add_common(sweep, c);

  auto* ensemble = app.add_subcommand("ensemble", "Monte Carlo vs analytic interferometer average");
  add_mode(ensemble, c);
  ensemble->add_option("--sigma", c.sigma, "rotation-angle spread (rad)")->capture_default_str();
  ensemble->add_option("--samples", c.samples, "neutrons")->capture_default_str();
  ensemble->add_option("--seed", c.seed)->capture_default_str();
  ensemble->add_option("--workers", c.workers, "Monte Carlo blocks/threads")->capture_default_str();
  ensemble->add_option("--variant", c.variant,
                       "both_paths_independent, single_field_one_path or single_field_both_paths")
      ->capture_default_str();
  add_common(ensemble, c);

  auto* kraus = app.add_subcommand("kraus-compare", "trotterized Kraus channel vs analytic solution");
  add_dynamics(kraus, c);
  kraus->add_option("--steps", c.steps, "channel applications (default 1024)");
  add_common(kraus, c);

  auto* tomo = app.add_subcommand("tomography", "simulate Pauli counts and reconstruct the state");
  tomo->add_option("--shots", c.shots, "shots per setting, 0 for exact probabilities")->capture_default_str();
  tomo->add_option("--seed", c.seed)->capture_default_str();
  add_common(tomo, c);

  auto* calib = app.add_subcommand("calibrate", "fit lambda t = c sigma^2 from Monte Carlo averages");
  add_mode(calib, c);
  calib->add_option("--sigma-grid", c.sigma_grid, "comma-separated sigma values")->delimiter(',');
  calib->add_option("--samples", c.samples)->capture_default_str();
  calib->add_option("--seed", c.seed)->capture_default_str();
  calib->add_option("--workers", c.workers)->capture_default_str();
  calib->add_option("--out", c.out, "output path, - for stdout")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }
  c.command = app.get_subcommands().front()->get_name();

  try {
    return write(c.out, decomodes::cli::run(c));
  } catch (const decomodes::cli::UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const decomodes::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const decomodes::UnsupportedError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const decomodes::NumericError& e) {
    std::cerr << "numeric failure: " << e.what() << "\n";
    return kNumeric;
  } catch (const decomodes::ValidationError& e) {
    std::cerr << "invalid state produced: " << e.what() << "\n";
    return kInvalidState;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInternal;
  }
}
