#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "decomodes/quantum_state.hpp"

namespace decomodes::cli {

/// Bad flags or unreadable input; exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::string command;
  std::string mode = "A";
  double lambda = 1.0;
  double time = 1.0;
  double sigma = 1.0;
  std::uint64_t samples = 100000;
  std::optional<int> steps;  // sweep: 100, kraus-compare: 1024
  std::uint64_t seed = 42;
  std::string initial = "singlet";
  std::vector<double> energies{0.0, 0.0, 0.0, 0.0};
  std::string out = "-";
  std::uint64_t shots = 10000;  // 0: exact probabilities
  std::vector<double> sigma_grid{0.5, 1.0, 1.5, 2.0};
  unsigned workers = 4;
  std::string variant = "both_paths_independent";
};

/// singlet, bell1..bell4, maximally-mixed or file:<path>. A file may hold a
/// matrix document or any document with a "state" matrix (evolve output).
DensityMatrix load_initial(const std::string& name);

/// Runs `config.command` and returns the text to write.
std::string run(const RunConfig& config);

/// Locale-independent, 12 significant digits.
std::string format_number(double v);

}  // namespace decomodes::cli
