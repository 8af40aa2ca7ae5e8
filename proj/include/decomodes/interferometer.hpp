#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "decomodes/quantum_state.hpp"

namespace decomodes {

namespace constants {
/// Bohr magneton, J/T (CODATA 2018).
inline constexpr double kBohrMagneton = 9.2740100783e-24;
/// Reduced Planck constant, J s (exact in SI 2019).
inline constexpr double kReducedPlanck = 1.054571817e-34;
}  // namespace constants

/// Larmor frequency omega_L = 2 mu_B B / hbar in rad/s for a field in tesla.
double larmor_frequency(double field_tesla);

/// Spin rotation angle alpha = omega_L t accumulated over `dwell_seconds`.
double rotation_angle(double field_tesla, double dwell_seconds);

enum class Axis { x, z };

/// U(angle) = exp(i angle/2 n.sigma) for n along `axis`.
Matrix2c spin_rotation(Axis axis, double angle);

enum class FieldVariant {
  both_paths_independent,   // independent field in each path
  single_field_one_path,    // one field, placed in path II
  single_field_both_paths,  // one field acting on both paths
};

std::string to_string(FieldVariant v);
FieldVariant parse_variant(const std::string& text);

struct FieldSetup {
  Mode mode = Mode::A;
  double sigma = 0.0;  // radians
  FieldVariant variant = FieldVariant::both_paths_independent;

  /// DomainError for negative sigma, UnsupportedError for a mode B setup
  /// with anything but independent fields.
  void check() const;
};

/// Rotation angles seen by one neutron: alpha/beta about z in paths I/II,
/// gamma/delta about x in paths I/II (mode B only).
struct ShotAngles {
  double alpha = 0.0;
  double beta = 0.0;
  std::optional<double> gamma;
  std::optional<double> delta;
};

/// Path-conditioned spin rotation: |s>|I> -> U_I|s>|I>, |s>|II> -> U_II|s>|II>.
/// Mode A: U_I = U_z(alpha), U_II = U_z(beta). Mode B: U_I = U_z(alpha) U_x(gamma),
/// U_II = U_z(beta) U_x(delta).
Matrix4c conditioned_unitary(const ShotAngles& shot, Mode mode);

DensityMatrix single_shot_state(const DensityMatrix& rho0, const ShotAngles& shot, Mode mode);

/// Number of independent Gaussian angles drawn per neutron for `setup`.
int independent_angle_count(const FieldSetup& setup);

/// Maps the independent draws onto the physical angles of `setup`.
ShotAngles angles_from_draws(const FieldSetup& setup, const std::vector<double>& draws);

/// Exact average of the single-shot states over zero-mean Gaussian angles.
DensityMatrix ensemble_average_analytic(const DensityMatrix& rho0, const FieldSetup& setup);

struct EnsembleEstimate {
  DensityMatrix mean;
  Matrix4d stderr_re;
  Matrix4d stderr_im;
  std::size_t samples;
  std::uint64_t seed;
};

inline constexpr unsigned kDefaultWorkers = 4;

/// Monte Carlo average over `samples` neutrons. Samples are split into
/// `workers` contiguous blocks, each with its own generator seeded from
/// (seed, block index), and merged in block order; the result depends only
/// on (seed, samples, workers).
EnsembleEstimate ensemble_average_monte_carlo(const DensityMatrix& rho0, const FieldSetup& setup,
                                              std::size_t samples, std::uint64_t seed,
                                              unsigned workers = kDefaultWorkers);

/// lambda t as a function of sigma: sigma^2/4, sigma^2/8 or sigma^2/2 for the
/// mode A variants, sigma^2/2 for mode B.
double lambda_t_from_sigma(const FieldSetup& setup);

/// Decoherence rate equivalent to `setup` for a neutron spending
/// `dwell_time` in the fields.
double lambda_from_sigma(const FieldSetup& setup, double dwell_time);

struct CalibrationPoint {
  double sigma;
  double lambda_t;        // -ln(2 |rho'_23|) from the Monte Carlo mean
  double lambda_t_error;  // propagated standard error
};

struct CalibrationFit {
  std::vector<CalibrationPoint> points;
  double coefficient;        // least-squares c in lambda t = c sigma^2
  double coefficient_error;
};

/// Monte Carlo calibration of lambda t against sigma^2 for the singlet.
CalibrationFit calibrate(Mode mode, const std::vector<double>& sigmas, std::size_t samples,
                         std::uint64_t seed, unsigned workers = kDefaultWorkers);

}  // namespace decomodes
