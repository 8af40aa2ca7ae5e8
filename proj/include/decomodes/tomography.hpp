#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "decomodes/quantum_state.hpp"

namespace decomodes {

enum class PauliAxis { X, Y, Z };

std::string to_string(PauliAxis a);
PauliAxis parse_pauli_axis(const std::string& text);

/// Joint projective measurement of sigma_spin (x) sigma_path.
struct MeasurementSetting {
  PauliAxis spin;
  PauliAxis path;

  bool operator==(const MeasurementSetting&) const = default;
};

/// The nine settings, spin-major: XX, XY, XZ, YX, ..., ZZ.
std::array<MeasurementSetting, 9> all_settings();

/// Outcome order (+,+), (+,-), (-,+), (-,-); first sign is the spin result.
using OutcomeProbabilities = std::array<double, 4>;

struct CountRecord {
  MeasurementSetting setting;
  std::array<std::uint64_t, 4> counts;
  std::uint64_t shots;

  OutcomeProbabilities frequencies() const;
};

struct ProbabilityRecord {
  MeasurementSetting setting;
  OutcomeProbabilities probabilities;
};

struct Reconstruction {
  DensityMatrix estimate;
  Matrix4c raw_linear;        // may have negative eigenvalues
  double frobenius_residual;  // ||estimate - raw_linear||_F
};

/// Born-rule probabilities p(a, b) = Tr[rho Pi_a (x) Pi_b].
OutcomeProbabilities outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& s);

/// Multinomial counts for every setting; setting k draws from a generator
/// seeded with (seed, k).
std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, std::uint64_t shots,
                                         std::uint64_t seed);

/// Exact outcome probabilities for every setting (infinite statistics).
std::vector<ProbabilityRecord> exact_records(const DensityMatrix& rho);

/// Linear inversion rho = 1/4 sum_ab <s_a (x) s_b> s_a (x) s_b with the
/// single-subsystem expectations averaged over the three settings that
/// share the observable, followed by project_psd.
Reconstruction reconstruct_linear(const std::vector<CountRecord>& records);
Reconstruction reconstruct_linear(const std::vector<ProbabilityRecord>& records);

/// Frobenius-nearest density matrix: symmetrise, then project the spectrum
/// onto the probability simplex (shift, clip at zero).
/// DomainError if `m` is not Hermitian to 1e-9 or has no positive eigenvalue.
DensityMatrix project_psd(const Matrix4c& m);

double frobenius_distance(const Matrix4c& a, const Matrix4c& b);

}  // namespace decomodes
