#pragma once

#include <array>

#include "decomodes/quantum_state.hpp"

namespace decomodes {

/// Eigenenergies E1..E4 of the undisturbed Hamiltonian (hbar = 1).
struct SystemHamiltonian {
  std::array<double, 4> energies{0.0, 0.0, 0.0, 0.0};

  static SystemHamiltonian degenerate() { return {}; }
  Matrix4c matrix() const;
};

struct DecoherenceSpec {
  Mode mode = Mode::A;
  double lambda = 0.0;
  SystemHamiltonian hamiltonian;

  /// Throws DomainError on a negative or non-finite rate or energies.
  void check() const;
};

/// Four rank-one projectors summing to the identity.
class ProjectorSet {
 public:
  static ProjectorSet from_states(const std::array<Vector4c, 4>& states);

  const std::array<Matrix4c, 4>& projectors() const { return p_; }
  const Matrix4c& operator[](std::size_t k) const { return p_[k]; }

 private:
  explicit ProjectorSet(const std::array<Matrix4c, 4>& p) : p_(p) {}
  std::array<Matrix4c, 4> p_;
};

/// |e_k><e_k|.
ProjectorSet projectors_mode_a();
/// Projectors onto (e1 +- e3)/sqrt2 and (e2 +- e4)/sqrt2, i.e. the spin
/// subsystem rotated to the x basis with the path basis untouched.
ProjectorSet projectors_mode_b();
ProjectorSet projectors_for(Mode mode);

/// lambda (rho - sum_k P_k rho P_k).
Matrix4c dissipator(const Matrix4c& rho, const ProjectorSet& p, double lambda);

/// Right-hand side -i[H, rho] - D[rho] of the master equation.
Matrix4c master_rhs(const Matrix4c& rho, const Matrix4c& hamiltonian, const ProjectorSet& p,
                    double lambda);

/// Closed-form mode A: off-diagonals rotate by exp(-i(Ek-Ej)t) and decay by
/// exp(-lambda t), diagonal fixed.
DensityMatrix evolve_mode_a(const DensityMatrix& rho0, const DecoherenceSpec& spec, double t);

/// Closed-form mode B. Elements split into three classes:
///  - coherences between different paths decay like mode A,
///  - the population pairs (11,33) and (22,44) relax towards each other,
///  - the spin coherences (13,31) and (24,42) obey a coupled 2x2 system whose
///    solution is written with complex mu = sqrt(lambda^2 - 4 (Ek-Ej)^2) so
///    the overdamped, critical and oscillatory regimes share one path.
DensityMatrix evolve_mode_b(const DensityMatrix& rho0, const DecoherenceSpec& spec, double t);

/// Dispatches on spec.mode.
DensityMatrix evolve(const DensityMatrix& rho0, const DecoherenceSpec& spec, double t);

inline constexpr double kDefaultIntegratorStep = 1e-3;

/// Classical RK4 on the master equation with H = diag(E1..E4). The last step
/// is shortened to land on t. The result is hermitised and trace-normalised;
/// NumericError if the drift removed exceeds 1e-9 per unit time.
DensityMatrix integrate_master(const DensityMatrix& rho0, const ProjectorSet& p,
                               const DecoherenceSpec& spec, double t,
                               double dt = kDefaultIntegratorStep);

}  // namespace decomodes
