#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "decomodes/types.hpp"

// Two-qubit states in the spin (x) path product basis
//   e1 = |up>|I>, e2 = |up>|II>, e3 = |down>|I>, e4 = |down>|II>.

namespace decomodes {

namespace tolerance {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-12;
inline constexpr double kNegativeEigenvalue = 1e-9;
inline constexpr double kNorm = 1e-12;
}  // namespace tolerance

enum class Repair { none, clamp_negative_eigenvalues };

struct Violation {
  enum class Kind { non_finite, hermiticity, trace, positivity };
  Kind kind;
  // Hermiticity: max |m - m^dagger|; trace: |Tr m - 1|; positivity: most
  // negative eigenvalue; non_finite: count of bad entries.
  double magnitude;

  std::string describe() const;
};

struct ValidationReport;

/// Hermitian, unit-trace, positive semidefinite 4x4 matrix. Only obtainable
/// through validation, so every instance satisfies the invariants.
class DensityMatrix {
 public:
  /// Validates `m`; throws ValidationError with the diagnostic on failure.
  static DensityMatrix from_matrix(const Matrix4c& m, Repair repair = Repair::none);

  const Matrix4c& matrix() const { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// Eigenvalues in ascending order.
  Eigen::Vector4d eigenvalues() const;

 private:
  explicit DensityMatrix(const Matrix4c& m) : m_(m) {}
  Matrix4c m_;

  friend ValidationReport validate(const Matrix4c& m, Repair repair);
};

struct ValidationReport {
  std::optional<DensityMatrix> state;
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }
  std::string describe() const;
};

/// Checks finiteness, Hermiticity, unit trace and positivity. With
/// Repair::clamp_negative_eigenvalues, eigenvalues in [-1e-9, 0) are set to
/// zero and the trace renormalised before the checks are applied.
ValidationReport validate(const Matrix4c& m, Repair repair = Repair::none);

class PureState {
 public:
  /// Throws DomainError unless | ||psi||^2 - 1 | <= 1e-12.
  static PureState from_amplitudes(const Vector4c& amplitudes);

  const Vector4c& amplitudes() const { return psi_; }

 private:
  explicit PureState(const Vector4c& psi) : psi_(psi) {}
  Vector4c psi_;
};

/// Weights of a Bell-diagonal mixture, nu_1..nu_4.
class BellWeights {
 public:
  static BellWeights create(const std::array<double, 4>& nu);

  const std::array<double, 4>& nu() const { return nu_; }
  double sigma1() const { return nu_[0] + nu_[1]; }
  double sigma2() const { return nu_[2] + nu_[3]; }
  double delta1() const { return nu_[0] - nu_[1]; }
  double delta2() const { return nu_[2] - nu_[3]; }
  double delta() const { return sigma1() - sigma2(); }

 private:
  explicit BellWeights(const std::array<double, 4>& nu) : nu_(nu) {}
  std::array<double, 4> nu_;
};

/// Computational basis vector e_k, k in 1..4.
PureState basis_state(int k);

/// |Psi_{1,2}> = (e1 +- e4)/sqrt2, |Psi_{3,4}> = (e2 +- e3)/sqrt2.
PureState bell_state(int index);

DensityMatrix bell_diagonal(const BellWeights& weights);
DensityMatrix from_pure(const PureState& psi);

/// The singlet (e2 - e3)/sqrt2 prepared in the interferometer.
DensityMatrix experiment_initial();
DensityMatrix maximally_mixed();

}  // namespace decomodes
