#pragma once

#include <vector>

#include "decomodes/quantum_state.hpp"

namespace decomodes {

/// Kraus operators M_k with sum_k M_k^dagger M_k = 1. `weight` is the
/// decoherence probability w = lambda * t of the built-in sets.
class KrausSet {
 public:
  enum class Family { phase_flip_a, bit_phase_flip_b, custom };

  /// Arbitrary operators; throws DomainError if completeness fails by more
  /// than 1e-12.
  static KrausSet custom(std::vector<Matrix4c> operators, double weight = 0.0);

  const std::vector<Matrix4c>& operators() const { return ops_; }
  double weight() const { return weight_; }
  Family family() const { return family_; }

  /// max |sum M^dagger M - 1|.
  double completeness_error() const;

 private:
  KrausSet(std::vector<Matrix4c> ops, double weight, Family family)
      : ops_(std::move(ops)), weight_(weight), family_(family) {}
  std::vector<Matrix4c> ops_;
  double weight_;
  Family family_;

  friend KrausSet kraus_set_a(double w);
  friend KrausSet kraus_set_b(double w);
};

inline constexpr double kMaxKrausWeight = 4.0 / 3.0;

/// sqrt(1-3w/4) 1x1, sqrt(w/4) {1 x sz, sz x 1, sz x sz}; 0 <= w <= 4/3.
KrausSet kraus_set_a(double w);
/// sqrt(1-3w/4) 1x1, sqrt(w/4) {1 x sz, sx x 1, sx x sz}; 0 <= w <= 4/3.
KrausSet kraus_set_b(double w);
KrausSet kraus_set_for(Mode mode, double w);

/// sum_k M_k rho M_k^dagger.
DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k);

/// n applications of the mode's set with w = lambda t / n. Approximates the
/// closed-form evolution with H = 0 to first order in 1/n.
DensityMatrix trotter_evolve(const DensityMatrix& rho0, Mode mode, double lambda, double t, int n);

struct LindbladGenerators {
  double lambda;                    // recovered rate w / dt
  std::vector<Matrix4c> operators;  // A_k = M_k / sqrt(dt), k >= 1
  double residual;                  // max |M_0 - (1 - dt/2 sum A^dagger A)|
};

/// Inverts M_0 = 1 - (1/2) sum A_k^dagger A_k dt, M_k = sqrt(dt) A_k for a
/// built-in set (H = 0). UnsupportedError for custom sets.
LindbladGenerators lindblad_generators_from_kraus(const KrausSet& k, double dt);

}  // namespace decomodes
