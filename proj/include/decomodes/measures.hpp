#pragma once

#include <array>

#include "decomodes/quantum_state.hpp"

namespace decomodes {

struct MeasureReport {
  double mixedness;
  double concurrence;
  std::array<double, 4> wootters_roots;  // descending
};

/// Tr rho^2; 1 for pure states, 1/4 for the maximally mixed state.
double mixedness(const DensityMatrix& rho);

/// nu_1^2 + ... + nu_4^2, the Bell-diagonal shortcut for Tr rho^2.
double mixedness_bell_diagonal(const BellWeights& w);

/// R = rho (sy x sy) rho^* (sy x sy), conjugation taken in the e-basis.
Matrix4c spin_flip_transform(const DensityMatrix& rho);

/// Square roots of the eigenvalues of R, sorted descending.
std::array<double, 4> wootters_roots(const DensityMatrix& rho);

/// Wootters concurrence max{0, mu1 - mu2 - mu3 - mu4}.
double concurrence(const DensityMatrix& rho);

/// max{0, 2 max nu_i - 1}.
double concurrence_bell_diagonal(const BellWeights& w);

MeasureReport measure(const DensityMatrix& rho);

}  // namespace decomodes
