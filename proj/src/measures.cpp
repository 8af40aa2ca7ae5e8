#include "decomodes/measures.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "decomodes/pauli.hpp"

namespace decomodes {

double mixedness(const DensityMatrix& rho) {
  // Tr rho^2 = sum |rho_ij|^2 for Hermitian rho.
  return rho.matrix().cwiseAbs2().sum();
}

double mixedness_bell_diagonal(const BellWeights& w) {
  double s = 0.0;
  for (double v : w.nu()) s += v * v;
  return s;
}

Matrix4c spin_flip_transform(const DensityMatrix& rho) {
  const Matrix4c yy = pauli::kron(pauli::y(), pauli::y());
  const Matrix4c tilde = yy * rho.matrix().conjugate() * yy;
  return rho.matrix() * tilde;
}

std::array<double, 4> wootters_roots(const DensityMatrix& rho) {
  const Matrix4c r = spin_flip_transform(rho);
  Eigen::ComplexEigenSolver<Matrix4c> es(r, /*computeEigenvectors=*/false);
  if (es.info() != Eigen::Success) throw NumericError("eigen-decomposition of R failed");

  std::array<double, 4> roots{};
  for (int i = 0; i < 4; ++i) {
    const Complex ev = es.eigenvalues()(i);
    if (std::abs(ev.imag()) > tolerance::kNegativeEigenvalue) {
      std::ostringstream os;
      os << "R has a non-real eigenvalue " << ev;
      throw NumericError(os.str());
    }
    double re = ev.real();
    if (re < 0.0) {
      if (re < -tolerance::kNegativeEigenvalue) {
        std::ostringstream os;
        os << "R has a negative eigenvalue " << re;
        throw NumericError(os.str());
      }
      re = 0.0;
    }
    roots[i] = std::sqrt(re);
  }
  std::sort(roots.begin(), roots.end(), std::greater<>());
  return roots;
}

double concurrence(const DensityMatrix& rho) {
  const auto mu = wootters_roots(rho);
  return std::max(0.0, mu[0] - mu[1] - mu[2] - mu[3]);
}

double concurrence_bell_diagonal(const BellWeights& w) {
  const double largest = *std::max_element(w.nu().begin(), w.nu().end());
  return std::max(0.0, 2.0 * largest - 1.0);
}

MeasureReport measure(const DensityMatrix& rho) {
  const auto roots = wootters_roots(rho);
  return {mixedness(rho), std::max(0.0, roots[0] - roots[1] - roots[2] - roots[3]), roots};
}

}  // namespace decomodes
