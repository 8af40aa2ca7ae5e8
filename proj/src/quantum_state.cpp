#include "decomodes/quantum_state.hpp"

#include <cmath>
#include <sstream>

namespace decomodes {

std::string to_string(Mode mode) { return mode == Mode::A ? "A" : "B"; }

Mode parse_mode(const std::string& text) {
  if (text == "A" || text == "a") return Mode::A;
  if (text == "B" || text == "b") return Mode::B;
  throw DomainError("unknown decoherence mode '" + text + "' (expected A or B)");
}

double max_abs_diff(const Matrix4c& a, const Matrix4c& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

std::string Violation::describe() const {
  std::ostringstream os;
  switch (kind) {
    case Kind::non_finite:
      os << "non-finite entries: " << magnitude;
      break;
    case Kind::hermiticity:
      os << "hermiticity violated: max |m - m^dagger| = " << magnitude;
      break;
    case Kind::trace:
      os << "trace violated: |Tr m - 1| = " << magnitude;
      break;
    case Kind::positivity:
      os << "positivity violated: min eigenvalue = " << magnitude;
      break;
  }
  return os.str();
}

std::string ValidationReport::describe() const {
  if (ok()) return "valid density matrix";
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.describe();
  }
  return out;
}

ValidationReport validate(const Matrix4c& input, Repair repair) {
  ValidationReport report;

  int bad = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (!std::isfinite(input(i, j).real()) || !std::isfinite(input(i, j).imag())) ++bad;
  if (bad > 0) {
    report.violations.push_back({Violation::Kind::non_finite, static_cast<double>(bad)});
    return report;
  }

  Matrix4c m = input;
  if (repair == Repair::clamp_negative_eigenvalues) {
    Matrix4c h = 0.5 * (m + m.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
    Eigen::Vector4d ev = es.eigenvalues();
    bool clamped = false;
    for (int i = 0; i < 4; ++i) {
      if (ev(i) < 0.0 && ev(i) >= -tolerance::kNegativeEigenvalue) {
        ev(i) = 0.0;
        clamped = true;
      }
    }
    if (clamped) {
      m = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
      const double tr = m.trace().real();
      if (tr > 0.0) m /= tr;
    }
  }

  const double herm = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (herm > tolerance::kHermiticity)
    report.violations.push_back({Violation::Kind::hermiticity, herm});

  const double tr_err = std::abs(m.trace() - Complex(1.0, 0.0));
  if (tr_err > tolerance::kTrace) report.violations.push_back({Violation::Kind::trace, tr_err});

  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  const double min_ev = es.eigenvalues().minCoeff();
  if (min_ev < -tolerance::kNegativeEigenvalue)
    report.violations.push_back({Violation::Kind::positivity, min_ev});

  if (report.violations.empty()) report.state = DensityMatrix(m);
  return report;
}

DensityMatrix DensityMatrix::from_matrix(const Matrix4c& m, Repair repair) {
  auto report = validate(m, repair);
  if (!report.ok()) throw ValidationError(report.describe());
  return *report.state;
}

Eigen::Vector4d DensityMatrix::eigenvalues() const {
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(0.5 * (m_ + m_.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

PureState PureState::from_amplitudes(const Vector4c& amplitudes) {
  if (!amplitudes.allFinite()) throw DomainError("state amplitudes must be finite");
  const double norm2 = amplitudes.squaredNorm();
  if (std::abs(norm2 - 1.0) > tolerance::kNorm) {
    std::ostringstream os;
    os << "state vector not normalised: ||psi||^2 = " << norm2;
    throw DomainError(os.str());
  }
  return PureState(amplitudes);
}

BellWeights BellWeights::create(const std::array<double, 4>& nu) {
  double sum = 0.0;
  for (double v : nu) {
    if (!std::isfinite(v) || v < 0.0) throw DomainError("Bell weights must be finite and nonnegative");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    std::ostringstream os;
    os << "Bell weights must sum to 1 (got " << sum << ")";
    throw DomainError(os.str());
  }
  return BellWeights(nu);
}

PureState basis_state(int k) {
  if (k < 1 || k > 4) throw DomainError("basis index must be in 1..4");
  Vector4c v = Vector4c::Zero();
  v(k - 1) = 1.0;
  return PureState::from_amplitudes(v);
}

PureState bell_state(int index) {
  const double r = 1.0 / std::sqrt(2.0);
  Vector4c v = Vector4c::Zero();
  switch (index) {
    case 1: v << r, 0, 0, r; break;
    case 2: v << r, 0, 0, -r; break;
    case 3: v << 0, r, r, 0; break;
    case 4: v << 0, r, -r, 0; break;
    default: throw DomainError("Bell state index must be in 1..4");
  }
  return PureState::from_amplitudes(v);
}

DensityMatrix bell_diagonal(const BellWeights& w) {
  Matrix4c m = Matrix4c::Zero();
  m(0, 0) = m(3, 3) = 0.5 * w.sigma1();
  m(1, 1) = m(2, 2) = 0.5 * w.sigma2();
  m(0, 3) = m(3, 0) = 0.5 * w.delta1();
  m(1, 2) = m(2, 1) = 0.5 * w.delta2();
  return DensityMatrix::from_matrix(m);
}

DensityMatrix from_pure(const PureState& psi) {
  const Vector4c& v = psi.amplitudes();
  Matrix4c m = v * v.adjoint();
  // Exactly Hermitian regardless of rounding in the outer product.
  m = 0.5 * (m + m.adjoint()).eval();
  return DensityMatrix::from_matrix(m);
}

// Built from the Bell-diagonal form so the entries are exactly +-1/2.
DensityMatrix experiment_initial() { return bell_diagonal(BellWeights::create({0.0, 0.0, 0.0, 1.0})); }

DensityMatrix maximally_mixed() { return DensityMatrix::from_matrix(Matrix4c::Identity() / 4.0); }

}  // namespace decomodes
