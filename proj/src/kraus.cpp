#include "decomodes/kraus.hpp"

#include <cmath>
#include <sstream>

#include "decomodes/pauli.hpp"

namespace decomodes {

namespace {

void check_weight(double w) {
  if (!std::isfinite(w) || w < 0.0 || w > kMaxKrausWeight) {
    std::ostringstream os;
    os << "Kraus weight w = " << w << " outside [0, 4/3]";
    throw DomainError(os.str());
  }
}

double completeness(const std::vector<Matrix4c>& ops) {
  Matrix4c sum = Matrix4c::Zero();
  for (const auto& m : ops) sum += m.adjoint() * m;
  return max_abs_diff(sum, Matrix4c::Identity());
}

std::vector<Matrix4c> pauli_family(double w, const Matrix2c& spin_flip) {
  using namespace pauli;
  const double c0 = std::sqrt(1.0 - 0.75 * w);
  const double c = std::sqrt(0.25 * w);
  return {c0 * kron(identity(), identity()), c * kron(identity(), z()),
          c * kron(spin_flip, identity()), c * kron(spin_flip, z())};
}

}  // namespace

KrausSet KrausSet::custom(std::vector<Matrix4c> operators, double weight) {
  if (operators.empty()) throw DomainError("Kraus set needs at least one operator");
  const double err = completeness(operators);
  if (err > 1e-12) {
    std::ostringstream os;
    os << "Kraus operators incomplete: max |sum M^dagger M - 1| = " << err;
    throw DomainError(os.str());
  }
  return KrausSet(std::move(operators), weight, Family::custom);
}

double KrausSet::completeness_error() const { return completeness(ops_); }

KrausSet kraus_set_a(double w) {
  check_weight(w);
  return KrausSet(pauli_family(w, pauli::z()), w, KrausSet::Family::phase_flip_a);
}

KrausSet kraus_set_b(double w) {
  check_weight(w);
  return KrausSet(pauli_family(w, pauli::x()), w, KrausSet::Family::bit_phase_flip_b);
}

KrausSet kraus_set_for(Mode mode, double w) {
  return mode == Mode::A ? kraus_set_a(w) : kraus_set_b(w);
}

DensityMatrix apply_channel(const DensityMatrix& rho, const KrausSet& k) {
  if (k.completeness_error() > 1e-12) throw DomainError("Kraus set is not trace preserving");
  Matrix4c out = Matrix4c::Zero();
  for (const auto& m : k.operators()) out += m * rho.matrix() * m.adjoint();
  return DensityMatrix::from_matrix(out);
}

DensityMatrix trotter_evolve(const DensityMatrix& rho0, Mode mode, double lambda, double t, int n) {
  if (n < 1) throw DomainError("trotter step count must be >= 1");
  if (!std::isfinite(lambda) || lambda < 0.0) throw DomainError("lambda must be >= 0");
  if (!std::isfinite(t) || t < 0.0) throw DomainError("time must be >= 0");
  const KrausSet step = kraus_set_for(mode, lambda * t / n);
  DensityMatrix rho = rho0;
  for (int i = 0; i < n; ++i) rho = apply_channel(rho, step);
  return rho;
}

LindbladGenerators lindblad_generators_from_kraus(const KrausSet& k, double dt) {
  if (k.family() == KrausSet::Family::custom)
    throw UnsupportedError("generator recovery is implemented for the mode A/B Kraus sets only");
  if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("dt must be > 0");

  LindbladGenerators out;
  out.lambda = k.weight() / dt;
  Matrix4c rate_sum = Matrix4c::Zero();
  const double scale = 1.0 / std::sqrt(dt);
  for (std::size_t i = 1; i < k.operators().size(); ++i) {
    out.operators.push_back(scale * k.operators()[i]);
    rate_sum += out.operators.back().adjoint() * out.operators.back();
  }
  const Matrix4c first_order = Matrix4c::Identity() - 0.5 * dt * rate_sum;
  out.residual = max_abs_diff(k.operators()[0], first_order);
  return out;
}

}  // namespace decomodes
