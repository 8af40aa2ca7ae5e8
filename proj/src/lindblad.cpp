#include "decomodes/lindblad.hpp"

#include <cmath>
#include <sstream>

namespace decomodes {

namespace {

void check_time(double t) {
  if (!std::isfinite(t) || t < 0.0) throw DomainError("evolution time must be finite and >= 0");
}

Vector4c unit(int k) {
  Vector4c v = Vector4c::Zero();
  v(k) = 1.0;
  return v;
}

// Closed-form solution of the coupled spin-coherence pair
//   x' = (-i w - l/2) x + (l/2) y,   y' = (l/2) x + (i w - l/2) y.
struct PairPropagator {
  Complex diag_x;  // coefficient of x0 in x(t)
  Complex diag_y;  // coefficient of y0 in y(t)
  Complex cross;   // coefficient of y0 in x(t) and of x0 in y(t)
};

PairPropagator coherence_pair(double lambda, double omega, double t) {
  const Complex mu = std::sqrt(Complex(lambda * lambda - 4.0 * omega * omega, 0.0));
  const Complex z = 0.5 * mu * t;
  const double damp = std::exp(-0.5 * lambda * t);

  // damped_cosh = e^{-lt/2} cosh(mu t/2), damped_sinhc = e^{-lt/2} sinh(mu t/2)/mu.
  Complex damped_cosh;
  Complex damped_sinhc;
  if (std::abs(z) < 1e-3) {
    const Complex z2 = z * z;
    damped_cosh = damp * (1.0 + z2 / 2.0 + z2 * z2 / 24.0 + z2 * z2 * z2 / 720.0);
    damped_sinhc = damp * 0.5 * t * (1.0 + z2 / 6.0 + z2 * z2 / 120.0 + z2 * z2 * z2 / 5040.0);
  } else {
    const Complex up = std::exp(0.5 * (mu - lambda) * t);
    const Complex down = std::exp(0.5 * (-mu - lambda) * t);
    damped_cosh = 0.5 * (up + down);
    damped_sinhc = 0.5 * (up - down) / mu;
  }
  const Complex phase = 2.0 * kI * omega * damped_sinhc;
  return {damped_cosh - phase, damped_cosh + phase, lambda * damped_sinhc};
}

}  // namespace

Matrix4c SystemHamiltonian::matrix() const {
  Matrix4c h = Matrix4c::Zero();
  for (int k = 0; k < 4; ++k) h(k, k) = energies[k];
  return h;
}

void DecoherenceSpec::check() const {
  if (!std::isfinite(lambda) || lambda < 0.0)
    throw DomainError("decoherence rate lambda must be finite and >= 0");
  for (double e : hamiltonian.energies)
    if (!std::isfinite(e)) throw DomainError("energies must be finite");
}

ProjectorSet ProjectorSet::from_states(const std::array<Vector4c, 4>& states) {
  std::array<Matrix4c, 4> p;
  Matrix4c sum = Matrix4c::Zero();
  for (std::size_t k = 0; k < 4; ++k) {
    p[k] = states[k] * states[k].adjoint();
    if (max_abs_diff(p[k] * p[k], p[k]) > 1e-12 || max_abs_diff(p[k], p[k].adjoint()) > 1e-12)
      throw DomainError("projector states must be normalised");
    sum += p[k];
  }
  if (max_abs_diff(sum, Matrix4c::Identity()) > 1e-12)
    throw DomainError("projectors must resolve the identity");
  return ProjectorSet(p);
}

ProjectorSet projectors_mode_a() { return ProjectorSet::from_states({unit(0), unit(1), unit(2), unit(3)}); }

ProjectorSet projectors_mode_b() {
  const double r = 1.0 / std::sqrt(2.0);
  // Order follows the rotated basis: |+>|I>, |+>|II>, |->|I>, |->|II>.
  return ProjectorSet::from_states({r * (unit(0) + unit(2)), r * (unit(1) + unit(3)),
                                    r * (unit(0) - unit(2)), r * (unit(1) - unit(3))});
}

ProjectorSet projectors_for(Mode mode) {
  return mode == Mode::A ? projectors_mode_a() : projectors_mode_b();
}

Matrix4c dissipator(const Matrix4c& rho, const ProjectorSet& p, double lambda) {
  Matrix4c pinched = Matrix4c::Zero();
  for (const auto& pk : p.projectors()) pinched += pk * rho * pk;
  return lambda * (rho - pinched);
}

Matrix4c master_rhs(const Matrix4c& rho, const Matrix4c& hamiltonian, const ProjectorSet& p,
                    double lambda) {
  return -kI * (hamiltonian * rho - rho * hamiltonian) - dissipator(rho, p, lambda);
}

DensityMatrix evolve_mode_a(const DensityMatrix& rho0, const DecoherenceSpec& spec, double t) {
  check_time(t);
  spec.check();
  const auto& e = spec.hamiltonian.energies;
  const double decay = std::exp(-spec.lambda * t);
  Matrix4c out = rho0.matrix();
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j)
      if (k != j) out(k, j) *= std::exp(-kI * ((e[k] - e[j]) * t)) * decay;
  return DensityMatrix::from_matrix(out);
}

DensityMatrix evolve_mode_b(const DensityMatrix& rho0, const DecoherenceSpec& spec, double t) {
  check_time(t);
  spec.check();
  const auto& e = spec.hamiltonian.energies;
  const double lambda = spec.lambda;
  const double decay = std::exp(-lambda * t);
  const Matrix4c& in = rho0.matrix();
  Matrix4c out = Matrix4c::Zero();

  // Coherences between different paths.
  for (int k = 0; k < 4; ++k)
    for (int j = 0; j < 4; ++j)
      if (k % 2 != j % 2) out(k, j) = std::exp(-kI * ((e[k] - e[j]) * t)) * decay * in(k, j);

  const double keep = 0.5 * (1.0 + decay);
  const double move = -0.5 * std::expm1(-lambda * t);
  for (int a : {0, 1}) {
    const int b = a + 2;
    // Populations of the same path relax towards each other.
    out(a, a) = keep * in(a, a) + move * in(b, b);
    out(b, b) = move * in(a, a) + keep * in(b, b);

    // Spin coherences within a path.
    const PairPropagator prop = coherence_pair(lambda, e[a] - e[b], t);
    out(a, b) = prop.diag_x * in(a, b) + prop.cross * in(b, a);
    out(b, a) = prop.diag_y * in(b, a) + prop.cross * in(a, b);
  }
  return DensityMatrix::from_matrix(out);
}

DensityMatrix evolve(const DensityMatrix& rho0, const DecoherenceSpec& spec, double t) {
  return spec.mode == Mode::A ? evolve_mode_a(rho0, spec, t) : evolve_mode_b(rho0, spec, t);
}

DensityMatrix integrate_master(const DensityMatrix& rho0, const ProjectorSet& p,
                               const DecoherenceSpec& spec, double t, double dt) {
  check_time(t);
  spec.check();
  if (!std::isfinite(dt) || dt <= 0.0) throw DomainError("integrator step dt must be > 0");

  const Matrix4c h = spec.hamiltonian.matrix();
  const double lambda = spec.lambda;
  auto rhs = [&](const Matrix4c& r) { return master_rhs(r, h, p, lambda); };

  Matrix4c rho = rho0.matrix();
  double now = 0.0;
  while (now < t) {
    double step = dt;
    // Absorb a sliver of rounding into the final step instead of taking a
    // vanishing extra step.
    if (t - now <= step * (1.0 + 1e-9)) step = t - now;
    const Matrix4c k1 = rhs(rho);
    const Matrix4c k2 = rhs(rho + 0.5 * step * k1);
    const Matrix4c k3 = rhs(rho + 0.5 * step * k2);
    const Matrix4c k4 = rhs(rho + step * k3);
    rho += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    now = (step == t - now) ? t : now + step;
  }

  const double drift = std::max((rho - rho.adjoint()).cwiseAbs().maxCoeff(),
                                std::abs(rho.trace() - Complex(1.0, 0.0)));
  if (drift > 1e-9 * std::max(1.0, t)) {
    std::ostringstream os;
    os << "integrator drift " << drift << " exceeds tolerance";
    throw NumericError(os.str());
  }
  Matrix4c fixed = 0.5 * (rho + rho.adjoint());
  fixed /= fixed.trace().real();
  return DensityMatrix::from_matrix(fixed);
}

}  // namespace decomodes
