#include "decomodes/interferometer.hpp"

#include <cmath>
#include <random>
#include <thread>

#include "decomodes/pauli.hpp"

namespace decomodes {

namespace {

// One term of the expansion U = sum_j exp(i c_j . X) A_j of the conditioned
// unitary, with X the vector of independent Gaussian angles.
struct PhaseTerm {
  Matrix4c op;
  std::vector<double> coeff;
};

Matrix4c path_projector(int path) {
  Matrix2c p = Matrix2c::Zero();
  p(path, path) = 1.0;
  return pauli::kron(Matrix2c::Identity(), p);
}

// Spectral projector of sigma_n for eigenvalue `sign`.
Matrix2c spin_projector(Axis axis, int sign) {
  const Matrix2c n = axis == Axis::z ? pauli::z() : pauli::x();
  return 0.5 * (Matrix2c::Identity() + static_cast<double>(sign) * n);
}

// Linear map from independent draws to (alpha, beta, gamma, delta).
std::vector<std::vector<double>> angle_map(const FieldSetup& setup) {
  const int n = independent_angle_count(setup);
  std::vector<std::vector<double>> rows(4, std::vector<double>(n, 0.0));
  if (setup.mode == Mode::B) {
    for (int k = 0; k < 4; ++k) rows[k][k] = 1.0;
    return rows;
  }
  switch (setup.variant) {
    case FieldVariant::both_paths_independent:
      rows[0][0] = 1.0;
      rows[1][1] = 1.0;
      break;
    case FieldVariant::single_field_one_path:
      rows[1][0] = 1.0;
      break;
    case FieldVariant::single_field_both_paths:
      rows[0][0] = 1.0;
      rows[1][0] = 1.0;
      break;
  }
  return rows;
}

std::vector<PhaseTerm> expand_conditioned_unitary(const FieldSetup& setup) {
  const auto map = angle_map(setup);
  const std::size_t n = map.front().size();
  std::vector<PhaseTerm> terms;
  for (int path : {0, 1}) {
    const auto& z_row = map[path];      // alpha (I) or beta (II)
    const auto& x_row = map[2 + path];  // gamma (I) or delta (II)
    const Matrix4c on_path = path_projector(path);
    for (int zs : {1, -1}) {
      const std::vector<int> x_signs = setup.mode == Mode::B ? std::vector<int>{1, -1} : std::vector<int>{0};
      for (int xs : x_signs) {
        Matrix2c spin = spin_projector(Axis::z, zs);
        if (xs != 0) spin = spin * spin_projector(Axis::x, xs);
        PhaseTerm term{pauli::kron(spin, Matrix2c::Identity()) * on_path, std::vector<double>(n, 0.0)};
        for (std::size_t v = 0; v < n; ++v)
          term.coeff[v] = 0.5 * (zs * z_row[v] + xs * x_row[v]);
        terms.push_back(std::move(term));
      }
    }
  }
  return terms;
}

// Welford accumulator for the real and imaginary parts of each element.
struct ElementStats {
  std::size_t count = 0;
  Matrix4d mean_re = Matrix4d::Zero();
  Matrix4d mean_im = Matrix4d::Zero();
  Matrix4d m2_re = Matrix4d::Zero();
  Matrix4d m2_im = Matrix4d::Zero();

  void add(const Matrix4c& x) {
    ++count;
    const double inv = 1.0 / static_cast<double>(count);
    const Matrix4d dre = x.real() - mean_re;
    const Matrix4d dim = x.imag() - mean_im;
    mean_re += dre * inv;
    mean_im += dim * inv;
    m2_re += dre.cwiseProduct(x.real() - mean_re);
    m2_im += dim.cwiseProduct(x.imag() - mean_im);
  }

  void merge(const ElementStats& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count);
    const double nb = static_cast<double>(o.count);
    const double n = na + nb;
    const Matrix4d dre = o.mean_re - mean_re;
    const Matrix4d dim = o.mean_im - mean_im;
    mean_re += dre * (nb / n);
    mean_im += dim * (nb / n);
    m2_re += o.m2_re + dre.cwiseAbs2() * (na * nb / n);
    m2_im += o.m2_im + dim.cwiseAbs2() * (na * nb / n);
    count += o.count;
  }
};

}  // namespace

double larmor_frequency(double field_tesla) {
  return 2.0 * constants::kBohrMagneton * field_tesla / constants::kReducedPlanck;
}

double rotation_angle(double field_tesla, double dwell_seconds) {
  if (field_tesla < 0.0 || dwell_seconds < 0.0)
    throw DomainError("field magnitude and dwell time must be nonnegative");
  return larmor_frequency(field_tesla) * dwell_seconds;
}

Matrix2c spin_rotation(Axis axis, double angle) {
  const Matrix2c n = axis == Axis::z ? pauli::z() : pauli::x();
  return std::cos(0.5 * angle) * Matrix2c::Identity() + kI * std::sin(0.5 * angle) * n;
}

std::string to_string(FieldVariant v) {
  switch (v) {
    case FieldVariant::both_paths_independent: return "both_paths_independent";
    case FieldVariant::single_field_one_path: return "single_field_one_path";
    case FieldVariant::single_field_both_paths: return "single_field_both_paths";
  }
  return "?";
}

FieldVariant parse_variant(const std::string& text) {
  for (auto v : {FieldVariant::both_paths_independent, FieldVariant::single_field_one_path,
                 FieldVariant::single_field_both_paths})
    if (to_string(v) == text) return v;
  throw DomainError("unknown field variant '" + text + "'");
}

void FieldSetup::check() const {
  if (!std::isfinite(sigma) || sigma < 0.0) throw DomainError("sigma must be finite and >= 0");
  if (mode == Mode::B && variant != FieldVariant::both_paths_independent)
    throw UnsupportedError("mode B is realised with independent fields in both paths only");
}

Matrix4c conditioned_unitary(const ShotAngles& shot, Mode mode) {
  Matrix2c u_one = spin_rotation(Axis::z, shot.alpha);
  Matrix2c u_two = spin_rotation(Axis::z, shot.beta);
  if (mode == Mode::B) {
    if (!shot.gamma || !shot.delta) throw DomainError("mode B needs the x-rotation angles gamma and delta");
    u_one = u_one * spin_rotation(Axis::x, *shot.gamma);
    u_two = u_two * spin_rotation(Axis::x, *shot.delta);
  }
  return pauli::kron(u_one, Matrix2c::Identity()) * path_projector(0) +
         pauli::kron(u_two, Matrix2c::Identity()) * path_projector(1);
}

DensityMatrix single_shot_state(const DensityMatrix& rho0, const ShotAngles& shot, Mode mode) {
  const Matrix4c u = conditioned_unitary(shot, mode);
  Matrix4c out = u * rho0.matrix() * u.adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::from_matrix(out);
}

int independent_angle_count(const FieldSetup& setup) {
  if (setup.mode == Mode::B) return 4;
  return setup.variant == FieldVariant::both_paths_independent ? 2 : 1;
}

ShotAngles angles_from_draws(const FieldSetup& setup, const std::vector<double>& draws) {
  const auto map = angle_map(setup);
  if (draws.size() != map.front().size()) throw DomainError("wrong number of angle draws");
  std::array<double, 4> a{};
  for (int k = 0; k < 4; ++k)
    for (std::size_t v = 0; v < draws.size(); ++v) a[k] += map[k][v] * draws[v];
  ShotAngles shot{a[0], a[1], std::nullopt, std::nullopt};
  if (setup.mode == Mode::B) {
    shot.gamma = a[2];
    shot.delta = a[3];
  }
  return shot;
}

DensityMatrix ensemble_average_analytic(const DensityMatrix& rho0, const FieldSetup& setup) {
  setup.check();
  const auto terms = expand_conditioned_unitary(setup);
  const double var = setup.sigma * setup.sigma;
  Matrix4c out = Matrix4c::Zero();
  for (const auto& tj : terms) {
    for (const auto& tk : terms) {
      // E[exp(i (c_j - c_k).X)] = exp(-sigma^2 |c_j - c_k|^2 / 2).
      double dist2 = 0.0;
      for (std::size_t v = 0; v < tj.coeff.size(); ++v) {
        const double d = tj.coeff[v] - tk.coeff[v];
        dist2 += d * d;
      }
      const Matrix4c contrib = tj.op * rho0.matrix() * tk.op.adjoint();
      if (contrib.cwiseAbs().maxCoeff() == 0.0) continue;
      out += std::exp(-0.5 * var * dist2) * contrib;
    }
  }
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::from_matrix(out);
}

EnsembleEstimate ensemble_average_monte_carlo(const DensityMatrix& rho0, const FieldSetup& setup,
                                              std::size_t samples, std::uint64_t seed,
                                              unsigned workers) {
  setup.check();
  if (samples < 2) throw DomainError("Monte Carlo averaging needs at least 2 samples");
  if (workers == 0) throw DomainError("worker count must be >= 1");
  const unsigned blocks = static_cast<unsigned>(std::min<std::size_t>(workers, samples));
  const int n_angles = independent_angle_count(setup);

  std::vector<ElementStats> partial(blocks);
  auto run_block = [&](unsigned b) {
    const std::size_t begin = samples * b / blocks;
    const std::size_t end = samples * (b + 1) / blocks;
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> draws(n_angles);
    ElementStats& stats = partial[b];
    for (std::size_t i = begin; i < end; ++i) {
      for (auto& d : draws) d = setup.sigma * gauss(rng);
      const Matrix4c u = conditioned_unitary(angles_from_draws(setup, draws), setup.mode);
      stats.add(u * rho0.matrix() * u.adjoint());
    }
  };

  if (blocks == 1) {
    run_block(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(blocks);
    for (unsigned b = 0; b < blocks; ++b) pool.emplace_back(run_block, b);
  }

  ElementStats total;
  for (const auto& p : partial) total.merge(p);

  const double n = static_cast<double>(total.count);
  Matrix4c mean = total.mean_re.cast<Complex>() + kI * total.mean_im.cast<Complex>();
  mean = 0.5 * (mean + mean.adjoint()).eval();
  const Matrix4d se_re = (total.m2_re / (n - 1.0) / n).cwiseMax(0.0).cwiseSqrt();
  const Matrix4d se_im = (total.m2_im / (n - 1.0) / n).cwiseMax(0.0).cwiseSqrt();
  return {DensityMatrix::from_matrix(mean), se_re, se_im, samples, seed};
}

double lambda_t_from_sigma(const FieldSetup& setup) {
  setup.check();
  const double s2 = setup.sigma * setup.sigma;
  if (setup.mode == Mode::B) return s2 / 2.0;
  switch (setup.variant) {
    case FieldVariant::both_paths_independent: return s2 / 4.0;
    case FieldVariant::single_field_one_path: return s2 / 8.0;
    case FieldVariant::single_field_both_paths: return s2 / 2.0;
  }
  return s2 / 4.0;
}

double lambda_from_sigma(const FieldSetup& setup, double dwell_time) {
  if (!std::isfinite(dwell_time) || dwell_time <= 0.0) throw DomainError("dwell time must be > 0");
  return lambda_t_from_sigma(setup) / dwell_time;
}

CalibrationFit calibrate(Mode mode, const std::vector<double>& sigmas, std::size_t samples,
                         std::uint64_t seed, unsigned workers) {
  if (sigmas.empty()) throw DomainError("calibration needs at least one sigma");
  const DensityMatrix singlet = experiment_initial();
  CalibrationFit fit;
  double sxx = 0.0;
  double sxy = 0.0;
  double var_num = 0.0;
  for (std::size_t i = 0; i < sigmas.size(); ++i) {
    const FieldSetup setup{mode, sigmas[i], FieldVariant::both_paths_independent};
    const auto est = ensemble_average_monte_carlo(singlet, setup, samples, seed + i, workers);
    const Complex z = est.mean(1, 2);
    const double modulus = std::abs(z);
    if (modulus <= 0.0) throw NumericError("coherence vanished; sigma too large to calibrate");
    const double se_mod =
        std::hypot(z.real() * est.stderr_re(1, 2), z.imag() * est.stderr_im(1, 2)) / modulus;
    const CalibrationPoint pt{sigmas[i], -std::log(2.0 * modulus), se_mod / modulus};
    fit.points.push_back(pt);

    const double x = pt.sigma * pt.sigma;
    sxx += x * x;
    sxy += x * pt.lambda_t;
    var_num += x * x * pt.lambda_t_error * pt.lambda_t_error;
  }
  if (sxx <= 0.0) throw DomainError("calibration needs a nonzero sigma");
  fit.coefficient = sxy / sxx;
  fit.coefficient_error = std::sqrt(var_num) / sxx;
  return fit;
}

}  // namespace decomodes
