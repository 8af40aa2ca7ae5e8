#include "decomodes/tomography.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <random>

#include "decomodes/pauli.hpp"

namespace decomodes {

namespace {

int axis_index(PauliAxis a) { return static_cast<int>(a); }

Matrix2c axis_matrix(PauliAxis a) { return pauli::by_index(axis_index(a) + 1); }

Matrix2c eigen_projector(PauliAxis a, int sign) {
  return 0.5 * (Matrix2c::Identity() + static_cast<double>(sign) * axis_matrix(a));
}

int setting_index(const MeasurementSetting& s) { return 3 * axis_index(s.spin) + axis_index(s.path); }

Reconstruction reconstruct(const std::vector<std::pair<MeasurementSetting, OutcomeProbabilities>>& freq) {
  std::array<std::optional<OutcomeProbabilities>, 9> by_setting;
  for (const auto& [s, p] : freq) {
    auto& slot = by_setting[setting_index(s)];
    if (slot) throw DomainError("duplicate measurement setting " + to_string(s.spin) + to_string(s.path));
    slot = p;
  }
  for (const auto& s : all_settings())
    if (!by_setting[setting_index(s)])
      throw DomainError("missing measurement setting " + to_string(s.spin) + to_string(s.path));

  // corr(a, b) = <sigma_a (x) sigma_b>, index 0 = identity.
  double corr[4][4] = {};
  corr[0][0] = 1.0;
  for (const auto& s : all_settings()) {
    const auto& p = *by_setting[setting_index(s)];
    const int a = axis_index(s.spin) + 1;
    const int b = axis_index(s.path) + 1;
    corr[a][b] = p[0] - p[1] - p[2] + p[3];
    corr[a][0] += (p[0] + p[1] - p[2] - p[3]) / 3.0;
    corr[0][b] += (p[0] - p[1] + p[2] - p[3]) / 3.0;
  }

  Matrix4c raw = Matrix4c::Zero();
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      raw += 0.25 * corr[a][b] * pauli::kron(pauli::by_index(a), pauli::by_index(b));
  raw = 0.5 * (raw + raw.adjoint()).eval();

  DensityMatrix estimate = project_psd(raw);
  const double residual = frobenius_distance(estimate.matrix(), raw);
  return {estimate, raw, residual};
}

}  // namespace

std::string to_string(PauliAxis a) {
  switch (a) {
    case PauliAxis::X: return "X";
    case PauliAxis::Y: return "Y";
    case PauliAxis::Z: return "Z";
  }
  return "?";
}

PauliAxis parse_pauli_axis(const std::string& text) {
  if (text == "X" || text == "x") return PauliAxis::X;
  if (text == "Y" || text == "y") return PauliAxis::Y;
  if (text == "Z" || text == "z") return PauliAxis::Z;
  throw DomainError("unknown Pauli axis '" + text + "'");
}

std::array<MeasurementSetting, 9> all_settings() {
  std::array<MeasurementSetting, 9> out{};
  int k = 0;
  for (auto s : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z})
    for (auto p : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) out[k++] = {s, p};
  return out;
}

OutcomeProbabilities CountRecord::frequencies() const {
  if (shots == 0) throw DomainError("count record with zero shots");
  OutcomeProbabilities f{};
  std::uint64_t total = 0;
  for (int i = 0; i < 4; ++i) {
    f[i] = static_cast<double>(counts[i]) / static_cast<double>(shots);
    total += counts[i];
  }
  if (total != shots) throw DomainError("counts do not sum to shots");
  return f;
}

OutcomeProbabilities outcome_probabilities(const DensityMatrix& rho, const MeasurementSetting& s) {
  OutcomeProbabilities p{};
  int k = 0;
  double sum = 0.0;
  for (int a : {1, -1}) {
    for (int b : {1, -1}) {
      const Matrix4c proj = pauli::kron(eigen_projector(s.spin, a), eigen_projector(s.path, b));
      p[k] = std::max(0.0, (rho.matrix() * proj).trace().real());
      sum += p[k];
      ++k;
    }
  }
  for (auto& v : p) v /= sum;
  return p;
}

std::vector<CountRecord> simulate_counts(const DensityMatrix& rho, std::uint64_t shots,
                                         std::uint64_t seed) {
  if (shots < 1) throw DomainError("shots must be >= 1");
  std::vector<CountRecord> out;
  for (const auto& s : all_settings()) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(setting_index(s))};
    std::mt19937_64 rng(seq);
    const auto p = outcome_probabilities(rho, s);

    // Multinomial as a chain of conditional binomials.
    CountRecord rec{s, {0, 0, 0, 0}, shots};
    std::uint64_t remaining = shots;
    double mass = 1.0;
    for (int i = 0; i < 3; ++i) {
      if (remaining == 0) break;
      const double q = mass > 0.0 ? std::clamp(p[i] / mass, 0.0, 1.0) : 0.0;
      std::binomial_distribution<std::uint64_t> draw(remaining, q);
      rec.counts[i] = draw(rng);
      remaining -= rec.counts[i];
      mass -= p[i];
    }
    rec.counts[3] = remaining;
    out.push_back(rec);
  }
  return out;
}

std::vector<ProbabilityRecord> exact_records(const DensityMatrix& rho) {
  std::vector<ProbabilityRecord> out;
  for (const auto& s : all_settings()) out.push_back({s, outcome_probabilities(rho, s)});
  return out;
}

Reconstruction reconstruct_linear(const std::vector<CountRecord>& records) {
  std::vector<std::pair<MeasurementSetting, OutcomeProbabilities>> freq;
  for (const auto& r : records) freq.emplace_back(r.setting, r.frequencies());
  return reconstruct(freq);
}

Reconstruction reconstruct_linear(const std::vector<ProbabilityRecord>& records) {
  std::vector<std::pair<MeasurementSetting, OutcomeProbabilities>> freq;
  for (const auto& r : records) freq.emplace_back(r.setting, r.probabilities);
  return reconstruct(freq);
}

DensityMatrix project_psd(const Matrix4c& m) {
  if (!m.allFinite()) throw DomainError("matrix has non-finite entries");
  if (max_abs_diff(m, m.adjoint()) > 1e-9) throw DomainError("matrix is not Hermitian");
  const Matrix4c h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix4c> es(h);
  const Eigen::Vector4d lam = es.eigenvalues();
  if (lam.maxCoeff() <= 0.0) throw DomainError("no positive spectrum to project");
  // Already feasible: return the symmetrised input instead of a rebuilt one.
  if (lam.minCoeff() >= 0.0 && std::abs(h.trace().real() - 1.0) <= 1e-12)
    return DensityMatrix::from_matrix(h);

  // Euclidean projection of the spectrum onto the probability simplex; with
  // the eigenvectors kept this is the Frobenius-nearest density matrix.
  std::array<double, 4> sorted{lam(0), lam(1), lam(2), lam(3)};
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double prefix = 0.0, shift = 0.0;
  for (int j = 0; j < 4; ++j) {
    prefix += sorted[j];
    const double candidate = (prefix - 1.0) / (j + 1);
    if (sorted[j] - candidate > 0.0) shift = candidate;
  }
  const Eigen::Vector4d ev = (lam.array() - shift).cwiseMax(0.0);
  Matrix4c out = es.eigenvectors() * ev.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
  out = 0.5 * (out + out.adjoint()).eval();
  return DensityMatrix::from_matrix(out);
}

double frobenius_distance(const Matrix4c& a, const Matrix4c& b) { return (a - b).norm(); }

}  // namespace decomodes
