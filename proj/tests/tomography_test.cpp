#include "decomodes/tomography.hpp"

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "decomodes/lindblad.hpp"
#include "decomodes/pauli.hpp"
#include "support/random_states.hpp"

using namespace decomodes;

namespace {

Matrix2c pauli_of(PauliAxis a) {
  switch (a) {
    case PauliAxis::X: return pauli::x();
    case PauliAxis::Y: return pauli::y();
    case PauliAxis::Z: return pauli::z();
  }
  return pauli::identity();
}

// Born probabilities from the spectral projectors (1 +- sigma)/2.
OutcomeProbabilities born_oracle(const Matrix4c& rho, const MeasurementSetting& s) {
  OutcomeProbabilities p{};
  int k = 0;
  for (double a : {1.0, -1.0})
    for (double b : {1.0, -1.0}) {
      const Matrix2c pa = 0.5 * (pauli::identity() + a * pauli_of(s.spin));
      const Matrix2c pb = 0.5 * (pauli::identity() + b * pauli_of(s.path));
      p[k++] = (rho * pauli::kron(pa, pb)).trace().real();
    }
  return p;
}

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  return v[v.size() / 2];
}

}  // namespace

TEST(tomography, settings_enumerated) {
  auto all = all_settings();
  EXPECT_EQ(all.size(), 9u);
  EXPECT_EQ(all[0], (MeasurementSetting{PauliAxis::X, PauliAxis::X}));
  EXPECT_EQ(all[5], (MeasurementSetting{PauliAxis::Y, PauliAxis::Z}));
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) EXPECT_FALSE(all[i] == all[j]);
  EXPECT_EQ(parse_pauli_axis("y"), PauliAxis::Y);
  EXPECT_THROW(parse_pauli_axis("W"), DomainError);
}

TEST(tomography, probability_examples) {
  for (const auto& s : all_settings())
    for (double p : outcome_probabilities(maximally_mixed(), s)) EXPECT_NEAR(p, 0.25, 1e-15);
  for (auto axis : {PauliAxis::X, PauliAxis::Y, PauliAxis::Z}) {
    auto p = outcome_probabilities(experiment_initial(), {axis, axis});
    EXPECT_NEAR(p[0], 0.0, 1e-15);
    EXPECT_NEAR(p[1], 0.5, 1e-15);
    EXPECT_NEAR(p[2], 0.5, 1e-15);
    EXPECT_NEAR(p[3], 0.0, 1e-15);
  }
}

TEST(tomography, probabilities_match_born_rule) {
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    auto rho = fixtures::random_density(rng);
    for (const auto& s : all_settings()) {
      auto p = outcome_probabilities(rho, s);
      auto q = born_oracle(rho.matrix(), s);
      double sum = 0.0;
      for (int k = 0; k < 4; ++k) {
        EXPECT_NEAR(p[k], q[k], 1e-13);
        EXPECT_GE(p[k], 0.0);
        sum += p[k];
      }
      EXPECT_NEAR(sum, 1.0, 1e-12);
    }
  }
}

TEST(tomography, counts_concentrate) {
  const std::uint64_t shots = 1000000;
  auto records = simulate_counts(maximally_mixed(), shots, 5);
  const double bound = 5.0 * std::sqrt(shots * 0.25 * 0.75);
  for (const auto& r : records) {
    std::uint64_t total = 0;
    for (auto c : r.counts) {
      EXPECT_LE(std::abs(static_cast<double>(c) - shots / 4.0), bound);
      total += c;
    }
    EXPECT_EQ(total, shots);
  }
}

TEST(tomography, singlet_zz_never_agrees) {
  for (const auto& r : simulate_counts(experiment_initial(), 10000, 3)) {
    if (r.setting == MeasurementSetting{PauliAxis::Z, PauliAxis::Z}) {
      EXPECT_EQ(r.counts[0], 0u);
      EXPECT_EQ(r.counts[3], 0u);
    }
  }
}

TEST(tomography, counts_are_deterministic) {
  std::mt19937_64 rng(2);
  auto rho = fixtures::random_density(rng);
  auto a = simulate_counts(rho, 5000, 99);
  auto b = simulate_counts(rho, 5000, 99);
  auto c = simulate_counts(rho, 5000, 100);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].counts, b[i].counts);
    differs = differs || a[i].counts != c[i].counts;
  }
  EXPECT_TRUE(differs);
  EXPECT_THROW(simulate_counts(rho, 0, 1), DomainError);
}

TEST(tomography, exact_round_trip_examples) {
  auto singlet = reconstruct_linear(exact_records(experiment_initial()));
  EXPECT_LE(max_abs_diff(singlet.estimate.matrix(), experiment_initial().matrix()), 1e-10);

  auto b = evolve_mode_b(experiment_initial(), {Mode::B, 1.0, {}}, 1.0);
  auto rec = reconstruct_linear(exact_records(b));
  EXPECT_LE(max_abs_diff(rec.estimate.matrix(), b.matrix()), 1e-10);
  EXPECT_LE(rec.frobenius_residual, 1e-10);
}

TEST(tomography, exact_round_trip_random_states) {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    auto rho = i % 2 ? fixtures::random_density(rng) : from_pure(fixtures::random_pure(rng));
    auto rec = reconstruct_linear(exact_records(rho));
    EXPECT_LE(frobenius_distance(rec.estimate.matrix(), rho.matrix()), 1e-9);
  }
}

TEST(tomography, missing_or_duplicate_settings) {
  auto records = exact_records(experiment_initial());
  auto missing = records;
  missing.pop_back();
  EXPECT_THROW(reconstruct_linear(missing), DomainError);
  auto dup = records;
  dup.back() = dup.front();
  EXPECT_THROW(reconstruct_linear(dup), DomainError);
}

TEST(tomography, finite_shot_singlet) {
  auto rec = reconstruct_linear(simulate_counts(experiment_initial(), 10000, 7));
  EXPECT_LE(frobenius_distance(rec.estimate.matrix(), experiment_initial().matrix()), 0.1);
}

TEST(tomography, error_median_decreases_with_shots) {
  std::mt19937_64 rng(4);
  std::vector<DensityMatrix> states;
  for (int i = 0; i < 15; ++i) states.push_back(fixtures::random_density(rng));
  double previous = 1e300;
  for (std::uint64_t shots : {100u, 1000u, 10000u, 100000u}) {
    std::vector<double> err;
    for (std::size_t i = 0; i < states.size(); ++i) {
      auto rec = reconstruct_linear(simulate_counts(states[i], shots, 500 + i));
      err.push_back(frobenius_distance(rec.estimate.matrix(), states[i].matrix()));
    }
    const double m = median(err);
    EXPECT_LT(m, previous) << shots;
    previous = m;
  }
}

TEST(tomography, project_psd_examples) {
  std::mt19937_64 rng(5);
  auto rho = fixtures::random_density(rng);
  EXPECT_LE(max_abs_diff(project_psd(rho.matrix()).matrix(), rho.matrix()), 1e-12);

  Matrix4c m = Eigen::Vector4d(1.1, 0.1, -0.1, -0.1).cast<Complex>().asDiagonal();
  // Nearest point: shift the spectrum by 0.1 so the positive part sums to 1.
  Matrix4c expect = Eigen::Vector4d(1.0, 0.0, 0.0, 0.0).cast<Complex>().asDiagonal();
  EXPECT_LE(max_abs_diff(project_psd(m).matrix(), expect), 1e-12);
  Matrix4c inflated = Eigen::Vector4d(0.5, 0.3, 0.2, 0.2).cast<Complex>().asDiagonal();
  expect = Eigen::Vector4d(0.45, 0.25, 0.15, 0.15).cast<Complex>().asDiagonal();
  EXPECT_LE(max_abs_diff(project_psd(inflated).matrix(), expect), 1e-12);

  Matrix4c negative = Eigen::Vector4d(0.0, -0.1, -0.2, 0.0).cast<Complex>().asDiagonal();
  EXPECT_THROW(project_psd(negative), DomainError);
  EXPECT_THROW(project_psd(Matrix4c::Zero()), DomainError);
  Matrix4c skew = Matrix4c::Identity() / 4.0;
  skew(0, 1) = 0.1;
  EXPECT_THROW(project_psd(skew), DomainError);
}

TEST(tomography, project_psd_idempotent_and_non_expansive) {
  std::mt19937_64 rng(6);
  std::normal_distribution<double> g(0.0, 1.0);
  for (int i = 0; i < 100; ++i) {
    auto target = i % 2 ? from_pure(fixtures::random_pure(rng)) : fixtures::random_density(rng);
    // Traceless Hermitian perturbation, the shape of a finite-shot error.
    Matrix4c noise = fixtures::ginibre(rng);
    noise = 0.5 * (noise + noise.adjoint()).eval();
    noise -= noise.trace() / 4.0 * Matrix4c::Identity();
    noise *= 0.05 / noise.norm();
    const Matrix4c raw = target.matrix() + noise;

    auto once = project_psd(raw);
    auto twice = project_psd(once.matrix());
    EXPECT_LE(max_abs_diff(once.matrix(), twice.matrix()), 1e-12);
    EXPECT_LE(frobenius_distance(once.matrix(), target.matrix()),
              frobenius_distance(raw, target.matrix()) + 1e-12);
  }
}

TEST(tomography, project_psd_is_nearest) {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 100; ++i) {
    Matrix4c raw = fixtures::ginibre(rng);
    raw = 0.5 * (raw + raw.adjoint()).eval();
    raw += (1.0 - raw.trace().real()) / 4.0 * Matrix4c::Identity();
    const double d = frobenius_distance(project_psd(raw).matrix(), raw);
    for (int k = 0; k < 20; ++k) {
      auto other = k % 2 ? from_pure(fixtures::random_pure(rng)) : fixtures::random_density(rng);
      EXPECT_LE(d, frobenius_distance(other.matrix(), raw) + 1e-12);
    }
  }
}

TEST(tomography, project_psd_non_expansive_on_reconstructions) {
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    auto target = i % 2 ? from_pure(fixtures::random_pure(rng)) : fixtures::random_density(rng);
    auto rec = reconstruct_linear(simulate_counts(target, 1000, 900 + i));
    EXPECT_LE(frobenius_distance(rec.estimate.matrix(), target.matrix()),
              frobenius_distance(rec.raw_linear, target.matrix()) + 1e-12);
  }
}

TEST(tomography, count_record_frequencies) {
  CountRecord r{{PauliAxis::Z, PauliAxis::X}, {1, 2, 3, 4}, 10};
  auto f = r.frequencies();
  EXPECT_DOUBLE_EQ(f[3], 0.4);
  CountRecord bad{{PauliAxis::Z, PauliAxis::X}, {1, 2, 3, 4}, 11};
  EXPECT_THROW(bad.frequencies(), DomainError);
}
