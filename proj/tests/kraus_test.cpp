#include "decomodes/kraus.hpp"

#include <cmath>

#include <gtest/gtest.h>

#include "decomodes/lindblad.hpp"
#include "support/random_states.hpp"

using namespace decomodes;

namespace {

DecoherenceSpec degenerate(Mode mode, double lambda) { return {mode, lambda, SystemHamiltonian{}}; }

}  // namespace

TEST(kraus, set_a_identity_channel_at_zero_weight) {
  auto k = kraus_set_a(0.0);
  ASSERT_EQ(k.operators().size(), 4u);
  EXPECT_LE(max_abs_diff(k.operators()[0], Matrix4c::Identity()), 0.0);
  for (int i = 1; i < 4; ++i) EXPECT_LE(k.operators()[i].cwiseAbs().maxCoeff(), 0.0);
}

TEST(kraus, completeness_over_weight_range) {
  for (int i = 0; i <= 50; ++i) {
    const double w = kMaxKrausWeight * i / 50.0;
    EXPECT_LE(kraus_set_a(w).completeness_error(), 1e-12) << w;
    EXPECT_LE(kraus_set_b(w).completeness_error(), 1e-12) << w;
  }
  EXPECT_NEAR(kraus_set_a(1.0).operators()[0](0, 0).real(), 0.5, 1e-15);
}

TEST(kraus, weight_range_checked) {
  EXPECT_THROW(kraus_set_a(-0.1), DomainError);
  EXPECT_THROW(kraus_set_a(1.34), DomainError);
  EXPECT_THROW(kraus_set_b(2.0), DomainError);
  EXPECT_NO_THROW(kraus_set_b(kMaxKrausWeight));
}

TEST(kraus, set_b_flips_spin) {
  auto k = kraus_set_b(0.5);
  Vector4c e1 = Vector4c::Zero();
  e1(0) = 1.0;
  Vector4c out = k.operators()[2] * e1;
  EXPECT_NEAR(std::abs(out(2)), std::sqrt(0.125), 1e-15);
  EXPECT_EQ(std::abs(out(0)) + std::abs(out(1)) + std::abs(out(3)), 0.0);
}

TEST(kraus, custom_set_checks_completeness) {
  EXPECT_THROW(KrausSet::custom({0.5 * Matrix4c::Identity()}), DomainError);
  EXPECT_THROW(KrausSet::custom({}), DomainError);
  auto id = KrausSet::custom({Matrix4c::Identity()});
  std::mt19937_64 rng(1);
  auto rho = fixtures::random_density(rng);
  EXPECT_LE(max_abs_diff(apply_channel(rho, id).matrix(), rho.matrix()), 0.0);
}

TEST(kraus, apply_channel_singlet_expansions) {
  const auto s = experiment_initial();
  for (double w : {0.01, 0.2, 1.0}) {
    auto a = apply_channel(s, kraus_set_a(w));
    EXPECT_NEAR(a(1, 2).real(), -0.5 * (1.0 - w), 1e-15);
    for (int k = 0; k < 4; ++k) EXPECT_NEAR(a(k, k).real(), s(k, k).real(), 1e-15);

    auto b = apply_channel(s, kraus_set_b(w));
    EXPECT_NEAR(b(0, 0).real(), w / 4.0, 1e-15);
  }
}

TEST(kraus, channels_are_unital) {
  for (double w : {0.0, 0.3, 1.0, kMaxKrausWeight}) {
    EXPECT_LE(max_abs_diff(apply_channel(maximally_mixed(), kraus_set_a(w)).matrix(),
                           Matrix4c::Identity() / 4.0), 1e-12);
    EXPECT_LE(max_abs_diff(apply_channel(maximally_mixed(), kraus_set_b(w)).matrix(),
                           Matrix4c::Identity() / 4.0), 1e-12);
  }
}

TEST(kraus, channels_preserve_trace_and_hermiticity) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(0.0, kMaxKrausWeight);
  for (int i = 0; i < 1000; ++i) {
    auto rho = fixtures::random_density(rng);
    const double w = u(rng);
    for (Mode mode : {Mode::A, Mode::B}) {
      const auto& m = apply_channel(rho, kraus_set_for(mode, w)).matrix();
      EXPECT_LE(std::abs(m.trace() - Complex(1.0)), 1e-11);
      EXPECT_LE(max_abs_diff(m, m.adjoint()), 1e-11);
    }
  }
}

TEST(kraus, trotter_zero_weight_is_identity) {
  std::mt19937_64 rng(3);
  auto rho = fixtures::random_density(rng);
  EXPECT_LE(max_abs_diff(trotter_evolve(rho, Mode::A, 0.0, 1.0, 1).matrix(), rho.matrix()), 0.0);
  EXPECT_THROW(trotter_evolve(rho, Mode::A, 1.0, 1.0, 0), DomainError);
  EXPECT_THROW(trotter_evolve(rho, Mode::B, 2.0, 1.0, 1), DomainError);  // w = 2 > 4/3
}

TEST(kraus, trotter_mode_a_first_order_convergence) {
  std::mt19937_64 rng(4);
  auto rho = fixtures::random_density(rng);
  auto exact = evolve_mode_a(rho, degenerate(Mode::A, 1.0), 1.0);
  std::vector<double> err;
  for (int n : {64, 128, 256})
    err.push_back(max_abs_diff(trotter_evolve(rho, Mode::A, 1.0, 1.0, n).matrix(), exact.matrix()));
  for (int i = 0; i + 1 < 3; ++i) {
    const double ratio = err[i] / err[i + 1];
    EXPECT_GE(ratio, 1.7);
    EXPECT_LE(ratio, 2.3);
  }
}

TEST(kraus, trotter_mode_b_error_bound) {
  std::mt19937_64 rng(5);
  for (const auto& rho : {experiment_initial(), fixtures::random_density(rng)}) {
    auto exact = evolve_mode_b(rho, degenerate(Mode::B, 1.0), 1.0);
    EXPECT_LE(max_abs_diff(trotter_evolve(rho, Mode::B, 1.0, 1.0, 1024).matrix(), exact.matrix()), 2e-3);
  }
}

TEST(kraus, trotter_mode_b_step_doubling_halves_error) {
  auto exact = evolve_mode_b(experiment_initial(), degenerate(Mode::B, 1.0), 1.0);
  for (int n : {128, 256, 512}) {
    const double coarse = max_abs_diff(trotter_evolve(experiment_initial(), Mode::B, 1.0, 1.0, n).matrix(),
                                       exact.matrix());
    const double fine = max_abs_diff(trotter_evolve(experiment_initial(), Mode::B, 1.0, 1.0, 2 * n).matrix(),
                                     exact.matrix());
    EXPECT_GE(coarse / fine, 1.7);
    EXPECT_LE(coarse / fine, 2.3);
  }
}

TEST(kraus, generators_from_kraus) {
  const double dt = 1e-3;
  auto gens = lindblad_generators_from_kraus(kraus_set_a(1.0 * dt), dt);
  EXPECT_NEAR(gens.lambda, 1.0, 1e-12);
  EXPECT_LE(gens.residual, 1e-6);
  ASSERT_EQ(gens.operators.size(), 3u);
  for (const auto& a : gens.operators)
    EXPECT_LE(max_abs_diff(a.adjoint() * a, 0.25 * gens.lambda * Matrix4c::Identity()), 1e-12);

  auto gens_b = lindblad_generators_from_kraus(kraus_set_b(2.0 * dt), dt);
  EXPECT_NEAR(gens_b.lambda, 2.0, 1e-12);
  for (const auto& a : gens_b.operators)
    EXPECT_LE(max_abs_diff(a.adjoint() * a, 0.5 * Matrix4c::Identity()), 1e-12);
}

TEST(kraus, generator_residual_is_second_order) {
  for (Mode mode : {Mode::A, Mode::B}) {
    double prev = -1.0;
    for (double dt : {1e-2, 5e-3, 2.5e-3, 1.25e-3}) {
      const double r = lindblad_generators_from_kraus(kraus_set_for(mode, dt), dt).residual;
      if (prev > 0.0) {
        EXPECT_GE(prev / r, 3.5);
        EXPECT_LE(prev / r, 4.5);
      }
      prev = r;
    }
  }
}

TEST(kraus, generators_unsupported_for_custom_sets) {
  auto id = KrausSet::custom({Matrix4c::Identity()}, 0.0);
  EXPECT_THROW(lindblad_generators_from_kraus(id, 1e-3), UnsupportedError);
  EXPECT_THROW(lindblad_generators_from_kraus(kraus_set_a(0.0), 0.0), DomainError);
}

TEST(kraus, single_step_is_first_order_consistent) {
  std::mt19937_64 rng(6);
  auto rho = fixtures::random_density(rng);
  for (Mode mode : {Mode::A, Mode::B}) {
    std::vector<double> c;
    for (double dt : {1e-2, 5e-3, 2.5e-3}) {
      auto step = apply_channel(rho, kraus_set_for(mode, 1.0 * dt));
      auto exact = evolve(rho, degenerate(mode, 1.0), dt);
      c.push_back(max_abs_diff(step.matrix(), exact.matrix()) / (dt * dt));
    }
    const auto [lo, hi] = std::minmax_element(c.begin(), c.end());
    EXPECT_GT(*lo, 0.0);
    EXPECT_LE(*hi / *lo, 1.05);
  }
}

TEST(kraus, mode_a_channel_commutes_with_mode_a_evolution) {
  std::mt19937_64 rng(7);
  DecoherenceSpec spec{Mode::A, 0.8, SystemHamiltonian{{1.0, -0.5, 0.3, 2.0}}};
  for (int i = 0; i < 50; ++i) {
    auto rho = fixtures::random_density(rng);
    auto k = kraus_set_a(0.37);
    auto one = apply_channel(evolve_mode_a(rho, spec, 0.9), k);
    auto two = evolve_mode_a(apply_channel(rho, k), spec, 0.9);
    EXPECT_LE(max_abs_diff(one.matrix(), two.matrix()), 1e-10);
  }
}
