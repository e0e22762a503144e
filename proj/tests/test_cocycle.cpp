#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <random>

#include "qmink/cocycle.hpp"

using namespace qmink::cocycle;

namespace {

constexpr double tol = 1e-12;

complex expi(double t) { return {std::cos(t), std::sin(t)}; }

struct Points {
  std::mt19937_64 rng;
  std::uniform_real_distribution<double> u{-3.0, 3.0};
  explicit Points(unsigned seed) : rng(seed) {}
  complex operator()() { return {u(rng), u(rng)}; }
};

}  // namespace

TEST(Psi, Examples) {
  const Params p(0.4);
  const complex i(0, 1);
  EXPECT_NEAR(std::abs(psi(p, 1.0, i) - expi(0.4)), 0, tol);
  EXPECT_NEAR(std::abs(psi_tilde(p, 1.0, i) - expi(-0.4)), 0, tol);
  EXPECT_NEAR(std::abs(psi_star(p, 1.0, i) - expi(0.4)), 0, tol);
  EXPECT_NEAR(std::abs(omega(p, 1.0 + i) - expi(-0.4)), 0, tol);
}

TEST(Psi, ZeroParameterIsTrivial) {
  const Params p(0.0);
  Points pts(1);
  for (int k = 0; k < 100; ++k) {
    complex a = pts(), b = pts();
    EXPECT_EQ(psi(p, a, b), complex(1, 0));
    EXPECT_EQ(omega(p, a), complex(1, 0));
  }
}

TEST(Psi, NonFiniteParameterThrows) {
  EXPECT_THROW(Params{std::nan("")}, std::domain_error);
  EXPECT_THROW(Params{INFINITY}, std::domain_error);
}

TEST(Psi, IsUnimodularBicharacter) {
  Points pts(2);
  for (double s : {0.3, 0.7, 1.1}) {
    const Params p(s);
    for (int k = 0; k < 1000; ++k) {
      complex a = pts(), b = pts(), c = pts();
      EXPECT_NEAR(std::abs(psi(p, a, b)), 1, tol);
      EXPECT_NEAR(std::abs(psi(p, a + b, c) - psi(p, a, c) * psi(p, b, c)), 0,
                  1e-10);
      EXPECT_NEAR(std::abs(psi(p, a, b) * psi(p, b, a) - 1.0), 0, tol);
      EXPECT_NEAR(std::abs(psi(p, a, a) - 1.0), 0, tol);
    }
  }
}

TEST(Psi, TildeAndStarForms) {
  // For a bicharacter, conj Psi(-a,-b) = conj Psi(a,b) and
  // conj Psi(a,-a-b) = Psi(a,b).
  Points pts(3);
  const Params p(0.9);
  for (int k = 0; k < 1000; ++k) {
    complex a = pts(), b = pts();
    EXPECT_NEAR(std::abs(psi_tilde(p, a, b) - std::conj(psi(p, a, b))), 0,
                1e-10);
    EXPECT_NEAR(std::abs(psi_star(p, a, b) - psi(p, a, b)), 0, 1e-10);
  }
}

TEST(Residuals, CocycleAndOmegaAreRoundoff) {
  for (double s : {0.3, 0.7, 1.1}) {
    const Params p(s);
    SampleSpec spec;
    spec.samples = 10000;
    spec.seed = 5;
    EXPECT_LT(check_cocycle_identity(p, spec).max_residual, tol) << s;
    EXPECT_LT(check_omega_identity(p, spec).max_residual, tol) << s;
    EXPECT_LT(check_sumup_corrected(p, spec).max_residual, tol) << s;
  }
}

TEST(Residuals, StatedShiftIdentityMissesConstantPhase) {
  // The stated right side differs from the true one by Psi(u, v), so the
  // residual is |Psi(u, v) - 1| = 2 |sin(s Im(u conj v) / 2)|.
  Points pts(6);
  for (double s : {0.3, 0.7, 1.1}) {
    const Params p(s);
    for (int k = 0; k < 1000; ++k) {
      complex x = pts(), y = pts(), u = pts(), v = pts();
      const double expected =
          2 * std::abs(std::sin(0.5 * s * std::imag(u * std::conj(v))));
      EXPECT_NEAR(sumup_residual(p, x, y, u, v), expected, 1e-10);
    }
    SampleSpec spec;
    spec.samples = 10000;
    EXPECT_GT(check_sumup(p, spec).max_residual, 0.1) << s;
  }
}

TEST(Residuals, ShiftIdentityHoldsWhenShiftsAreParallel) {
  Points pts(7);
  const Params p(1.1);
  for (int k = 0; k < 200; ++k) {
    complex x = pts(), y = pts(), u = pts();
    EXPECT_NEAR(sumup_residual(p, x, y, u, 2.5 * u), 0, 1e-10);
  }
}

TEST(Sampling, IsDeterministicAndRecordsInputs) {
  const Params p(0.7);
  SampleSpec spec;
  spec.samples = 500;
  spec.seed = 11;
  Result a = check_sumup(p, spec);
  Result b = check_sumup(p, spec);
  EXPECT_EQ(a.max_residual, b.max_residual);
  EXPECT_EQ(a.samples, 500u);
  EXPECT_EQ(a.seed, 11u);
  EXPECT_EQ(a.s, 0.7);
  spec.samples = 0;
  EXPECT_THROW(check_sumup(p, spec), std::invalid_argument);
}
