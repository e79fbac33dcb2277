#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "girg/errors.hpp"
#include "girg/theory.hpp"
#include "oracles.hpp"

using namespace girg;

namespace {

double f_of(int k, double tau, double gamma, int d, std::vector<double> alpha,
            std::vector<std::vector<double>> beta) {
  ExponentProfile p;
  p.k = k;
  p.tau = tau;
  p.gamma = gamma;
  p.d = d;
  p.alpha = std::move(alpha);
  p.beta = std::move(beta);
  return exponent_f(p);
}

bool on_boundary(int k, double tau) { return std::abs(k * (3.0 - tau) - 2.0) < 1e-9; }

}  // namespace

TEST(ExponentF, BranchValues) {
  EXPECT_NEAR(f_of(3, 2.5, 2.0, 1, {0.5, 0.5, 0.5}, {{0.0}, {0.0}}), 0.75, 1e-15);
  EXPECT_NEAR(f_of(3, 2.5, 2.0, 1, {0, 0, 0}, {{-1.0}, {-1.0}}), 1.0, 1e-15);
}

TEST(ExponentF, MatchesTermByTermEvaluation) {
  const std::vector<double> alpha{0.3, 0.3, 0.3};
  const std::vector<std::vector<double>> beta{{-0.2, -0.2}, {-0.2, -0.2}};
  // By hand: 3 - 1.5*0.9 - 0.8 + 1.5 * 3 * min(0.6 - 1 + 0.4, 0) = 0.85
  EXPECT_NEAR(f_of(3, 2.5, 1.5, 2, alpha, beta), 0.85, 1e-14);
  EXPECT_NEAR(f_of(3, 2.5, 1.5, 2, alpha, beta), oracle::exponent_f(3, 2.5, 1.5, 2, alpha, beta), 1e-14);

  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 2000; ++t) {
    const int k = 3 + t % 4, d = 1 + t % 3;
    std::vector<double> a(k);
    std::vector<std::vector<double>> b(k - 1, std::vector<double>(d));
    for (auto& x : a) x = U(gen);
    for (auto& row : b)
      for (auto& x : row) x = -U(gen) / d;
    const double tau = 2.0 + U(gen), gamma = 1.0 + 3 * U(gen);
    EXPECT_NEAR(f_of(k, tau, gamma, d, a, b), oracle::exponent_f(k, tau, gamma, d, a, b), 1e-12);
  }
}

TEST(ExponentF, RejectsInfeasibleProfiles) {
  EXPECT_THROW(f_of(3, 2.5, 2.0, 1, {-0.1, 0, 0}, {{0.0}, {0.0}}), ValidationError);
  EXPECT_THROW(f_of(3, 2.5, 2.0, 1, {0, 0, 0}, {{0.1}, {0.0}}), ValidationError);
  EXPECT_THROW(f_of(3, 2.5, 2.0, 1, {0, 0}, {{0.0}, {0.0}}), ValidationError);
}

TEST(ExponentF, InvariantUnderPermutingNonReferenceVertices) {
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int t = 0; t < 500; ++t) {
    const int k = 4, d = 2;
    std::vector<double> a(k);
    std::vector<std::vector<double>> b(k - 1, std::vector<double>(d));
    for (auto& x : a) x = U(gen);
    for (auto& row : b)
      for (auto& x : row) x = -U(gen);
    std::vector<int> perm{1, 2, 3};
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<double> a2{a[0]};
    std::vector<std::vector<double>> b2;
    for (int i : perm) {
      a2.push_back(a[i]);
      b2.push_back(b[i - 1]);
    }
    EXPECT_NEAR(f_of(k, 2.4, 1.7, d, a, b), f_of(k, 2.4, 1.7, d, a2, b2), 1e-12);
  }
}

TEST(Regime, ThresholdAndClassification) {
  EXPECT_DOUBLE_EQ(regime_threshold(3), 3.0 - 2.0 / 3.0);
  EXPECT_NEAR(regime_threshold(3), 7.0 / 3.0, 1e-15);
  EXPECT_DOUBLE_EQ(regime_threshold(4), 2.5);
  for (int k = 3; k < 100; ++k) EXPECT_LT(regime_threshold(k), regime_threshold(k + 1));
  EXPECT_LT(regime_threshold(100), 3.0);
  EXPECT_THROW(regime_threshold(2), ValidationError);
  EXPECT_EQ(classify_regime(3, 2.1), Regime::kNonGeometric);
  EXPECT_EQ(classify_regime(3, 2.7), Regime::kGeometric);
  EXPECT_EQ(classify_regime(4, 2.5), Regime::kBoundary);
  EXPECT_EQ(classify_regime(3, 7.0 / 3.0), Regime::kBoundary);
}

TEST(Regime, TheoreticalExponent) {
  EXPECT_NEAR(theoretical_exponent(3, 2.1), 1.35, 1e-12);
  EXPECT_DOUBLE_EQ(theoretical_exponent(3, 2.7), 1.0);
  EXPECT_NEAR(theoretical_exponent(4, 2.4), 1.2, 1e-12);
  EXPECT_THROW(theoretical_exponent(4, 2.5), BoundaryError);
}

TEST(Optimizer, Examples) {
  auto o = optimize_f(3, 2.1, 1.5, 1);
  EXPECT_EQ(o.regime, Regime::kNonGeometric);
  EXPECT_DOUBLE_EQ(o.alpha_star, 0.5);
  EXPECT_DOUBLE_EQ(o.beta_star, 0.0);
  EXPECT_NEAR(o.f_star, 1.35, 1e-12);
  o = optimize_f(3, 2.7, 1.5, 2);
  EXPECT_EQ(o.regime, Regime::kGeometric);
  EXPECT_DOUBLE_EQ(o.alpha_star, 0.0);
  EXPECT_DOUBLE_EQ(o.beta_star, -0.5);
  EXPECT_NEAR(o.f_star, 1.0, 1e-12);
  o = optimize_f(5, 2.5, 2.0, 1);
  EXPECT_EQ(o.regime, Regime::kNonGeometric);
  EXPECT_NEAR(o.f_star, 1.25, 1e-12);
  EXPECT_THROW(optimize_f(4, 2.5, 2.0, 1), BoundaryError);
  EXPECT_THROW(optimize_f(3, 3.5, 2.0, 1), ValidationError);
}

TEST(Optimizer, OptimumEqualsBranchMaximumOnGrid) {
  for (int k = 3; k <= 8; ++k) {
    for (int i = 1; i <= 19; ++i) {
      const double tau = 2.0 + 0.05 * i;
      if (on_boundary(k, tau)) continue;
      for (int d : {1, 2}) {
        const auto o = optimize_f(k, tau, 1.5, d);
        const double expected = std::max(1.0, k * (3.0 - tau) / 2.0);
        EXPECT_NEAR(o.f_star, expected, 1e-12) << "k=" << k << " tau=" << tau;
        EXPECT_NEAR(exponent_f(o.profile), expected, 1e-12);
        if (o.regime == Regime::kNonGeometric) {
          EXPECT_DOUBLE_EQ(o.alpha_star, 0.5);
          EXPECT_DOUBLE_EQ(o.beta_star, 0.0);
        } else {
          EXPECT_DOUBLE_EQ(o.alpha_star, 0.0);
          EXPECT_NEAR(o.beta_star, -1.0 / d, 1e-15);
        }
      }
    }
  }
}

TEST(Optimizer, GammaDoesNotMoveTheOptimum) {
  for (int k = 3; k <= 6; ++k) {
    for (double tau : {2.05, 2.3, 2.55, 2.8, 2.95}) {
      if (on_boundary(k, tau)) continue;
      const auto ref = optimize_f(k, tau, 1.2, 1);
      for (double gamma : {2.0, 5.0}) {
        const auto o = optimize_f(k, tau, gamma, 1);
        EXPECT_EQ(o.alpha_star, ref.alpha_star);
        EXPECT_EQ(o.beta_star, ref.beta_star);
        EXPECT_EQ(o.f_star, ref.f_star);
      }
    }
  }
}

TEST(Optimizer, NoAsymmetricGridProfileBeatsSymmetricOptimum) {
  for (int k = 3; k <= 5; ++k) {
    for (double tau : {2.1, 2.3, 2.45, 2.6, 2.75, 2.9}) {
      if (on_boundary(k, tau)) continue;
      for (int d : {1, 2}) {
        const auto sym = optimize_f(k, tau, 1.5, d);
        const auto grid = asymmetric_grid_maximum(k, tau, 1.5, d);
        EXPECT_EQ(grid.profiles_checked, static_cast<std::uint64_t>(std::pow(5, k) * std::pow(3, k - 1)));
        EXPECT_LE(grid.f, sym.f_star + 1e-12) << "k=" << k << " tau=" << tau;
      }
    }
  }
}
