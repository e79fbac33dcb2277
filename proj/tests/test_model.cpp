#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "girg/errors.hpp"
#include "girg/model.hpp"
#include "girg/rng.hpp"
#include "oracles.hpp"

using namespace girg;

namespace {

GirgParams params(double tau, double w0 = 1.0, std::uint64_t n = 100, int d = 1, double gamma = 1.5) {
  return GirgParams(n, d, tau, w0, gamma, 1);
}

}  // namespace

TEST(Params, RejectsOutOfRange) {
  EXPECT_THROW(params(2.0), ValidationError);
  EXPECT_THROW(params(3.0), ValidationError);
  EXPECT_THROW(params(2.5, 0.0), ValidationError);
  EXPECT_THROW(params(2.5, 1.0, 0), ValidationError);
  EXPECT_THROW(params(2.5, 1.0, 10, 0), ValidationError);
  EXPECT_THROW(params(2.5, 1.0, 10, 1, 1.0), ValidationError);
  try {
    params(3.5);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("tau must lie in (2,3)"), std::string::npos);
  }
}

TEST(MeanWeight, Formula) {
  EXPECT_DOUBLE_EQ(mean_weight(params(2.5)), 3.0);
  EXPECT_NEAR(mean_weight(params(2.2)), 6.0, 1e-12);
  EXPECT_DOUBLE_EQ(mean_weight(params(2.5, 2.0)), 6.0);
}

TEST(ParetoQuantile, Values) {
  EXPECT_DOUBLE_EQ(pareto_quantile(1.0, params(2.5, 3.0)), 3.0);
  EXPECT_NEAR(pareto_quantile(0.25, params(2.5)), std::pow(4.0, 2.0 / 3.0), 1e-12);
  EXPECT_NEAR(pareto_quantile(0.25, params(2.5)), 2.5198, 1e-4);
  EXPECT_NEAR(pareto_quantile(0.01, params(2.5)), 21.544, 1e-3);
  EXPECT_THROW(pareto_quantile(0.0, params(2.5)), ValidationError);
  EXPECT_THROW(pareto_quantile(1.5, params(2.5)), ValidationError);
}

TEST(ParetoQuantile, EmpiricalTailMatchesLaw) {
  const auto p = params(2.5);
  Rng rng(RngStream{11, 0});
  const int N = 1'000'000;
  int above[3] = {0, 0, 0};
  const double xs[3] = {2.0, 4.0, 8.0};
  int above_q = 0;
  for (int i = 0; i < N; ++i) {
    const double w = pareto_quantile(rng.uniform_pos(), p);
    for (int j = 0; j < 3; ++j) above[j] += w > xs[j];
    above_q += w > 2.5198;
  }
  for (int j = 0; j < 3; ++j) {
    const double expected = std::pow(1.0 / xs[j], 1.5);
    const double se = std::sqrt(expected * (1 - expected) / N);
    EXPECT_LT(std::abs(above[j] / double(N) - expected), 4 * se) << "w=" << xs[j];
  }
  EXPECT_NEAR(above_q / double(N), 0.25, 4 * std::sqrt(0.25 * 0.75 / N));
}

TEST(CircleDistance, Examples) {
  EXPECT_NEAR(circle_distance(0.1, 0.9), 0.2, 1e-15);
  EXPECT_DOUBLE_EQ(circle_distance(0.25, 0.75), 0.5);
  EXPECT_DOUBLE_EQ(circle_distance(0.3, 0.3), 0.0);
}

TEST(TorusDistance, Examples) {
  const double x[] = {0.1, 0.2}, y[] = {0.9, 0.3};
  EXPECT_NEAR(torus_distance(x, y), 0.2, 1e-15);
  const double a[] = {0.7}, b[] = {0.05};
  EXPECT_DOUBLE_EQ(torus_distance(a, b), circle_distance(0.7, 0.05));
  EXPECT_THROW(torus_distance(std::span<const double>(x, 2), std::span<const double>(a, 1)), ValidationError);
}

TEST(TorusDistance, MetricAxioms) {
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int d = 1; d <= 3; ++d) {
    for (int t = 0; t < 10000; ++t) {
      double x[3], y[3], z[3];
      for (int h = 0; h < d; ++h) x[h] = U(gen), y[h] = U(gen), z[h] = U(gen);
      const Position px(x, d), py(y, d), pz(z, d);
      const double xy = torus_distance(px, py);
      EXPECT_EQ(xy, torus_distance(py, px));
      EXPECT_GE(xy, 0.0);
      EXPECT_LE(xy, 0.5);
      EXPECT_EQ(torus_distance(px, px), 0.0);
      EXPECT_LE(torus_distance(px, pz), xy + torus_distance(py, pz) + 1e-15);
    }
  }
}

TEST(ConnectionProbability, Examples) {
  const auto p = params(2.5);  // n = 100, mu = 3
  const double a[] = {0.0}, b[] = {0.05}, c[] = {0.5};
  EXPECT_DOUBLE_EQ(connection_probability(10, 10, a, b, p), 1.0);
  EXPECT_NEAR(connection_probability(1, 1, a, c, p), std::pow(1.0 / 150.0, 1.5), 1e-15);
  EXPECT_NEAR(connection_probability(1, 1, a, c, p), 5.443e-4, 1e-7);
  EXPECT_DOUBLE_EQ(connection_probability(1, 1, a, a, p), 1.0);
}

TEST(ConnectionProbability, MatchesDirectFormulaAndIsMonotone) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  for (int d = 1; d <= 3; ++d) {
    const auto p = params(2.3, 1.0, 1000, d, 2.2);
    const EdgeKernel kernel(p);
    for (int t = 0; t < 2000; ++t) {
      double x[3], y[3];
      for (int h = 0; h < d; ++h) x[h] = U(gen), y[h] = U(gen);
      const double wu = 1.0 + 50 * U(gen), wv = 1.0 + 50 * U(gen);
      const double direct = oracle::edge_probability(wu, wv, x, y, d, p.n(), p.mean_weight(), p.gamma());
      const double got = connection_probability(wu, wv, Position(x, d), Position(y, d), p);
      EXPECT_NEAR(got, direct, 1e-12 * std::max(1.0, direct));
      EXPECT_NEAR(kernel(wu, wv, torus_distance(Position(x, d), Position(y, d))), direct, 1e-12);
      // Ladders: larger weight never lowers p, larger distance never raises it.
      EXPECT_GE(connection_probability(wu * 1.5, wv, Position(x, d), Position(y, d), p), got);
      const double r = torus_distance(Position(x, d), Position(y, d));
      EXPECT_LE(kernel(wu, wv, std::min(0.5, r * 1.3)), kernel(wu, wv, r));
    }
  }
}

TEST(MarginalProbability, ClosedFormD1Gamma2) {
  // q = wu wv / (n mu); with n = 100, mu = 3 take wu wv = 30 for q = 0.1.
  const auto p = params(2.5, 1.0, 100, 1, 2.0);
  EXPECT_NEAR(marginal_connection_probability(5, 6, p), 0.36, 1e-10);
  for (double q : {1e-6, 1e-3, 0.01, 0.05, 0.2, 0.3, 0.45, 0.499}) {
    const double w = std::sqrt(q * 300.0);
    EXPECT_NEAR(marginal_connection_probability(w, w, p), oracle::marginal_d1_gamma2(q), 1e-10) << q;
  }
}

TEST(MarginalProbability, FullyClampedIsOne) {
  for (int d = 1; d <= 3; ++d) {
    const auto p = params(2.5, 1.0, 100, d, 1.7);
    const double w = std::sqrt(std::ldexp(1.0, -d) * 300.0) * 1.01;
    EXPECT_DOUBLE_EQ(marginal_connection_probability(w, w, p), 1.0);
  }
}

TEST(MarginalProbability, MatchesMonteCarlo) {
  Rng rng(RngStream{3, 1});
  for (int d = 1; d <= 3; ++d) {
    const auto p = params(2.4, 1.0, 500, d, 1.8);
    const double wu = 3.0, wv = 7.0;
    const int N = 1'000'000;
    double sum = 0.0, sum2 = 0.0;
    std::vector<double> x(d, 0.0), y(d);
    for (int i = 0; i < N; ++i) {
      for (int h = 0; h < d; ++h) y[h] = rng.uniform();
      const double v = connection_probability(wu, wv, x, y, p);
      sum += v;
      sum2 += v * v;
    }
    const double m = sum / N;
    const double se = std::sqrt((sum2 / N - m * m) / N);
    EXPECT_LT(std::abs(marginal_connection_probability(wu, wv, p) - m), 3 * se) << "d=" << d;
  }
}

TEST(MarginalProbability, ThetaBound) {
  // Theta(min{1, q}) with constants depending only on d and gamma.
  for (int d = 1; d <= 3; ++d) {
    const auto p = params(2.5, 1.0, 1'000'000, d, 1.5);
    for (double w : {1.0, 10.0, 100.0, 1000.0, 3000.0}) {
      const double q = w * w / (1e6 * 3.0);
      const double m = marginal_connection_probability(w, w, p);
      const double ratio = m / std::min(1.0, q);
      EXPECT_GT(ratio, 1e-2);
      EXPECT_LT(ratio, 1e2);
    }
  }
}
