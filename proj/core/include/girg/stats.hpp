#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace girg::stats {

double mean(std::span<const double> xs);

/// Unbiased sample variance; requires at least two values.
double variance(std::span<const double> xs);

/// Linear-interpolation quantile (type 7) of an unsorted sample, q in [0,1].
double quantile(std::span<const double> xs, double q);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_std_error = 0.0;
  std::size_t points = 0;
};

/// Ordinary least squares y = intercept + slope * x. Needs at least two
/// distinct x values. r_squared is 1 when y is constant.
LinearFit ols(std::span<const double> x, std::span<const double> y);

/// Two-sided Student-t quantile with the given degrees of freedom.
double student_t_quantile(double p, double dof);

/// Two-sample Kolmogorov-Smirnov statistic sup |F_a - F_b|.
double ks_statistic(std::span<const double> a, std::span<const double> b);

/// Asymptotic critical value c(alpha) sqrt((n+m)/(nm)) for alpha in
/// {0.10, 0.05, 0.01, 0.001}.
double ks_critical_value(std::size_t n, std::size_t m, double alpha);

}  // namespace girg::stats
