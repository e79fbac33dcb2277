#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "girg/rng.hpp"
#include "girg/theory.hpp"

namespace girg {

enum class IntegralKind { kNonGeometric, kGeometric };

std::string_view to_string(IntegralKind kind);

struct IntegralEstimate {
  IntegralKind kind = IntegralKind::kNonGeometric;
  double value = 0.0;
  double std_error = 0.0;
  std::uint64_t samples = 0;
  std::string truncation;
  std::string proposal;
  std::optional<double> eps;
};

/// Importance proposal knobs. The vertex with the smallest weight anchors the
/// configuration; every other vertex is placed at an offset drawn from a
/// uniform core of radius (w_a w_j)^{1/d} mixed with a power tail
/// r^{-1-lambda}. Both fractions must lie in (0, 1).
struct ProposalConfig {
  /// Position inside the admissible range of the weight proposal exponent.
  double weight_fraction = 0.5;
  /// lambda as a fraction of 2d(gamma-1), above which the tail proposal has
  /// infinite variance.
  double tail_fraction = 0.5;
};

struct EstimatorOptions {
  ProposalConfig proposal{};
  unsigned threads = 1;
};

/// Monte Carlo estimate of
///   J^NG(eps) = int (y_1...y_k)^{-tau} prod_{i<j} min{1, (y_i y_j / |x_i-x_j|^d)^gamma}
/// over y in [eps, 1/eps]^k (all of (0, inf)^k for eps = 0) and x on the torus.
/// eps = 0 requires the non-geometric regime; BoundaryError on the boundary.
IntegralEstimate estimate_JNG(int k, double tau, double gamma, int d, double eps,
                              std::uint64_t samples, RngStream stream,
                              const EstimatorOptions& options = {});

/// Monte Carlo estimate of
///   J^G(eps) = int_{[w0,inf)^k} int (w_1...w_k)^{-tau} prod_{i<j} min{1, (w_i w_j / |z_i-z_j|^d)^gamma}
/// with z_1 = 0 and z_2..z_k in R^d (restricted to [-1/eps,1/eps]^d minus
/// [-eps,eps]^d when eps > 0). eps = 0 requires the geometric regime.
IntegralEstimate estimate_JG(int k, double tau, double gamma, int d, double w0, double eps,
                             std::uint64_t samples, RngStream stream,
                             const EstimatorOptions& options = {});

/// Limit of N(K_k)/n^{k(3-tau)/2} (NG) or N(K_k)/n (G) implied by J, for
/// weights with mean mu. The Pareto density normalization
/// ((tau-1) w0^{tau-1} per vertex, w0 = mu (tau-2)/(tau-1)) is included.
/// Throws ValidationError if J's kind does not match the regime of (k, tau).
double predicted_limit_constant(int k, double tau, double gamma, int d, const IntegralEstimate& J,
                                double mu);

}  // namespace girg
