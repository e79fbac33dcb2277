#pragma once

#include <cstdint>
#include <span>

namespace girg {

using VertexId = std::uint32_t;

/// A point on the d-dimensional unit torus, coordinates in [0,1).
using Position = std::span<const double>;

/// Parameterization of the GIRG model. Construction validates the standing
/// assumptions (2 < tau < 3, gamma > 1, w0 > 0, n >= 1, d >= 1) and throws
/// ValidationError naming the violated bound.
class GirgParams {
 public:
  GirgParams(std::uint64_t n, int d, double tau, double w0, double gamma,
             std::uint64_t seed);

  std::uint64_t n() const { return n_; }
  int d() const { return d_; }
  double tau() const { return tau_; }
  double w0() const { return w0_; }
  double gamma() const { return gamma_; }
  std::uint64_t seed() const { return seed_; }

  /// mu = (tau - 1) / (tau - 2) * w0, the mean of the weight law.
  double mean_weight() const;

  GirgParams with_n(std::uint64_t n) const;
  GirgParams with_gamma(double gamma) const;
  GirgParams with_seed(std::uint64_t seed) const;

  friend bool operator==(const GirgParams&, const GirgParams&) = default;

 private:
  std::uint64_t n_;
  int d_;
  double tau_;
  double w0_;
  double gamma_;
  std::uint64_t seed_;
};

double mean_weight(const GirgParams& params);

/// Inverse of the Pareto tail P(w > x) = (w0/x)^(tau-1): returns
/// w0 * u^(-1/(tau-1)) for u in (0,1].
double pareto_quantile(double u, const GirgParams& params);

/// Wraparound distance on the unit circle, in [0, 1/2].
double circle_distance(double a, double b);

/// Infinity-norm distance on the torus (max over coordinates of
/// circle_distance). Throws ValidationError on dimension mismatch.
double torus_distance(Position x, Position y);

/// Evaluates min{ (wu*wv / (n*mu*dist^d))^gamma, 1 } with the constants
/// folded once. Coincident points (dist == 0) connect with probability 1.
class EdgeKernel {
 public:
  explicit EdgeKernel(const GirgParams& params);

  double operator()(double wu, double wv, double dist) const {
    return probability_from_ratio(wu * wv * inv_nmu_, dist);
  }

  /// ratio = wu*wv/(n*mu).
  double probability_from_ratio(double ratio, double dist) const;

  double inv_nmu() const { return inv_nmu_; }
  int d() const { return d_; }
  double gamma() const { return gamma_; }

 private:
  double inv_nmu_;
  int d_;
  double gamma_;
};

double connection_probability(double wu, double wv, Position xu, Position xv,
                              const GirgParams& params);

/// Expected connection probability of two vertices with the given weights
/// when one position is integrated out uniformly over the torus. Computed by
/// adaptive quadrature over the infinity-norm radius.
double marginal_connection_probability(double wu, double wv,
                                       const GirgParams& params);

}  // namespace girg
