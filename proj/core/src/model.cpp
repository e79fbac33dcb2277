#include "girg/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "girg/errors.hpp"

namespace girg {

GirgParams::GirgParams(std::uint64_t n, int d, double tau, double w0,
                       double gamma, std::uint64_t seed)
    : n_(n), d_(d), tau_(tau), w0_(w0), gamma_(gamma), seed_(seed) {
  if (n_ < 1) throw ValidationError("n must be at least 1");
  if (d_ < 1) throw ValidationError("d must be at least 1");
  if (!(tau_ > 2.0 && tau_ < 3.0)) throw ValidationError("tau must lie in (2,3)");
  if (!(w0_ > 0.0) || !std::isfinite(w0_)) throw ValidationError("w0 must be positive");
  if (!(gamma_ > 1.0) || !std::isfinite(gamma_)) throw ValidationError("gamma must exceed 1");
}

double GirgParams::mean_weight() const { return (tau_ - 1.0) / (tau_ - 2.0) * w0_; }

GirgParams GirgParams::with_n(std::uint64_t n) const {
  return GirgParams(n, d_, tau_, w0_, gamma_, seed_);
}

GirgParams GirgParams::with_gamma(double gamma) const {
  return GirgParams(n_, d_, tau_, w0_, gamma, seed_);
}

GirgParams GirgParams::with_seed(std::uint64_t seed) const {
  return GirgParams(n_, d_, tau_, w0_, gamma_, seed);
}

double mean_weight(const GirgParams& params) { return params.mean_weight(); }

double pareto_quantile(double u, const GirgParams& params) {
  if (!(u > 0.0 && u <= 1.0)) {
    throw ValidationError("pareto_quantile: u must lie in (0,1], got " + std::to_string(u));
  }
  return params.w0() * std::pow(u, -1.0 / (params.tau() - 1.0));
}

double circle_distance(double a, double b) {
  const double diff = std::abs(a - b);
  return std::min(diff, 1.0 - diff);
}

double torus_distance(Position x, Position y) {
  if (x.size() != y.size()) {
    throw ValidationError("torus_distance: dimension mismatch (" + std::to_string(x.size()) +
                          " vs " + std::to_string(y.size()) + ")");
  }
  double dist = 0.0;
  for (std::size_t h = 0; h < x.size(); ++h) dist = std::max(dist, circle_distance(x[h], y[h]));
  return dist;
}

EdgeKernel::EdgeKernel(const GirgParams& params)
    : inv_nmu_(1.0 / (static_cast<double>(params.n()) * params.mean_weight())),
      d_(params.d()),
      gamma_(params.gamma()) {}

double EdgeKernel::probability_from_ratio(double ratio, double dist) const {
  double volume = dist;
  for (int h = 1; h < d_; ++h) volume *= dist;
  if (ratio >= volume) return 1.0;  // also covers dist == 0
  return std::pow(ratio / volume, gamma_);
}

double connection_probability(double wu, double wv, Position xu, Position xv,
                              const GirgParams& params) {
  return EdgeKernel(params)(wu, wv, torus_distance(xu, xv));
}

double marginal_connection_probability(double wu, double wv, const GirgParams& params) {
  // For x uniform on the torus the infinity-norm radius r has P(r <= s) = (2s)^d on
  // [0, 1/2]. Substituting t = r^d turns the expectation into
  //   2^d * int_0^{2^-d} min(1, (q/t)^gamma) dt,   q = wu*wv/(n*mu).
  const double q = wu * wv / (static_cast<double>(params.n()) * params.mean_weight());
  const double gamma = params.gamma();
  const double t_max = std::ldexp(1.0, -params.d());
  const double scale = std::ldexp(1.0, params.d());
  if (q >= t_max) return 1.0;

  // The clamped part [0, q] integrates to q; the decaying part is integrated in
  // log-coordinates t = q*e^s, where the integrand q*e^{(1-gamma)s} is smooth.
  using Quadrature = boost::math::quadrature::gauss_kronrod<double, 31>;
  double error = 0.0;
  const double clamped = Quadrature::integrate([](double) { return 1.0; }, 0.0, q, 0, 1e-15, &error);
  const double tail = Quadrature::integrate(
      [q, gamma](double s) { return q * std::exp((1.0 - gamma) * s); }, 0.0, std::log(t_max / q),
      15, 1e-15, &error);
  return std::min(1.0, scale * (clamped + tail));
}

}  // namespace girg
