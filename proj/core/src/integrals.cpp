#include "girg/integrals.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <vector>

#include "girg/errors.hpp"
#include "girg/parallel.hpp"

namespace girg {
namespace {

constexpr std::uint64_t kBlockSamples = 1u << 14;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_inputs(int k, double tau, double gamma, int d, double eps, std::uint64_t samples,
                  const EstimatorOptions& options) {
  if (k < 2) throw ValidationError("k must be at least 2");
  if (!(tau > 2.0 && tau < 3.0)) throw ValidationError("tau must lie in (2,3)");
  if (!(gamma > 1.0)) throw ValidationError("gamma must exceed 1");
  if (d < 1) throw ValidationError("d must be at least 1");
  if (!(eps >= 0.0 && eps < 1.0)) throw ValidationError("eps must lie in [0,1)");
  if (samples < 2) throw ValidationError("samples must be at least 2");
  const auto& p = options.proposal;
  if (!(p.weight_fraction > 0.0 && p.weight_fraction < 1.0) ||
      !(p.tail_fraction > 0.0 && p.tail_fraction < 1.0)) {
    throw ValidationError("proposal fractions must lie in (0,1)");
  }
}

// Offsets of non-anchor vertices relative to the anchor, in the infinity norm:
// with probability 1/2 uniform on the cube of radius sigma, otherwise a radius
// with density proportional to r^{-1-lambda} on (sigma, limit] and a uniform
// point on that cube's surface.
class OffsetProposal {
 public:
  OffsetProposal(int d, double lambda, double limit) : d_(d), lambda_(lambda), limit_(limit) {
    surface_factor_ = d * std::ldexp(1.0, d);
  }

  double draw(Rng& rng, double sigma, double* out) const {
    const bool whole = sigma >= limit_;
    const double core = whole ? limit_ : sigma;
    if (whole || rng.uniform() < 0.5) {
      for (int h = 0; h < d_; ++h) out[h] = (2.0 * rng.uniform() - 1.0) * core;
    } else {
      const double mass = tail_mass(sigma);
      const double r = sigma * std::pow(1.0 - rng.uniform() * mass, -1.0 / lambda_);
      const int face = static_cast<int>(rng.uniform() * d_);
      for (int h = 0; h < d_; ++h) out[h] = (2.0 * rng.uniform() - 1.0) * r;
      out[std::min(face, d_ - 1)] = rng.uniform() < 0.5 ? -r : r;
    }
    return density(sigma, out);
  }

  double density(double sigma, const double* delta) const {
    double r = 0.0;
    for (int h = 0; h < d_; ++h) r = std::max(r, std::abs(delta[h]));
    if (sigma >= limit_) return 1.0 / std::pow(2.0 * limit_, d_);
    if (r <= sigma) return 0.5 / std::pow(2.0 * sigma, d_);
    const double radial = lambda_ * std::pow(sigma, lambda_) * std::pow(r, -1.0 - lambda_) /
                          tail_mass(sigma);
    return 0.5 * radial / (surface_factor_ * std::pow(r, d_ - 1));
  }

 private:
  double tail_mass(double sigma) const {
    return std::isinf(limit_) ? 1.0 : 1.0 - std::pow(sigma / limit_, lambda_);
  }

  int d_;
  double lambda_;
  double limit_;
  double surface_factor_;
};

struct Moments {
  std::uint64_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    mean += delta * static_cast<double>(o.count) / total;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    count += o.count;
  }
};

// One importance-sampling configuration: weights plus anchored offsets.
struct Sampler {
  int k;
  int d;
  double tau;
  double gamma;
  bool torus;
  OffsetProposal offsets;

  // Returns F/Q for one draw, given a weight drawing callback.
  template <typename DrawWeight, typename Accept>
  double once(Rng& rng, std::vector<double>& w, std::vector<double>& z, DrawWeight&& draw_weight,
              Accept&& accept) const {
    double log_ratio = 0.0;
    for (int i = 0; i < k; ++i) {
      double q = 0.0;
      w[i] = draw_weight(rng, q);
      log_ratio += -tau * std::log(w[i]) - std::log(q);
    }
    const int anchor = static_cast<int>(std::min_element(w.begin(), w.end()) - w.begin());
    std::fill(z.begin() + anchor * d, z.begin() + (anchor + 1) * d, 0.0);
    for (int j = 0; j < k; ++j) {
      if (j == anchor) continue;
      const double sigma = std::pow(w[anchor] * w[j], 1.0 / d);
      log_ratio -= std::log(offsets.draw(rng, sigma, &z[j * d]));
    }
    if (!accept(w, z)) return 0.0;
    for (int i = 0; i < k; ++i) {
      for (int j = i + 1; j < k; ++j) {
        double dist = 0.0;
        for (int h = 0; h < d; ++h) {
          double diff = std::abs(z[i * d + h] - z[j * d + h]);
          if (torus) diff = std::min(diff, 1.0 - diff);
          dist = std::max(dist, diff);
        }
        const double ratio = w[i] * w[j] / std::pow(dist, d);
        if (ratio < 1.0) log_ratio += gamma * std::log(ratio);
      }
    }
    return std::exp(log_ratio);
  }
};

template <typename Block>
IntegralEstimate run_blocks(std::uint64_t samples, RngStream stream, unsigned threads,
                            Block&& block) {
  const std::uint64_t blocks = (samples + kBlockSamples - 1) / kBlockSamples;
  std::vector<Moments> partial(blocks);
  parallel_for(blocks, std::max(1u, threads), [&](std::size_t b, unsigned) {
    const std::uint64_t begin = b * kBlockSamples;
    const std::uint64_t count = std::min(kBlockSamples, samples - begin);
    Rng rng(RngStream{stream.seed, derive_stream_id(stream.stream_id, b)});
    partial[b] = block(rng, count);
  });
  Moments total;
  for (const auto& m : partial) total.merge(m);
  IntegralEstimate out;
  out.value = total.mean;
  out.samples = total.count;
  const double var = total.m2 / static_cast<double>(total.count - 1);
  out.std_error = std::sqrt(std::max(var, 0.0) / static_cast<double>(total.count));
  return out;
}

std::string format_number(double x) {
  std::ostringstream os;
  os.precision(6);
  os << x;
  return os.str();
}

}  // namespace

std::string_view to_string(IntegralKind kind) {
  return kind == IntegralKind::kNonGeometric ? "NG" : "G";
}

IntegralEstimate estimate_JNG(int k, double tau, double gamma, int d, double eps,
                              std::uint64_t samples, RngStream stream,
                              const EstimatorOptions& options) {
  check_inputs(k, tau, gamma, d, eps, samples, options);
  const Regime regime = classify_regime(k, tau);
  if (regime == Regime::kBoundary) {
    throw BoundaryError("J^NG is not defined on the boundary k = 2/(3-tau)");
  }
  if (eps == 0.0 && regime != Regime::kNonGeometric) {
    throw DivergenceError("J^NG diverges unless k > 2/(3-tau) (k=" + std::to_string(k) +
                          ", tau=" + format_number(tau) + "); use eps > 0 for the truncated integral");
  }

  // y proposal: density (1-b) y^{-b} on (0,1] or (tau-1) y^{-tau} on (1,inf),
  // each with probability 1/2.
  const double lo = std::max(0.0, 2.0 * tau - 5.0 + 4.0 / k);
  const double b = lo < 1.0 ? lo + options.proposal.weight_fraction * (1.0 - lo)
                            : options.proposal.weight_fraction;
  const double lambda = 2.0 * d * (gamma - 1.0) * options.proposal.tail_fraction;
  const Sampler sampler{k, d, tau, gamma, true, OffsetProposal(d, lambda, 0.5)};

  auto draw_weight = [&](Rng& rng, double& q) {
    double y;
    if (rng.uniform() < 0.5) {
      y = std::pow(rng.uniform_pos(), 1.0 / (1.0 - b));
    } else {
      y = std::pow(rng.uniform_pos(), -1.0 / (tau - 1.0));
    }
    q = y <= 1.0 ? 0.5 * (1.0 - b) * std::pow(y, -b) : 0.5 * (tau - 1.0) * std::pow(y, -tau);
    return y;
  };
  auto accept = [&](const std::vector<double>& y, const std::vector<double>&) {
    if (eps == 0.0) return true;
    return std::all_of(y.begin(), y.end(), [&](double v) { return v >= eps && v <= 1.0 / eps; });
  };

  IntegralEstimate out = run_blocks(samples, stream, options.threads, [&](Rng& rng, std::uint64_t n) {
    std::vector<double> y(k), z(static_cast<std::size_t>(k) * d);
    Moments m;
    for (std::uint64_t s = 0; s < n; ++s) m.add(sampler.once(rng, y, z, draw_weight, accept));
    return m;
  });
  out.kind = IntegralKind::kNonGeometric;
  if (eps > 0.0) {
    out.eps = eps;
    out.truncation = "y in [" + format_number(eps) + ", " + format_number(1.0 / eps) + "]^k";
  } else {
    out.truncation = "none";
  }
  out.proposal = "anchored; y ~ 1/2 (1-b)y^-b on (0,1] + 1/2 Pareto(tau-1) on (1,inf), b=" +
                 format_number(b) + "; offsets core+tail lambda=" + format_number(lambda);
  return out;
}

IntegralEstimate estimate_JG(int k, double tau, double gamma, int d, double w0, double eps,
                             std::uint64_t samples, RngStream stream,
                             const EstimatorOptions& options) {
  check_inputs(k, tau, gamma, d, eps, samples, options);
  if (!(w0 > 0.0) || !std::isfinite(w0)) throw ValidationError("w0 must be positive");
  const Regime regime = classify_regime(k, tau);
  if (regime == Regime::kBoundary) {
    throw BoundaryError("J^G is not defined on the boundary k = 2/(3-tau)");
  }
  if (eps == 0.0 && regime != Regime::kGeometric) {
    throw DivergenceError("J^G diverges unless k < 2/(3-tau) (k=" + std::to_string(k) +
                          ", tau=" + format_number(tau) + "); use eps > 0 for the truncated integral");
  }

  // Pareto weight proposal; exponents below min(2tau-4, 2tau-6+4/k) keep the
  // variance finite on the untruncated domain.
  const double bound = std::min(2.0 * tau - 4.0, 2.0 * tau - 6.0 + 4.0 / k);
  const double shape = bound > 0.0 ? options.proposal.weight_fraction * bound : tau - 1.0;
  const double lambda = 2.0 * d * (gamma - 1.0) * options.proposal.tail_fraction;
  const double limit = eps > 0.0 ? 1.0 / eps : kInf;
  const Sampler sampler{k, d, tau, gamma, false, OffsetProposal(d, lambda, limit)};

  auto draw_weight = [&](Rng& rng, double& q) {
    const double w = w0 * std::pow(rng.uniform_pos(), -1.0 / shape);
    q = shape * std::pow(w0, shape) * std::pow(w, -shape - 1.0);
    return w;
  };
  // z_1 = 0 in the integral; the anchored offsets are translated so that
  // vertex 0 sits at the origin before the A(eps) test.
  auto accept = [&](const std::vector<double>&, const std::vector<double>& z) {
    if (eps == 0.0) return true;
    for (int j = 1; j < k; ++j) {
      double r = 0.0;
      for (int h = 0; h < d; ++h) r = std::max(r, std::abs(z[j * d + h] - z[h]));
      if (r <= eps || r > 1.0 / eps) return false;
    }
    return true;
  };

  IntegralEstimate out = run_blocks(samples, stream, options.threads, [&](Rng& rng, std::uint64_t n) {
    std::vector<double> w(k), z(static_cast<std::size_t>(k) * d);
    Moments m;
    for (std::uint64_t s = 0; s < n; ++s) m.add(sampler.once(rng, w, z, draw_weight, accept));
    return m;
  });
  out.kind = IntegralKind::kGeometric;
  if (eps > 0.0) {
    out.eps = eps;
    out.truncation = "z_i - z_1 in [-" + format_number(1.0 / eps) + ", " + format_number(1.0 / eps) +
                     "]^d minus [-" + format_number(eps) + ", " + format_number(eps) + "]^d";
  } else {
    out.truncation = "none";
  }
  out.proposal = "anchored; w ~ Pareto shape " + format_number(shape) +
                 "; offsets core+tail lambda=" + format_number(lambda);
  return out;
}

double predicted_limit_constant(int k, double tau, double gamma, int d, const IntegralEstimate& J,
                                double mu) {
  if (k < 2) throw ValidationError("k must be at least 2");
  if (!(tau > 2.0 && tau < 3.0)) throw ValidationError("tau must lie in (2,3)");
  if (!(gamma > 1.0)) throw ValidationError("gamma must exceed 1");
  if (d < 1) throw ValidationError("d must be at least 1");
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ValidationError("mu must be positive");
  const Regime regime = classify_regime(k, tau);
  if (regime == Regime::kBoundary) throw BoundaryError("no limit constant on the boundary k = 2/(3-tau)");
  const IntegralKind expected =
      regime == Regime::kNonGeometric ? IntegralKind::kNonGeometric : IntegralKind::kGeometric;
  if (J.kind != expected) {
    throw ValidationError("regime mismatch: (k, tau) is in the " + std::string(to_string(regime)) +
                          " regime but the integral is J^" + std::string(to_string(J.kind)));
  }
  const double w0 = mu * (tau - 2.0) / (tau - 1.0);
  const double log_norm = k * std::log((tau - 1.0) * std::pow(w0, tau - 1.0));
  const double log_mu = regime == Regime::kNonGeometric ? -(tau - 1.0) * k / 2.0 * std::log(mu)
                                                         : (1.0 - k) * std::log(mu);
  return J.value * std::exp(log_norm + log_mu - std::lgamma(k + 1.0));
}

}  // namespace girg
