#include "girg/theory.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "girg/errors.hpp"

namespace girg {
namespace {

constexpr double kBoundaryTolerance = 1e-12;

void check_model(int k, double tau, double gamma, int d) {
  if (k < 3) throw ValidationError("k must be at least 3");
  if (!(tau > 2.0 && tau < 3.0)) throw ValidationError("tau must lie in (2,3)");
  if (!(gamma > 1.0)) throw ValidationError("gamma must exceed 1");
  if (d < 1) throw ValidationError("d must be at least 1");
}

}  // namespace

std::string_view to_string(Regime regime) {
  switch (regime) {
    case Regime::kNonGeometric:
      return "NG";
    case Regime::kGeometric:
      return "G";
    case Regime::kBoundary:
      return "boundary";
  }
  return "unknown";
}

Regime classify_regime(int k, double tau) {
  const double margin = k * (3.0 - tau) - 2.0;
  if (std::abs(margin) <= kBoundaryTolerance) return Regime::kBoundary;
  return margin > 0.0 ? Regime::kNonGeometric : Regime::kGeometric;
}

double regime_threshold(int k) {
  if (k < 3) throw ValidationError("regime_threshold: k must be at least 3");
  return 3.0 - 2.0 / k;
}

double theoretical_exponent(int k, double tau) {
  switch (classify_regime(k, tau)) {
    case Regime::kNonGeometric:
      return k * (3.0 - tau) / 2.0;
    case Regime::kGeometric:
      return 1.0;
    case Regime::kBoundary:
      break;
  }
  throw BoundaryError("k = 2/(3-tau) lies on the regime boundary (k=" + std::to_string(k) +
                      ", tau=" + std::to_string(tau) + ")");
}

ExponentProfile ExponentProfile::symmetric(int k, double tau, double gamma, int d, double alpha,
                                           double beta) {
  ExponentProfile p;
  p.k = k;
  p.tau = tau;
  p.gamma = gamma;
  p.d = d;
  p.alpha.assign(static_cast<std::size_t>(k), alpha);
  p.beta.assign(static_cast<std::size_t>(k - 1), std::vector<double>(static_cast<std::size_t>(d), beta));
  return p;
}

void ExponentProfile::validate() const {
  if (k < 2) throw ValidationError("profile: k must be at least 2");
  if (d < 1) throw ValidationError("profile: d must be at least 1");
  if (alpha.size() != static_cast<std::size_t>(k)) throw ValidationError("profile: alpha needs k entries");
  if (beta.size() != static_cast<std::size_t>(k - 1)) throw ValidationError("profile: beta needs k-1 entries");
  for (double a : alpha) {
    if (!(a >= 0.0)) throw ValidationError("profile: infeasible, alpha entries must be nonnegative");
  }
  for (const auto& b : beta) {
    if (b.size() != static_cast<std::size_t>(d)) throw ValidationError("profile: beta entries need d components");
    for (double x : b) {
      if (!(x <= 0.0)) throw ValidationError("profile: infeasible, beta components must be nonpositive");
    }
  }
}

double exponent_f(const ExponentProfile& p) {
  p.validate();
  const int k = p.k;
  double alpha_sum = 0.0;
  for (double a : p.alpha) alpha_sum += a;
  double beta_sum = 0.0;
  std::vector<double> beta_max(static_cast<std::size_t>(k - 1));
  for (int i = 0; i < k - 1; ++i) {
    beta_max[i] = *std::max_element(p.beta[i].begin(), p.beta[i].end());
    for (double x : p.beta[i]) beta_sum += x;
  }
  double pair_sum = 0.0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      // Vertex 0 is the reference: only the partner's beta can attain the max.
      const double bmax = i == 0 ? beta_max[j - 1] : std::max(beta_max[i - 1], beta_max[j - 1]);
      pair_sum += std::min(p.alpha[i] + p.alpha[j] - 1.0 - p.d * bmax, 0.0);
    }
  }
  return k + (1.0 - p.tau) * alpha_sum + beta_sum + p.gamma * pair_sum;
}

RegimeOptimum optimize_f(int k, double tau, double gamma, int d, int grid_resolution) {
  check_model(k, tau, gamma, d);
  if (grid_resolution < 2) throw ValidationError("grid_resolution must be at least 2");
  const Regime regime = classify_regime(k, tau);
  if (regime == Regime::kBoundary) {
    throw BoundaryError("optimize_f: k = 2/(3-tau) is excluded (k=" + std::to_string(k) +
                        ", tau=" + std::to_string(tau) + ")");
  }
  auto value = [&](double a, double b) {
    return exponent_f(ExponentProfile::symmetric(k, tau, gamma, d, a, b));
  };

  double best_a = 0.0, best_b = 0.0, best_f = value(0.0, 0.0);
  for (int ia = 0; ia <= grid_resolution; ++ia) {
    const double a = static_cast<double>(ia) / grid_resolution;
    for (int ib = 0; ib <= grid_resolution; ++ib) {
      const double b = -static_cast<double>(ib) / (static_cast<double>(grid_resolution) * d);
      const double f = value(a, b);
      if (f > best_f) {
        best_f = f;
        best_a = a;
        best_b = b;
      }
    }
  }

  // Compass-search polish within the feasible box; only strict improvements.
  const double b_min = -1.0 / d;
  double step = 1.0 / grid_resolution;
  while (step > 1e-13) {
    bool moved = false;
    for (const auto& [da, db] : {std::pair{1.0, 0.0}, {-1.0, 0.0}, {0.0, 1.0}, {0.0, -1.0}}) {
      const double a = std::clamp(best_a + da * step, 0.0, 1.0);
      const double b = std::clamp(best_b + db * step / d, b_min, 0.0);
      const double f = value(a, b);
      if (f > best_f + 1e-15) {
        best_f = f;
        best_a = a;
        best_b = b;
        moved = true;
      }
    }
    if (!moved) step /= 2.0;
  }

  RegimeOptimum out;
  out.regime = regime;
  out.alpha_star = best_a;
  out.beta_star = best_b;
  out.f_star = best_f;
  out.profile = ExponentProfile::symmetric(k, tau, gamma, d, best_a, best_b);
  return out;
}

GridMaximum asymmetric_grid_maximum(int k, double tau, double gamma, int d) {
  check_model(k, tau, gamma, d);
  if (k > 7) throw ValidationError("asymmetric grid is limited to k <= 7");
  static constexpr double kAlphas[] = {0.0, 0.25, 0.5, 0.75, 1.0};
  const double betas[] = {0.0, -0.5 / d, -1.0 / d};

  std::vector<int> ai(static_cast<std::size_t>(k), 0), bi(static_cast<std::size_t>(k - 1), 0);
  ExponentProfile p = ExponentProfile::symmetric(k, tau, gamma, d, 0.0, 0.0);
  GridMaximum best;
  best.f = -1e300;
  while (true) {
    for (int i = 0; i < k; ++i) p.alpha[i] = kAlphas[ai[i]];
    for (int i = 0; i < k - 1; ++i) std::fill(p.beta[i].begin(), p.beta[i].end(), betas[bi[i]]);
    const double f = exponent_f(p);
    ++best.profiles_checked;
    if (f > best.f) {
      best.f = f;
      best.profile = p;
    }
    // Odometer over alpha indices then beta indices.
    int pos = 0;
    for (; pos < 2 * k - 1; ++pos) {
      if (pos < k) {
        if (++ai[pos] < 5) break;
        ai[pos] = 0;
      } else {
        if (++bi[pos - k] < 3) break;
        bi[pos - k] = 0;
      }
    }
    if (pos == 2 * k - 1) break;
  }
  return best;
}

}  // namespace girg
