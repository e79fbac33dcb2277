#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace girg {

enum class Regime { kNonGeometric, kGeometric, kBoundary };

std::string_view to_string(Regime regime);

/// NG if k > 2/(3-tau), G if k < 2/(3-tau), boundary when k(3-tau) == 2 up
/// to 1e-12.
Regime classify_regime(int k, double tau);

/// tau_k = 3 - 2/k, the degree exponent separating the regimes (k >= 3).
double regime_threshold(int k);

/// Growth exponent of the total k-clique count: k(3-tau)/2 in the NG regime,
/// 1 in the G regime. Throws BoundaryError on the boundary.
double theoretical_exponent(int k, double tau);

/// Weight exponents alpha (k entries, >= 0) and distance exponents beta for
/// vertices 2..k (k-1 vectors of d entries, <= 0). Vertex 1 is the reference;
/// its distance exponent is -infinity and never attains a max.
struct ExponentProfile {
  int k = 3;
  double tau = 2.5;
  double gamma = 2.0;
  int d = 1;
  std::vector<double> alpha;
  std::vector<std::vector<double>> beta;

  static ExponentProfile symmetric(int k, double tau, double gamma, int d, double alpha,
                                   double beta);
  void validate() const;
};

/// f(alpha, beta) = k + (1-tau) sum alpha_i + sum_{i>1,h} beta_i^h
///                  + gamma sum_{i<j} min{alpha_i + alpha_j - 1 - d max_h max(beta_i^h, beta_j^h), 0}
double exponent_f(const ExponentProfile& profile);

struct RegimeOptimum {
  Regime regime = Regime::kBoundary;
  double alpha_star = 0.0;
  double beta_star = 0.0;  // common per-coordinate value
  double f_star = 0.0;
  ExponentProfile profile;
};

/// Grid search over symmetric profiles (alpha in [0,1], beta in [-1/d, 0])
/// at spacing 1/grid_resolution, followed by a compass-search polish.
/// Requires 2 < tau < 3, gamma > 1, k >= 3; throws BoundaryError when
/// k = 2/(3-tau).
RegimeOptimum optimize_f(int k, double tau, double gamma, int d, int grid_resolution = 200);

struct GridMaximum {
  double f = 0.0;
  ExponentProfile profile;
  std::uint64_t profiles_checked = 0;
};

/// Exhaustive maximum over the coarse asymmetric grid
/// alpha in {0, 1/4, 1/2, 3/4, 1}^k, beta_i in {0, -1/(2d), -1/d} (equal
/// across coordinates) for i = 2..k. Intended for k <= 6.
GridMaximum asymmetric_grid_maximum(int k, double tau, double gamma, int d);

}  // namespace girg
