#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "girg/graph.hpp"
#include "girg/sketch.hpp"

namespace girg {

/// Closed interval [lo, hi].
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool contains(double x) const { return lo <= x && x <= hi; }
};

/// I_eps(n^eta) = [eps * (mu n)^eta, (mu n)^eta / eps], 0 < eps < 1.
Interval band_interval(double eta, double eps, std::uint64_t n, double mu);

inline constexpr std::uint64_t kDefaultCliqueCap = 10'000'000'000ULL;

struct EnumerationOptions {
  /// Enumeration stops once this many cliques were visited.
  std::uint64_t cap = kDefaultCliqueCap;
  /// Worker count for root-parallel enumeration; 1 runs serially. Visitors
  /// passed with threads > 1 must tolerate concurrent calls.
  unsigned threads = 1;
};

struct EnumerationResult {
  std::uint64_t count = 0;
  bool truncated = false;
};

/// Receives each clique as ascending vertex ids; return false to abort.
using CliqueVisitor = std::function<bool(std::span<const VertexId>)>;

/// Exact triangle count by forward-neighbor intersection on the degeneracy
/// order. Throws CapacityError if the count would exceed 2^63 - 1.
std::uint64_t count_triangles_forward(const Graph& g);

/// Visits every k-clique exactly once (k >= 2). An aborting visitor or a hit
/// cap sets `truncated`; `count` is then the number visited so far.
EnumerationResult enumerate_k_cliques(const Graph& g, int k, const CliqueVisitor& visitor,
                                      const EnumerationOptions& options = {});

/// Counting-only fast path of enumerate_k_cliques.
EnumerationResult count_k_cliques(const Graph& g, int k, const EnumerationOptions& options = {});

/// Localized band: weight exponents alpha (k entries, >= 0), distance
/// exponents beta for slots 2..k (k-1 vectors of d entries, <= 0; slot 1 is
/// the reference and carries no distance constraint) and sensitivity eps.
struct CliqueBandSpec {
  int k = 0;
  std::vector<double> alpha;
  std::vector<std::vector<double>> beta;
  double eps = 0.5;

  /// Same alpha for all slots and the same beta for every slot/coordinate.
  static CliqueBandSpec symmetric(int k, int d, double alpha, double beta, double eps);

  /// Throws ValidationError on shape or sign violations.
  void validate(int d) const;
};

enum class WindowKind { kNonGeometric, kGeometric };

/// W^NG(eps): all weights in I_eps(sqrt(mu n)), distances free.
/// W^G(eps):  some reference member with all per-coordinate distances of the
///            others in I_eps((mu n)^(-1/d)), weights free.
struct TypicalCliqueWindow {
  WindowKind kind = WindowKind::kGeometric;
  int k = 3;
  double eps = 0.5;
};

struct AttributeSummary {
  QuantileSketch member_weights;
  QuantileSketch pairwise_distances;

  void merge(const AttributeSummary& other) {
    member_weights.merge(other.member_weights);
    pairwise_distances.merge(other.pairwise_distances);
  }
};

struct CliqueCountResult {
  int k = 0;
  std::uint64_t total = 0;              // unordered k-cliques
  std::optional<std::uint64_t> in_band; // ordered (band) or unordered (window)
  std::optional<AttributeSummary> summary;
  bool truncated = false;
};

/// Precomputed membership tests for a band on a particular graph.
class BandMatcher {
 public:
  BandMatcher(const GirgGraph& g, const CliqueBandSpec& spec);
  /// Number of assignments of the clique's vertices to slots 1..k that
  /// satisfy every weight and distance constraint.
  std::uint64_t qualifying_assignments(std::span<const VertexId> clique) const;

 private:
  const GirgGraph* graph_;
  int k_;
  int d_;
  std::vector<Interval> weight_bands_;
  std::vector<Interval> distance_bands_;  // (k-1) * d, slot-major
};

class WindowMatcher {
 public:
  WindowMatcher(const GirgGraph& g, const TypicalCliqueWindow& window);
  bool contains(std::span<const VertexId> clique) const;

 private:
  const GirgGraph* graph_;
  WindowKind kind_;
  Interval band_;
};

/// Total unordered count plus the number of ordered k-tuples in the band
/// (each clique contributes its qualifying role assignments).
CliqueCountResult count_cliques_in_band(const GirgGraph& g, const CliqueBandSpec& spec,
                                        const EnumerationOptions& options = {},
                                        bool collect_summary = false);

/// Total plus the number of cliques with window_membership == true.
CliqueCountResult count_cliques_in_window(const GirgGraph& g, const TypicalCliqueWindow& window,
                                          const EnumerationOptions& options = {},
                                          bool collect_summary = false);

/// Total count with optional attribute summaries.
CliqueCountResult count_cliques(const GirgGraph& g, int k, const EnumerationOptions& options = {},
                                bool collect_summary = false);

bool window_membership(const GirgGraph& g, std::span<const VertexId> clique,
                       const TypicalCliqueWindow& window);

/// Fraction of k-cliques inside the window. Throws ValidationError when the
/// graph has no k-clique.
double typical_fraction(const GirgGraph& g, int k, const TypicalCliqueWindow& window,
                        const EnumerationOptions& options = {});

}  // namespace girg
