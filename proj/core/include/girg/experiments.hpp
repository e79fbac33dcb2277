#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "girg/cliques.hpp"
#include "girg/model.hpp"
#include "girg/sampler.hpp"
#include "girg/theory.hpp"

namespace girg {

struct SweepConfig {
  double tau = 2.5;
  double gamma = 1.5;
  int d = 1;
  double w0 = 1.0;
  std::vector<std::uint64_t> n_grid;
  int replicas = 1;
  std::vector<int> k_list{3};
  std::uint64_t seed = 1;
  /// Windows and bands are evaluated on rows whose k matches theirs.
  std::vector<TypicalCliqueWindow> windows;
  std::vector<CliqueBandSpec> bands;
  SamplerKind sampler = SamplerKind::kCellGrid;
  std::uint64_t clique_cap = kDefaultCliqueCap;
  unsigned threads = 1;

  /// Throws ValidationError naming the offending field.
  void validate() const;
  GirgParams params(std::uint64_t n) const;
  /// Substream of replica r at size n.
  RngStream replica_stream(std::uint64_t n, int replica) const;
};

struct SweepRow {
  std::uint64_t n = 0;
  int replica = 0;
  int k = 0;
  std::uint64_t edges = 0;
  std::uint64_t count = 0;
  bool truncated = false;
  /// Aligned with SweepConfig::windows / bands; empty where k differs.
  std::vector<std::optional<std::uint64_t>> window_counts;
  std::vector<std::optional<std::uint64_t>> band_counts;
  double wall_seconds = 0.0;
};

using RowSink = std::function<void(const SweepRow&)>;

/// Samples one GIRG per (n, replica) and counts cliques for every k. Rows
/// are ordered by (n, replica, k) and handed to `sink` once all replicas of
/// an n are done. Truncated enumerations are flagged, not fatal.
std::vector<SweepRow> run_scaling_sweep(const SweepConfig& cfg, const RowSink& sink = {});

struct SlopeFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
  double slope_std_error = 0.0;
  double slope_ci_low = 0.0;
  double slope_ci_high = 0.0;
  std::vector<std::uint64_t> n_values;
  std::vector<double> per_n_means;
  std::vector<double> per_n_q10;
  std::vector<double> per_n_q90;
  std::vector<std::string> warnings;
};

/// OLS of log(mean) on log(n) over grouped samples. Groups with zero mean are
/// dropped with a warning; fewer than three surviving points is an error.
SlopeFit fit_power_law(const std::vector<std::uint64_t>& n_values,
                       const std::vector<std::vector<double>>& samples);

/// Slope fit of the total k-clique counts in a sweep table. Truncated rows are
/// excluded with a warning; `drop_smallest` ignores the smallest n values.
SlopeFit fit_loglog_slope(const std::vector<SweepRow>& rows, int k, std::size_t drop_smallest = 0);

struct RelativeVariancePoint {
  std::uint64_t n = 0;
  std::size_t replicas = 0;
  double mean = 0.0;
  double variance = 0.0;
  double relative_variance = 0.0;
};

struct SelfAveragingResult {
  std::vector<RelativeVariancePoint> points;
  /// Slope of log(Var/Mean^2) on log(n); needs two or more usable points.
  std::optional<double> slope;
  std::vector<std::string> warnings;
};

SelfAveragingResult relative_variance_table(const std::vector<std::uint64_t>& n_values,
                                            const std::vector<std::vector<double>>& samples);

/// Band at the optimizer of f for (k, tau, gamma, d).
CliqueBandSpec optimal_band(int k, double tau, double gamma, int d, double eps);

/// Var/Mean^2 of the ordered band count per n. Requires replicas >= 2.
SelfAveragingResult self_averaging_probe(const SweepConfig& cfg, const CliqueBandSpec& band);

struct TypicalRow {
  std::uint64_t n = 0;
  double eps = 0.0;
  WindowKind kind = WindowKind::kGeometric;
  double mean_fraction = 0.0;
  std::size_t replicas_used = 0;
  std::size_t replicas_excluded = 0;
};

/// Mean fraction of k-cliques inside W^NG(eps) or W^G(eps) (chosen by the
/// regime of (k, tau)) per n and eps. Replicas without cliques are excluded.
std::vector<TypicalRow> typical_clique_experiment(const SweepConfig& cfg, int k,
                                                  const std::vector<double>& eps_list);

struct GammaSensitivity {
  std::vector<double> gammas;
  std::vector<SlopeFit> fits;
  double max_slope_difference = 0.0;
};

GammaSensitivity gamma_sensitivity(const SweepConfig& cfg, const std::vector<double>& gammas, int k);

struct PhaseCell {
  double tau = 0.0;
  int k = 0;
  Regime regime = Regime::kBoundary;
  double threshold = 0.0;
  std::optional<double> exponent;
};

std::vector<PhaseCell> phase_diagram(const std::vector<double>& tau_grid, const std::vector<int>& k_grid);

}  // namespace girg
