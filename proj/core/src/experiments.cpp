#include "girg/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include "girg/errors.hpp"
#include "girg/parallel.hpp"
#include "girg/stats.hpp"

namespace girg {
namespace {

struct ReplicaResult {
  std::vector<SweepRow> rows;
};

ReplicaResult run_replica(const SweepConfig& cfg, std::uint64_t n, int replica) {
  const auto start = std::chrono::steady_clock::now();
  const GirgGraph g = sample(cfg.params(n), cfg.replica_stream(n, replica), cfg.sampler);
  ReplicaResult out;
  for (int k : cfg.k_list) {
    SweepRow row;
    row.n = n;
    row.replica = replica;
    row.k = k;
    row.edges = g.edge_count();
    row.window_counts.resize(cfg.windows.size());
    row.band_counts.resize(cfg.bands.size());

    std::vector<WindowMatcher> windows;
    std::vector<std::size_t> window_slots;
    for (std::size_t i = 0; i < cfg.windows.size(); ++i) {
      if (cfg.windows[i].k != k) continue;
      windows.emplace_back(g, cfg.windows[i]);
      window_slots.push_back(i);
    }
    std::vector<BandMatcher> bands;
    std::vector<std::size_t> band_slots;
    for (std::size_t i = 0; i < cfg.bands.size(); ++i) {
      if (cfg.bands[i].k != k) continue;
      bands.emplace_back(g, cfg.bands[i]);
      band_slots.push_back(i);
    }

    const EnumerationOptions options{cfg.clique_cap, 1};
    if (windows.empty() && bands.empty()) {
      const auto e = count_k_cliques(g.topology(), k, options);
      row.count = e.count;
      row.truncated = e.truncated;
    } else {
      std::vector<std::uint64_t> in_window(windows.size(), 0), in_band(bands.size(), 0);
      const auto e = enumerate_k_cliques(
          g.topology(), k,
          [&](std::span<const VertexId> clique) {
            for (std::size_t i = 0; i < windows.size(); ++i) in_window[i] += windows[i].contains(clique);
            for (std::size_t i = 0; i < bands.size(); ++i) in_band[i] += bands[i].qualifying_assignments(clique);
            return true;
          },
          options);
      row.count = e.count;
      row.truncated = e.truncated;
      for (std::size_t i = 0; i < windows.size(); ++i) row.window_counts[window_slots[i]] = in_window[i];
      for (std::size_t i = 0; i < bands.size(); ++i) row.band_counts[band_slots[i]] = in_band[i];
    }
    out.rows.push_back(std::move(row));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  for (auto& row : out.rows) row.wall_seconds = seconds;
  return out;
}

std::vector<std::vector<double>> group_by_n(const std::vector<std::uint64_t>& ns,
                                            const std::vector<SweepRow>& rows, int k,
                                            const std::function<std::optional<double>(const SweepRow&)>& value) {
  std::vector<std::vector<double>> groups(ns.size());
  for (const auto& row : rows) {
    if (row.k != k) continue;
    const auto it = std::lower_bound(ns.begin(), ns.end(), row.n);
    if (it == ns.end() || *it != row.n) continue;
    if (auto v = value(row)) groups[static_cast<std::size_t>(it - ns.begin())].push_back(*v);
  }
  return groups;
}

std::vector<std::uint64_t> distinct_n(const std::vector<SweepRow>& rows, int k) {
  std::set<std::uint64_t> ns;
  for (const auto& row : rows) {
    if (row.k == k) ns.insert(row.n);
  }
  return {ns.begin(), ns.end()};
}

}  // namespace

void SweepConfig::validate() const {
  GirgParams(1, d, tau, w0, gamma, seed);  // model bounds
  if (n_grid.empty()) throw ValidationError("n_grid must not be empty");
  for (std::size_t i = 0; i < n_grid.size(); ++i) {
    if (n_grid[i] < 1) throw ValidationError("n_grid entries must be positive");
    if (i > 0 && n_grid[i] <= n_grid[i - 1]) throw ValidationError("n_grid must be strictly increasing");
  }
  if (replicas < 1) throw ValidationError("replicas must be at least 1");
  if (k_list.empty()) throw ValidationError("k_list must not be empty");
  for (int k : k_list) {
    if (k < 2) throw ValidationError("k_list entries must be at least 2");
  }
  for (const auto& w : windows) {
    if (w.k < 2) throw ValidationError("windows: k must be at least 2");
    if (!(w.eps > 0.0 && w.eps < 1.0)) throw ValidationError("windows: eps must lie in (0,1)");
  }
  for (const auto& b : bands) b.validate(d);
  if (clique_cap < 1) throw ValidationError("clique_cap must be positive");
  if (sampler == SamplerKind::kNaive && n_grid.back() > kNaiveSamplerMaxVertices) {
    throw ValidationError("n_grid exceeds the naive sampler limit");
  }
}

GirgParams SweepConfig::params(std::uint64_t n) const { return GirgParams(n, d, tau, w0, gamma, seed); }

RngStream SweepConfig::replica_stream(std::uint64_t n, int replica) const {
  return RngStream{seed, derive_stream_id(n, static_cast<std::uint64_t>(replica))};
}

std::vector<SweepRow> run_scaling_sweep(const SweepConfig& cfg, const RowSink& sink) {
  cfg.validate();
  std::vector<SweepRow> table;
  for (const std::uint64_t n : cfg.n_grid) {
    std::vector<ReplicaResult> results(static_cast<std::size_t>(cfg.replicas));
    parallel_for(results.size(), std::max(1u, cfg.threads), [&](std::size_t r, unsigned) {
      results[r] = run_replica(cfg, n, static_cast<int>(r));
    });
    for (auto& result : results) {
      for (auto& row : result.rows) {
        if (sink) sink(row);
        table.push_back(std::move(row));
      }
    }
  }
  return table;
}

SlopeFit fit_power_law(const std::vector<std::uint64_t>& n_values,
                       const std::vector<std::vector<double>>& samples) {
  if (n_values.size() != samples.size()) throw ValidationError("fit: n values and samples differ in length");
  SlopeFit fit;
  std::vector<double> log_n, log_mean;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (samples[i].empty()) {
      fit.warnings.push_back("n=" + std::to_string(n_values[i]) + " has no samples; dropped");
      continue;
    }
    const double m = stats::mean(samples[i]);
    if (!(m > 0.0)) {
      fit.warnings.push_back("n=" + std::to_string(n_values[i]) + " has zero mean count; dropped");
      continue;
    }
    fit.n_values.push_back(n_values[i]);
    fit.per_n_means.push_back(m);
    fit.per_n_q10.push_back(stats::quantile(samples[i], 0.1));
    fit.per_n_q90.push_back(stats::quantile(samples[i], 0.9));
    log_n.push_back(std::log(static_cast<double>(n_values[i])));
    log_mean.push_back(std::log(m));
  }
  if (log_n.size() < 3) throw ValidationError("fit needs at least 3 n values with nonzero mean");
  const auto ols = stats::ols(log_n, log_mean);
  fit.slope = ols.slope;
  fit.intercept = ols.intercept;
  fit.r_squared = ols.r_squared;
  fit.slope_std_error = ols.slope_std_error;
  const double t = stats::student_t_quantile(0.975, static_cast<double>(log_n.size() - 2));
  fit.slope_ci_low = fit.slope - t * fit.slope_std_error;
  fit.slope_ci_high = fit.slope + t * fit.slope_std_error;
  return fit;
}

SlopeFit fit_loglog_slope(const std::vector<SweepRow>& rows, int k, std::size_t drop_smallest) {
  auto ns = distinct_n(rows, k);
  if (drop_smallest >= ns.size()) throw ValidationError("fit: drop_smallest removes every n value");
  ns.erase(ns.begin(), ns.begin() + static_cast<std::ptrdiff_t>(drop_smallest));
  std::size_t truncated = 0;
  const auto groups = group_by_n(ns, rows, k, [&](const SweepRow& row) -> std::optional<double> {
    if (row.truncated) {
      ++truncated;
      return std::nullopt;
    }
    return static_cast<double>(row.count);
  });
  SlopeFit fit = fit_power_law(ns, groups);
  if (truncated > 0) {
    fit.warnings.insert(fit.warnings.begin(),
                        std::to_string(truncated) + " truncated rows excluded from the fit");
  }
  return fit;
}

SelfAveragingResult relative_variance_table(const std::vector<std::uint64_t>& n_values,
                                            const std::vector<std::vector<double>>& samples) {
  if (n_values.size() != samples.size()) throw ValidationError("n values and samples differ in length");
  SelfAveragingResult out;
  std::vector<double> log_n, log_rv;
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (samples[i].size() < 2) throw ValidationError("relative variance needs at least 2 replicas per n");
    RelativeVariancePoint p;
    p.n = n_values[i];
    p.replicas = samples[i].size();
    p.mean = stats::mean(samples[i]);
    p.variance = stats::variance(samples[i]);
    if (!(p.mean > 0.0)) {
      out.warnings.push_back("n=" + std::to_string(p.n) + " has zero mean; dropped");
      continue;
    }
    p.relative_variance = p.variance / (p.mean * p.mean);
    out.points.push_back(p);
    if (p.relative_variance > 0.0) {
      log_n.push_back(std::log(static_cast<double>(p.n)));
      log_rv.push_back(std::log(p.relative_variance));
    }
  }
  if (log_n.size() >= 2) out.slope = stats::ols(log_n, log_rv).slope;
  return out;
}

CliqueBandSpec optimal_band(int k, double tau, double gamma, int d, double eps) {
  const auto opt = optimize_f(k, tau, gamma, d);
  // Snap grid noise so the band uses the exact optimizer.
  const double alpha = std::round(opt.alpha_star * 2.0) / 2.0;
  const double beta = std::round(opt.beta_star * d) / d;
  return CliqueBandSpec::symmetric(k, d, alpha, beta, eps);
}

SelfAveragingResult self_averaging_probe(const SweepConfig& cfg, const CliqueBandSpec& band) {
  if (cfg.replicas < 2) throw ValidationError("self-averaging probe needs replicas >= 2 (variance undefined)");
  SweepConfig run = cfg;
  run.k_list = {band.k};
  run.windows.clear();
  run.bands = {band};
  const auto rows = run_scaling_sweep(run);
  const auto groups = group_by_n(run.n_grid, rows, band.k, [](const SweepRow& row) {
    return row.band_counts[0].has_value() ? std::optional<double>(static_cast<double>(*row.band_counts[0]))
                                          : std::nullopt;
  });
  return relative_variance_table(run.n_grid, groups);
}

std::vector<TypicalRow> typical_clique_experiment(const SweepConfig& cfg, int k,
                                                  const std::vector<double>& eps_list) {
  if (eps_list.empty()) throw ValidationError("eps_list must not be empty");
  const Regime regime = classify_regime(k, cfg.tau);
  if (regime == Regime::kBoundary) throw BoundaryError("typical cliques are undefined on the boundary k = 2/(3-tau)");
  const WindowKind kind = regime == Regime::kNonGeometric ? WindowKind::kNonGeometric : WindowKind::kGeometric;
  SweepConfig run = cfg;
  run.k_list = {k};
  run.bands.clear();
  run.windows.clear();
  for (double eps : eps_list) run.windows.push_back(TypicalCliqueWindow{kind, k, eps});
  const auto rows = run_scaling_sweep(run);

  std::vector<TypicalRow> out;
  for (const std::uint64_t n : run.n_grid) {
    for (std::size_t e = 0; e < eps_list.size(); ++e) {
      TypicalRow tr;
      tr.n = n;
      tr.eps = eps_list[e];
      tr.kind = kind;
      double sum = 0.0;
      for (const auto& row : rows) {
        if (row.n != n) continue;
        if (row.count == 0 || row.truncated) {
          ++tr.replicas_excluded;
          continue;
        }
        sum += static_cast<double>(*row.window_counts[e]) / static_cast<double>(row.count);
        ++tr.replicas_used;
      }
      tr.mean_fraction = tr.replicas_used > 0 ? sum / static_cast<double>(tr.replicas_used) : 0.0;
      out.push_back(tr);
    }
  }
  return out;
}

GammaSensitivity gamma_sensitivity(const SweepConfig& cfg, const std::vector<double>& gammas, int k) {
  if (gammas.size() < 2) throw ValidationError("gamma sensitivity needs at least 2 gamma values");
  GammaSensitivity out;
  out.gammas = gammas;
  for (double gamma : gammas) {
    SweepConfig run = cfg;
    run.gamma = gamma;
    run.k_list = {k};
    run.windows.clear();
    run.bands.clear();
    out.fits.push_back(fit_loglog_slope(run_scaling_sweep(run), k));
  }
  for (std::size_t i = 0; i < out.fits.size(); ++i) {
    for (std::size_t j = i + 1; j < out.fits.size(); ++j) {
      out.max_slope_difference =
          std::max(out.max_slope_difference, std::abs(out.fits[i].slope - out.fits[j].slope));
    }
  }
  return out;
}

std::vector<PhaseCell> phase_diagram(const std::vector<double>& tau_grid, const std::vector<int>& k_grid) {
  std::vector<PhaseCell> out;
  for (double tau : tau_grid) {
    if (!(tau > 2.0 && tau < 3.0)) throw ValidationError("tau grid values must lie in (2,3)");
    for (int k : k_grid) {
      if (k < 3) throw ValidationError("k grid values must be at least 3");
      PhaseCell cell;
      cell.tau = tau;
      cell.k = k;
      cell.regime = classify_regime(k, tau);
      cell.threshold = regime_threshold(k);
      if (cell.regime != Regime::kBoundary) cell.exponent = theoretical_exponent(k, tau);
      out.push_back(cell);
    }
  }
  return out;
}

}  // namespace girg
