// Acceptance checks 1-10. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails. Pass criterion numbers as arguments to run a subset.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "girg/cliques.hpp"
#include "girg/experiments.hpp"
#include "girg/graph_io.hpp"
#include "girg/integrals.hpp"
#include "girg/parallel.hpp"
#include "girg/sampler.hpp"
#include "girg/stats.hpp"
#include "girg/theory.hpp"
#include "oracles.hpp"

using namespace girg;

namespace {

// Tolerances.
constexpr double kSlopeLowNG = 1.25, kSlopeHighNG = 1.45;
constexpr double kSlopeLowG = 0.9, kSlopeHighG = 1.1;
constexpr double kExactTol = 1e-12;
constexpr double kSigmas = 4.0;
constexpr double kKsAlpha = 0.01;
constexpr double kMajority = 0.5;
constexpr int kMinDecreasingPairs = 4;
constexpr double kConstantRelTol = 0.25;
constexpr double kGammaSlopeTol = 0.15;
constexpr double kMarginalTol = 1e-10;

constexpr int kReplicas = 100;
const std::vector<std::uint64_t> kScalingGrid{1u << 10, 1u << 11, 1u << 12, 1u << 13,
                                              1u << 14, 1u << 15, 1u << 16};

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

SweepConfig triangle_sweep(double tau, double gamma, std::uint64_t seed) {
  SweepConfig cfg;
  cfg.tau = tau;
  cfg.gamma = gamma;
  cfg.d = 1;
  cfg.n_grid = kScalingGrid;
  cfg.replicas = kReplicas;
  cfg.k_list = {3};
  cfg.seed = seed;
  cfg.threads = default_thread_count();
  return cfg;
}

// Criterion 2's table is reused by criterion 8.
std::vector<SweepRow> g_tau27_rows;

const std::vector<SweepRow>& tau27_rows() {
  if (g_tau27_rows.empty()) g_tau27_rows = run_scaling_sweep(triangle_sweep(2.7, 1.5, 2027));
  return g_tau27_rows;
}

Outcome slope_in(const std::vector<SweepRow>& rows, double lo, double hi) {
  const auto fit = fit_loglog_slope(rows, 3);
  std::size_t truncated = 0;
  for (const auto& r : rows) truncated += r.truncated;
  return {fit.slope >= lo && fit.slope <= hi && truncated == 0,
          fmt("slope=%.4f (95%% CI %.4f..%.4f, r2=%.4f) target [%.2f, %.2f], truncated rows=%zu", fit.slope,
              fit.slope_ci_low, fit.slope_ci_high, fit.r_squared, lo, hi, truncated)};
}

Outcome criterion1() {
  return slope_in(run_scaling_sweep(triangle_sweep(2.1, 1.5, 2021)), kSlopeLowNG, kSlopeHighNG);
}

Outcome criterion2() { return slope_in(tau27_rows(), kSlopeLowG, kSlopeHighG); }

Outcome criterion3() {
  bool ok = true;
  std::ostringstream os;
  for (int k : {3, 4, 5}) {
    if (regime_threshold(k) != 3.0 - 2.0 / k) {
      ok = false;
      os << "threshold k=" << k << " wrong; ";
    }
  }
  const std::vector<std::pair<int, double>> ng{{3, 2.1}, {4, 2.4}, {5, 2.5}};
  const std::vector<std::pair<int, double>> g{{3, 2.7}, {4, 2.6}, {5, 2.7}};
  double worst = 0.0;
  auto check = [&](int k, double tau, Regime want, double a, double b) {
    const auto opt = optimize_f(k, tau, 1.5, 1);
    const double f_expected = std::max(1.0, k * (3.0 - tau) / 2.0);
    const double err = std::max({std::abs(opt.f_star - f_expected), std::abs(opt.alpha_star - a),
                                 std::abs(opt.beta_star - b), std::abs(exponent_f(opt.profile) - f_expected)});
    worst = std::max(worst, err);
    if (opt.regime != want || err > kExactTol) {
      ok = false;
      os << "(k=" << k << ",tau=" << tau << ") off; ";
    }
  };
  for (auto [k, tau] : ng) check(k, tau, Regime::kNonGeometric, 0.5, 0.0);
  for (auto [k, tau] : g) check(k, tau, Regime::kGeometric, 0.0, -1.0);
  os << fmt("max |error| = %.2e over 6 optimizer points, thresholds exact", worst);
  return {ok, os.str()};
}

Outcome criterion4() {
  std::mt19937_64 gen(404);
  std::uniform_int_distribution<int> size(4, 15);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  int graphs = 0, mismatches = 0;
  std::uint64_t cliques_checked = 0;
  for (int t = 0; t < 100; ++t) {
    const int n = size(gen);
    Graph g;
    if (t % 2 == 0) {
      g = oracle::erdos_renyi(n, 0.2 + 0.7 * U(gen), gen);
    } else {
      const double tau = 2.05 + 0.9 * U(gen);
      const GirgParams p(n, 1 + t % 3, tau, 1.0, 1.2 + 3.0 * U(gen), t);
      std::vector<double> w, x;
      for (int v = 0; v < n; ++v) w.push_back(1.0 + 10.0 * U(gen));
      for (int i = 0; i < n * p.d(); ++i) x.push_back(U(gen));
      g = inject_attributes(p, w, x, RngStream{404, std::uint64_t(t)}, SamplerKind::kCellGrid).topology();
    }
    ++graphs;
    if (count_triangles_forward(g) != oracle::brute_cliques(g, 3)) ++mismatches;
    const auto adj = oracle::adjacency(g);
    for (int k : {3, 4, 5}) {
      std::set<std::vector<VertexId>> seen;
      bool all_cliques = true;
      enumerate_k_cliques(g, k, [&](std::span<const VertexId> c) {
        std::vector<VertexId> s(c.begin(), c.end());
        std::sort(s.begin(), s.end());
        all_cliques = all_cliques && oracle::is_clique(adj, s);
        seen.insert(s);
        return true;
      });
      const auto brute = oracle::brute_clique_list(g, k);
      const std::set<std::vector<VertexId>> expected(brute.begin(), brute.end());
      if (!all_cliques || seen != expected || count_k_cliques(g, k).count != brute.size()) ++mismatches;
      cliques_checked += brute.size();
    }
  }
  return {mismatches == 0, fmt("%d graphs, %llu cliques, %d mismatches", graphs,
                               static_cast<unsigned long long>(cliques_checked), mismatches)};
}

Outcome criterion5() {
  const GirgParams p(2000, 1, 2.5, 1.0, 1.5, 5);
  const int R = 200;
  std::vector<double> ea, eb, da, db;
  for (int r = 0; r < R; ++r) {
    const auto a = sample_naive(p, RngStream{505, std::uint64_t(r)});
    const auto b = sample_cellgrid(p, RngStream{505, std::uint64_t(R + r)});
    ea.push_back(double(a.edge_count()));
    eb.push_back(double(b.edge_count()));
    for (VertexId v = 0; v < 2000; ++v) {
      da.push_back(double(a.topology().degree(v)));
      db.push_back(double(b.topology().degree(v)));
    }
  }
  const double se = std::sqrt(stats::variance(ea) / R + stats::variance(eb) / R);
  const double z = std::abs(stats::mean(ea) - stats::mean(eb)) / se;
  const double ks = stats::ks_statistic(da, db);
  const double ks_crit = stats::ks_critical_value(da.size(), db.size(), kKsAlpha);

  // Per-pair frequencies on a fixed attribute configuration.
  const GirgParams fp(20, 1, 2.5, 1.0, 1.5, 5);
  std::vector<double> w, x;
  Rng rng(RngStream{505, 1'000'000});
  for (int v = 0; v < 20; ++v) {
    w.push_back(pareto_quantile(rng.uniform_pos(), fp));
    x.push_back(rng.uniform());
  }
  const int FR = 10000;
  std::vector<int> hits(400, 0);
  for (int r = 0; r < FR; ++r) {
    const auto g = inject_attributes(fp, w, x, RngStream{506, std::uint64_t(r)}, SamplerKind::kCellGrid);
    for (auto [u, v] : g.topology().edges()) ++hits[u * 20 + v];
  }
  double worst_pair = 0.0;
  int bad_pairs = 0;
  for (VertexId u = 0; u < 20; ++u) {
    for (VertexId v = u + 1; v < 20; ++v) {
      const double pr = oracle::edge_probability(w[u], w[v], &x[u], &x[v], 1, 20, fp.mean_weight(), 1.5);
      const double freq = hits[u * 20 + v] / double(FR);
      const double s = std::sqrt(pr * (1 - pr) / FR);
      if (s == 0.0) {
        bad_pairs += freq != pr;
        continue;
      }
      worst_pair = std::max(worst_pair, std::abs(freq - pr) / s);
      bad_pairs += std::abs(freq - pr) > kSigmas * s;
    }
  }
  const bool ok = z < kSigmas && ks < ks_crit && bad_pairs == 0;
  return {ok, fmt("edge means %.1f vs %.1f (%.2f pooled SE); KS=%.5f < %.5f; per-pair worst %.2f SE, %d of 190 "
                  "beyond %.0f SE",
                  stats::mean(ea), stats::mean(eb), z, ks, ks_crit, worst_pair, bad_pairs, kSigmas)};
}

Outcome criterion6() {
  const std::vector<double> eps{0.5, 0.2, 0.1, 0.05};
  bool ok = true;
  std::ostringstream os;
  for (double tau : {2.7, 2.1}) {
    SweepConfig cfg;
    cfg.tau = tau;
    cfg.gamma = 1.5;
    cfg.n_grid = {1u << 15};
    cfg.replicas = 20;
    cfg.seed = 606;
    cfg.threads = default_thread_count();
    const auto rows = typical_clique_experiment(cfg, 3, eps);
    os << "tau=" << tau << (rows[0].kind == WindowKind::kGeometric ? " W^G:" : " W^NG:");
    bool monotone = true;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      os << fmt(" %.3f", rows[i].mean_fraction);
      if (i > 0 && rows[i].mean_fraction < rows[i - 1].mean_fraction) monotone = false;
    }
    const bool majority = rows.back().mean_fraction > kMajority;
    const auto expected = tau > 2.5 ? WindowKind::kGeometric : WindowKind::kNonGeometric;
    ok = ok && monotone && majority && rows[0].kind == expected;
    os << " (monotone " << (monotone ? "yes" : "NO") << ", above " << kMajority << " at eps=0.05 "
       << (majority ? "yes" : "NO") << "); ";
  }
  return {ok, os.str()};
}

Outcome criterion7() {
  SweepConfig cfg;
  cfg.tau = 2.7;
  cfg.gamma = 1.5;
  cfg.n_grid = {1u << 10, 1u << 11, 1u << 12, 1u << 13, 1u << 14};
  cfg.replicas = kReplicas;
  cfg.seed = 707;
  cfg.threads = default_thread_count();
  const auto res = self_averaging_probe(cfg, optimal_band(3, 2.7, 1.5, 1, 0.2));
  int decreasing = 0;
  std::ostringstream os;
  os << "Var/Mean^2:";
  for (std::size_t i = 0; i < res.points.size(); ++i) {
    os << fmt(" %.4g", res.points[i].relative_variance);
    if (i > 0) decreasing += res.points[i].relative_variance < res.points[i - 1].relative_variance;
  }
  const int pairs = static_cast<int>(res.points.size()) - 1;
  os << fmt("; decreasing in %d of %d consecutive pairs (need %d)", decreasing, pairs, kMinDecreasingPairs);
  return {decreasing >= kMinDecreasingPairs, os.str()};
}

Outcome criterion8() {
  const std::uint64_t n = 1u << 16;
  std::vector<double> per_n;
  for (const auto& r : tau27_rows()) {
    if (r.n == n && r.k == 3) per_n.push_back(double(r.count) / double(n));
  }
  EstimatorOptions opts;
  opts.threads = default_thread_count();
  const auto J = estimate_JG(3, 2.7, 1.5, 1, 1.0, 0.0, 4'000'000, RngStream{808, 0}, opts);
  const double mu = GirgParams(n, 1, 2.7, 1.0, 1.5, 1).mean_weight();
  const double predicted = predicted_limit_constant(3, 2.7, 1.5, 1, J, mu);
  const double empirical = stats::mean(per_n);
  const double rel = std::abs(empirical - predicted) / predicted;
  return {rel < kConstantRelTol,
          fmt("N(K3)/n at n=2^16 = %.4f over %zu replicas; predicted %.4f (J^G = %.4f +- %.4f); relative error "
              "%.3f < %.2f",
              empirical, per_n.size(), predicted, J.value, J.std_error, rel, kConstantRelTol)};
}

Outcome criterion9() {
  const auto res = gamma_sensitivity(triangle_sweep(2.1, 1.5, 2029), {1.2, 3.0}, 3);
  return {res.max_slope_difference < kGammaSlopeTol,
          fmt("slope(gamma=1.2)=%.4f slope(gamma=3)=%.4f difference %.4f < %.2f", res.fits[0].slope,
              res.fits[1].slope, res.max_slope_difference, kGammaSlopeTol)};
}

Outcome criterion10() {
  std::vector<std::string> failed;
  auto require = [&](bool cond, const char* what) {
    if (!cond) failed.emplace_back(what);
  };

  // Marginal for d=1, gamma=2 (n=100, mu=3).
  const GirgParams mp(100, 1, 2.5, 1.0, 2.0, 1);
  double worst = 0.0;
  for (double q : {1e-6, 1e-3, 0.01, 0.1, 0.3, 0.499}) {
    const double wgt = std::sqrt(q * 300.0);
    worst = std::max(worst, std::abs(marginal_connection_probability(wgt, wgt, mp) - oracle::marginal_d1_gamma2(q)));
  }
  require(worst < kMarginalTol, "marginal");

  // Torus metric axioms.
  std::mt19937_64 gen(1010);
  std::uniform_real_distribution<double> U(0.0, 1.0);
  bool metric = true;
  for (int t = 0; t < 20000; ++t) {
    double a[3], b[3], c[3];
    const int d = 1 + t % 3;
    for (int h = 0; h < d; ++h) a[h] = U(gen), b[h] = U(gen), c[h] = U(gen);
    const Position pa(a, d), pb(b, d), pc(c, d);
    const double ab = torus_distance(pa, pb);
    metric = metric && ab == torus_distance(pb, pa) && ab >= 0.0 && ab <= 0.5 && torus_distance(pa, pa) == 0.0 &&
             torus_distance(pa, pc) <= ab + torus_distance(pb, pc) + 1e-15;
  }
  require(metric, "torus axioms");

  // Pareto tail: empirical P(w > x) against (w0/x)^(tau-1).
  const GirgParams pp(10, 1, 2.5, 1.0, 1.5, 1);
  Rng rng(RngStream{1010, 0});
  const int N = 1'000'000;
  int above[3] = {0, 0, 0};
  const double xs[3] = {2.0, 4.0, 8.0};
  for (int i = 0; i < N; ++i) {
    const double wv = pareto_quantile(rng.uniform_pos(), pp);
    for (int j = 0; j < 3; ++j) above[j] += wv > xs[j];
  }
  bool tail = true;
  for (int j = 0; j < 3; ++j) {
    const double e = std::pow(1.0 / xs[j], 1.5);
    tail = tail && std::abs(above[j] / double(N) - e) < kSigmas * std::sqrt(e * (1 - e) / N);
  }
  require(tail, "pareto tail");

  // Exponent: permutation symmetry, optimum matches the branch maximum, never beaten on the grid.
  bool symmetric = true;
  for (int t = 0; t < 200; ++t) {
    const int k = 3 + t % 3;
    ExponentProfile prof = ExponentProfile::symmetric(k, 2.05 + 0.9 * U(gen), 1.5, 1, 0.0, 0.0);
    for (auto& a : prof.alpha) a = U(gen);
    for (auto& b : prof.beta) b[0] = -U(gen);
    const double f0 = exponent_f(prof);
    std::swap(prof.alpha[1], prof.alpha[k - 1]);
    std::swap(prof.beta[0], prof.beta[k - 2]);
    symmetric = symmetric && std::abs(exponent_f(prof) - f0) < kExactTol;
  }
  require(symmetric, "f symmetry");
  bool optimum = true;
  for (int k = 3; k <= 8; ++k) {
    for (int i = 1; i <= 19; ++i) {
      const double tau = 2.0 + 0.05 * i;
      if (classify_regime(k, tau) == Regime::kBoundary) continue;
      const auto opt = optimize_f(k, tau, 1.5, 1);
      optimum = optimum && std::abs(opt.f_star - std::max(1.0, k * (3.0 - tau) / 2.0)) < kExactTol;
      if (k <= 5 && i % 4 == 0) optimum = optimum && asymmetric_grid_maximum(k, tau, 1.5, 1).f <= opt.f_star + kExactTol;
    }
  }
  require(optimum, "optimizer");

  // File round trip and determinism hashes.
  bool io = true, deterministic = true;
  for (int d = 1; d <= 3; ++d) {
    const GirgParams gp(3000, d, 2.3, 1.0, 1.8, 77);
    const auto g1 = sample_cellgrid(gp, RngStream{77, 0});
    const auto g2 = sample_cellgrid(gp, RngStream{77, 0});
    std::stringstream s1, s2;
    write_graph(s1, g1);
    write_graph(s2, g2);
    deterministic = deterministic && oracle::fnv1a(s1.str()) == oracle::fnv1a(s2.str());
    io = io && read_graph(s1) == g1;
  }
  SweepConfig cfg;
  cfg.tau = 2.4;
  cfg.n_grid = {512, 1024, 2048};
  cfg.replicas = 6;
  cfg.k_list = {3, 4};
  cfg.threads = 1;
  auto table_hash = [](const std::vector<SweepRow>& rows) {
    std::string s;
    for (const auto& r : rows) s += fmt("%llu %d %d %llu %llu;", (unsigned long long)r.n, r.replica, r.k,
                                        (unsigned long long)r.edges, (unsigned long long)r.count);
    return oracle::fnv1a(s);
  };
  const auto h1 = table_hash(run_scaling_sweep(cfg));
  cfg.threads = 4;
  deterministic = deterministic && table_hash(run_scaling_sweep(cfg)) == h1;
  require(io, "round trip");
  require(deterministic, "determinism");

  std::string detail = fmt("marginal max error %.1e; metric, tail, f symmetry, optimizer, round trip, determinism",
                           worst);
  for (const auto& f : failed) detail += "; FAILED " + f;
  return {failed.empty(), detail};
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                       criterion6, criterion7, criterion8, criterion9, criterion10};
  std::set<int> selected;
  for (int i = 1; i < argc; ++i) selected.insert(std::stoi(argv[i]));
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const int id = static_cast<int>(i) + 1;
    if (!selected.empty() && !selected.count(id)) continue;
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %d: %s [%.1fs]\n", o.pass ? "PASS" : "FAIL", id, o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.pass;
  }
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
