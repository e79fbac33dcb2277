#include "girg/cliques.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>

#include "girg/errors.hpp"
#include "girg/ordering.hpp"
#include "girg/parallel.hpp"

namespace girg {
namespace {

constexpr std::uint64_t kCountLimit = std::numeric_limits<std::int64_t>::max();
constexpr std::size_t kRootsPerTask = 256;

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t sum = 0;
  if (__builtin_add_overflow(a, b, &sum) || sum > kCountLimit) {
    throw CapacityError("clique count exceeds 2^63 - 1");
  }
  return sum;
}

/// Sorted intersection of two ascending rank lists.
std::size_t intersect(std::span<const VertexId> a, std::span<const VertexId> b, VertexId* out) {
  std::size_t i = 0, j = 0, k = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      out[k++] = a[i];
      ++i;
      ++j;
    }
  }
  return k;
}

std::size_t intersect_count(std::span<const VertexId> a, std::span<const VertexId> b) {
  std::size_t i = 0, j = 0, k = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] < b[j]) {
      ++i;
    } else if (b[j] < a[i]) {
      ++j;
    } else {
      ++k;
      ++i;
      ++j;
    }
  }
  return k;
}

struct SharedState {
  std::uint64_t cap;
  std::atomic<std::uint64_t> visited{0};
  std::atomic<bool> stop{false};
  std::atomic<bool> truncated{false};
};

/// Per-worker recursive enumerator over the forward DAG in rank space.
class Enumerator {
 public:
  Enumerator(const ForwardGraph& fg, const DegeneracyOrder& order, int k,
             const CliqueVisitor* visitor, SharedState& shared)
      : fg_(fg), order_(order), k_(k), visitor_(visitor), shared_(shared),
        buffers_(static_cast<std::size_t>(std::max(k, 2))), ranks_(static_cast<std::size_t>(k)),
        ids_(static_cast<std::size_t>(k)) {}

  void root(VertexId r) {
    if (shared_.stop.load(std::memory_order_relaxed)) return;
    ranks_[0] = r;
    auto cand = fg_.out(r);
    if (k_ == 2 && visitor_ == nullptr) {
      record_batch(cand.size());
      return;
    }
    extend(1, cand);
  }

 private:
  void record_batch(std::uint64_t amount) {
    if (amount == 0) return;
    const std::uint64_t before = shared_.visited.fetch_add(amount, std::memory_order_relaxed);
    if (before + amount > shared_.cap) {
      shared_.truncated = true;
      shared_.stop = true;
    }
  }

  bool record_one() {
    const std::uint64_t before = shared_.visited.fetch_add(1, std::memory_order_relaxed);
    if (before >= shared_.cap) {
      shared_.visited.fetch_sub(1, std::memory_order_relaxed);
      shared_.truncated = true;
      shared_.stop = true;
      return false;
    }
    return true;
  }

  void visit(int size) {
    for (int i = 0; i < size; ++i) ids_[i] = order_.order[ranks_[i]];
    std::sort(ids_.begin(), ids_.begin() + size);
    if (!record_one()) return;
    if (!(*visitor_)(std::span<const VertexId>(ids_.data(), static_cast<std::size_t>(size)))) {
      shared_.truncated = true;
      shared_.stop = true;
    }
  }

  // `depth` vertices are fixed in ranks_[0..depth); cand holds their common
  // forward neighbors.
  void extend(int depth, std::span<const VertexId> cand) {
    if (depth == k_ - 1) {
      if (visitor_ == nullptr) {
        record_batch(cand.size());
        return;
      }
      for (VertexId c : cand) {
        if (shared_.stop.load(std::memory_order_relaxed)) return;
        ranks_[depth] = c;
        visit(depth + 1);
      }
      return;
    }
    auto& buffer = buffers_[depth];
    for (std::size_t i = 0; i < cand.size(); ++i) {
      if (shared_.stop.load(std::memory_order_relaxed)) return;
      const VertexId c = cand[i];
      const auto rest = cand.subspan(i + 1);
      if (rest.size() < static_cast<std::size_t>(k_ - depth - 1)) return;
      ranks_[depth] = c;
      buffer.resize(rest.size());
      const std::size_t len = intersect(rest, fg_.out(c), buffer.data());
      if (len < static_cast<std::size_t>(k_ - depth - 2)) continue;
      // Deeper levels only write to their own buffers.
      extend(depth + 1, std::span<const VertexId>(buffer.data(), len));
    }
  }

  const ForwardGraph& fg_;
  const DegeneracyOrder& order_;
  int k_;
  const CliqueVisitor* visitor_;
  SharedState& shared_;
  std::vector<std::vector<VertexId>> buffers_;
  std::vector<VertexId> ranks_;
  std::vector<VertexId> ids_;
};

EnumerationResult run_enumeration(const Graph& g, int k, const CliqueVisitor* visitor,
                                  const EnumerationOptions& options) {
  if (k < 2) throw ValidationError("clique size k must be at least 2, got " + std::to_string(k));
  if (options.cap > kCountLimit) throw ValidationError("enumeration cap exceeds 2^63 - 1");
  const DegeneracyOrder order = degeneracy_order(g);
  const ForwardGraph fg(g, order);
  SharedState shared;
  shared.cap = options.cap;
  const std::size_t n = g.num_vertices();

  if (options.threads <= 1) {
    Enumerator worker(fg, order, k, visitor, shared);
    for (std::size_t r = 0; r < n && !shared.stop; ++r) worker.root(static_cast<VertexId>(r));
  } else {
    const std::size_t tasks = (n + kRootsPerTask - 1) / kRootsPerTask;
    std::vector<std::unique_ptr<Enumerator>> workers;
    for (unsigned t = 0; t < options.threads; ++t) {
      workers.push_back(std::make_unique<Enumerator>(fg, order, k, visitor, shared));
    }
    parallel_for(tasks, options.threads, [&](std::size_t task, unsigned worker) {
      const std::size_t end = std::min(n, (task + 1) * kRootsPerTask);
      for (std::size_t r = task * kRootsPerTask; r < end; ++r) {
        workers[worker]->root(static_cast<VertexId>(r));
      }
    });
  }
  EnumerationResult result;
  result.truncated = shared.truncated.load();
  result.count = std::min(shared.visited.load(), options.cap);
  return result;
}

}  // namespace

Interval band_interval(double eta, double eps, std::uint64_t n, double mu) {
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("eps must lie in (0,1)");
  const double center = std::pow(mu * static_cast<double>(n), eta);
  return {eps * center, center / eps};
}

std::uint64_t count_triangles_forward(const Graph& g) {
  const DegeneracyOrder order = degeneracy_order(g);
  const ForwardGraph fg(g, order);
  std::uint64_t total = 0;
  for (std::size_t r = 0; r < fg.num_vertices(); ++r) {
    const auto out = fg.out(static_cast<VertexId>(r));
    std::uint64_t local = 0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      local += intersect_count(out.subspan(i + 1), fg.out(out[i]));
    }
    total = checked_add(total, local);
  }
  return total;
}

EnumerationResult enumerate_k_cliques(const Graph& g, int k, const CliqueVisitor& visitor,
                                      const EnumerationOptions& options) {
  return run_enumeration(g, k, &visitor, options);
}

EnumerationResult count_k_cliques(const Graph& g, int k, const EnumerationOptions& options) {
  return run_enumeration(g, k, nullptr, options);
}

CliqueBandSpec CliqueBandSpec::symmetric(int k, int d, double alpha, double beta, double eps) {
  CliqueBandSpec spec;
  spec.k = k;
  spec.alpha.assign(static_cast<std::size_t>(k), alpha);
  spec.beta.assign(static_cast<std::size_t>(std::max(k - 1, 0)),
                   std::vector<double>(static_cast<std::size_t>(d), beta));
  spec.eps = eps;
  return spec;
}

void CliqueBandSpec::validate(int d) const {
  if (k < 2) throw ValidationError("band: k must be at least 2");
  if (k > 20) throw ValidationError("band: k above 20 is not supported");
  if (alpha.size() != static_cast<std::size_t>(k)) {
    throw ValidationError("band: alpha must have k = " + std::to_string(k) + " entries");
  }
  if (beta.size() != static_cast<std::size_t>(k - 1)) {
    throw ValidationError("band: beta must have k-1 = " + std::to_string(k - 1) + " entries");
  }
  for (double a : alpha) {
    if (!(a >= 0.0)) throw ValidationError("band: alpha entries must be nonnegative");
  }
  for (const auto& b : beta) {
    if (b.size() != static_cast<std::size_t>(d)) {
      throw ValidationError("band: every beta entry must have d = " + std::to_string(d) + " components");
    }
    for (double x : b) {
      if (!(x <= 0.0)) throw ValidationError("band: beta components must be nonpositive");
    }
  }
  if (!(eps > 0.0 && eps < 1.0)) throw ValidationError("band: eps must lie in (0,1)");
}

BandMatcher::BandMatcher(const GirgGraph& g, const CliqueBandSpec& spec)
    : graph_(&g), k_(spec.k), d_(g.dimension()) {
  spec.validate(d_);
  const std::uint64_t n = g.num_vertices();
  const double mu = g.params().mean_weight();
  for (double a : spec.alpha) weight_bands_.push_back(band_interval(a, spec.eps, n, mu));
  for (const auto& b : spec.beta) {
    for (double x : b) distance_bands_.push_back(band_interval(x, spec.eps, n, mu));
  }
}

std::uint64_t BandMatcher::qualifying_assignments(std::span<const VertexId> clique) const {
  const int k = k_;
  const int slots = k - 1;
  std::uint64_t total = 0;
  std::vector<std::uint32_t> allowed(static_cast<std::size_t>(slots));
  std::vector<std::uint64_t> ways(std::size_t{1} << slots);
  for (int ref = 0; ref < k; ++ref) {
    const VertexId r = clique[ref];
    if (!weight_bands_[0].contains(graph_->weight(r))) continue;
    const Position xr = graph_->position(r);
    int idx = 0;
    bool feasible = true;
    for (int m = 0; m < k && feasible; ++m) {
      if (m == ref) continue;
      const VertexId v = clique[m];
      const Position xv = graph_->position(v);
      std::uint32_t mask = 0;
      for (int s = 0; s < slots; ++s) {
        if (!weight_bands_[s + 1].contains(graph_->weight(v))) continue;
        bool ok = true;
        for (int h = 0; h < d_ && ok; ++h) {
          ok = distance_bands_[static_cast<std::size_t>(s * d_ + h)].contains(circle_distance(xv[h], xr[h]));
        }
        if (ok) mask |= 1U << s;
      }
      allowed[idx++] = mask;
      feasible = mask != 0;
    }
    if (!feasible) continue;
    // Count perfect matchings of members to slots: ways[mask] over members
    // processed so far, where mask is the set of used slots.
    std::fill(ways.begin(), ways.end(), 0);
    ways[0] = 1;
    for (int m = 0; m < slots; ++m) {
      for (std::uint32_t mask = (std::uint32_t{1} << slots) - 1;; --mask) {
        if (std::popcount(mask) == m && ways[mask] != 0) {
          std::uint32_t free = allowed[m] & ~mask;
          while (free != 0) {
            const std::uint32_t bit = free & (~free + 1);
            ways[mask | bit] += ways[mask];
            free ^= bit;
          }
          ways[mask] = 0;
        }
        if (mask == 0) break;
      }
    }
    total += ways[(std::size_t{1} << slots) - 1];
  }
  return total;
}

WindowMatcher::WindowMatcher(const GirgGraph& g, const TypicalCliqueWindow& window)
    : graph_(&g), kind_(window.kind) {
  const std::uint64_t n = g.num_vertices();
  const double mu = g.params().mean_weight();
  band_ = window.kind == WindowKind::kNonGeometric
              ? band_interval(0.5, window.eps, n, mu)
              : band_interval(-1.0 / g.dimension(), window.eps, n, mu);
}

bool WindowMatcher::contains(std::span<const VertexId> clique) const {
  if (kind_ == WindowKind::kNonGeometric) {
    return std::all_of(clique.begin(), clique.end(),
                       [&](VertexId v) { return band_.contains(graph_->weight(v)); });
  }
  const int d = graph_->dimension();
  for (VertexId r : clique) {
    const Position xr = graph_->position(r);
    bool ok = true;
    for (VertexId v : clique) {
      if (v == r) continue;
      const Position xv = graph_->position(v);
      for (int h = 0; h < d && ok; ++h) ok = band_.contains(circle_distance(xv[h], xr[h]));
      if (!ok) break;
    }
    if (ok) return true;
  }
  return false;
}

bool window_membership(const GirgGraph& g, std::span<const VertexId> clique,
                       const TypicalCliqueWindow& window) {
  if (clique.size() != static_cast<std::size_t>(window.k)) {
    throw ValidationError("window_membership: clique size does not match window k");
  }
  return WindowMatcher(g, window).contains(clique);
}

namespace {

/// Enumerates cliques once, feeding per-clique tallies into per-worker
/// accumulators that are merged after the run.
template <typename PerClique>
CliqueCountResult tally(const GirgGraph& g, int k, const EnumerationOptions& options,
                        bool collect_summary, bool has_band, PerClique&& per_clique) {
  struct Accumulator {
    std::uint64_t in_band = 0;
    AttributeSummary summary;
  };
  const unsigned workers = std::max(1U, options.threads);
  std::vector<Accumulator> acc(workers);
  std::mutex mutex;  // guards worker-slot assignment below
  std::vector<std::thread::id> owners(workers);
  std::size_t assigned = 0;

  auto slot_for_thread = [&]() -> Accumulator& {
    if (workers == 1) return acc[0];
    const auto id = std::this_thread::get_id();
    std::lock_guard lock(mutex);
    for (std::size_t i = 0; i < assigned; ++i) {
      if (owners[i] == id) return acc[i];
    }
    owners[assigned] = id;
    return acc[assigned++];
  };

  CliqueVisitor visitor = [&](std::span<const VertexId> clique) {
    Accumulator& a = slot_for_thread();
    if (has_band) a.in_band = checked_add(a.in_band, per_clique(clique));
    if (collect_summary) {
      for (std::size_t i = 0; i < clique.size(); ++i) {
        a.summary.member_weights.add(g.weight(clique[i]));
        for (std::size_t j = i + 1; j < clique.size(); ++j) {
          a.summary.pairwise_distances.add(torus_distance(g.position(clique[i]), g.position(clique[j])));
        }
      }
    }
    return true;
  };

  CliqueCountResult result;
  result.k = k;
  if (!has_band && !collect_summary) {
    const auto e = count_k_cliques(g.topology(), k, options);
    result.total = e.count;
    result.truncated = e.truncated;
    return result;
  }
  const auto e = enumerate_k_cliques(g.topology(), k, visitor, options);
  result.total = e.count;
  result.truncated = e.truncated;
  if (has_band) {
    std::uint64_t sum = 0;
    for (const auto& a : acc) sum = checked_add(sum, a.in_band);
    result.in_band = sum;
  }
  if (collect_summary) {
    AttributeSummary merged;
    for (const auto& a : acc) merged.merge(a.summary);
    result.summary = std::move(merged);
  }
  return result;
}

}  // namespace

CliqueCountResult count_cliques_in_band(const GirgGraph& g, const CliqueBandSpec& spec,
                                        const EnumerationOptions& options, bool collect_summary) {
  const BandMatcher matcher(g, spec);
  return tally(g, spec.k, options, collect_summary, true,
               [&](std::span<const VertexId> c) { return matcher.qualifying_assignments(c); });
}

CliqueCountResult count_cliques_in_window(const GirgGraph& g, const TypicalCliqueWindow& window,
                                          const EnumerationOptions& options, bool collect_summary) {
  const WindowMatcher matcher(g, window);
  return tally(g, window.k, options, collect_summary, true,
               [&](std::span<const VertexId> c) -> std::uint64_t { return matcher.contains(c) ? 1 : 0; });
}

CliqueCountResult count_cliques(const GirgGraph& g, int k, const EnumerationOptions& options,
                                bool collect_summary) {
  return tally(g, k, options, collect_summary, false,
               [](std::span<const VertexId>) -> std::uint64_t { return 0; });
}

double typical_fraction(const GirgGraph& g, int k, const TypicalCliqueWindow& window,
                        const EnumerationOptions& options) {
  if (window.k != k) throw ValidationError("typical_fraction: window k does not match k");
  const auto result = count_cliques_in_window(g, window, options);
  if (result.total == 0) {
    throw ValidationError("typical_fraction: graph has no " + std::to_string(k) +
                          "-clique (empty denominator)");
  }
  return static_cast<double>(*result.in_band) / static_cast<double>(result.total);
}

}  // namespace girg
