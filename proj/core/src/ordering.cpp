#include "girg/ordering.hpp"

#include <algorithm>
#include <functional>
#include <queue>

namespace girg {

DegeneracyOrder degeneracy_order(const Graph& g) {
  const std::size_t n = g.num_vertices();
  DegeneracyOrder result;
  result.order.reserve(n);
  result.rank.assign(n, 0);

  std::vector<std::uint32_t> remaining(n);
  std::vector<bool> removed(n, false);
  using Entry = std::pair<std::uint32_t, VertexId>;  // (degree, id), min-heap
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  for (std::size_t v = 0; v < n; ++v) {
    remaining[v] = static_cast<std::uint32_t>(g.degree(static_cast<VertexId>(v)));
    heap.emplace(remaining[v], static_cast<VertexId>(v));
  }
  while (!heap.empty()) {
    const auto [deg, v] = heap.top();
    heap.pop();
    if (removed[v] || deg != remaining[v]) continue;  // stale entry
    removed[v] = true;
    result.rank[v] = static_cast<VertexId>(result.order.size());
    result.order.push_back(v);
    result.degeneracy = std::max(result.degeneracy, deg);
    for (VertexId u : g.neighbors(v)) {
      if (!removed[u]) heap.emplace(--remaining[u], u);
    }
  }
  return result;
}

std::vector<VertexId> forward_neighbors(const Graph& g, const DegeneracyOrder& order, VertexId v) {
  std::vector<VertexId> out;
  for (VertexId u : g.neighbors(v)) {
    if (order.rank[u] > order.rank[v]) out.push_back(u);
  }
  std::sort(out.begin(), out.end(),
            [&](VertexId a, VertexId b) { return order.rank[a] < order.rank[b]; });
  return out;
}

ForwardGraph::ForwardGraph(const Graph& g, const DegeneracyOrder& order) {
  const std::size_t n = g.num_vertices();
  offsets_.assign(n + 1, 0);
  for (std::size_t r = 0; r < n; ++r) {
    const VertexId v = order.order[r];
    std::uint64_t count = 0;
    for (VertexId u : g.neighbors(v)) count += order.rank[u] > r;
    offsets_[r + 1] = offsets_[r] + count;
  }
  targets_.resize(offsets_.back());
  for (std::size_t r = 0; r < n; ++r) {
    const VertexId v = order.order[r];
    auto* out = targets_.data() + offsets_[r];
    std::size_t k = 0;
    for (VertexId u : g.neighbors(v)) {
      if (order.rank[u] > r) out[k++] = order.rank[u];
    }
    std::sort(out, out + k);
  }
}

}  // namespace girg
