#include "girg/graph.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "girg/errors.hpp"

namespace girg {

Graph Graph::from_edges(std::size_t num_vertices, std::span<const Edge> edges) {
  Graph g;
  g.offsets_.assign(num_vertices + 1, 0);
  for (const auto& [u, v] : edges) {
    if (u >= num_vertices || v >= num_vertices) {
      throw ValidationError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                            ") references a vertex outside [0," + std::to_string(num_vertices) + ")");
    }
    if (u == v) throw ValidationError("self-loop at vertex " + std::to_string(u));
    ++g.offsets_[u + 1];
    ++g.offsets_[v + 1];
  }
  for (std::size_t v = 0; v < num_vertices; ++v) g.offsets_[v + 1] += g.offsets_[v];

  g.neighbors_.resize(g.offsets_.back());
  std::vector<std::uint64_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [u, v] : edges) {
    g.neighbors_[cursor[u]++] = v;
    g.neighbors_[cursor[v]++] = u;
  }
  for (std::size_t v = 0; v < num_vertices; ++v) {
    auto first = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v]);
    auto last = g.neighbors_.begin() + static_cast<std::ptrdiff_t>(g.offsets_[v + 1]);
    std::sort(first, last);
    if (std::adjacent_find(first, last) != last) {
      throw ValidationError("duplicate edge at vertex " + std::to_string(v));
    }
  }
  return g;
}

std::size_t Graph::max_degree() const {
  std::size_t best = 0;
  for (std::size_t v = 0; v < num_vertices(); ++v) best = std::max(best, degree(static_cast<VertexId>(v)));
  return best;
}

bool Graph::has_edge(VertexId u, VertexId v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

std::vector<Edge> Graph::edges() const {
  std::vector<Edge> out;
  out.reserve(edge_count());
  for (std::size_t u = 0; u < num_vertices(); ++u) {
    for (VertexId v : neighbors(static_cast<VertexId>(u))) {
      if (u < v) out.emplace_back(static_cast<VertexId>(u), v);
    }
  }
  return out;
}

GirgGraph::GirgGraph(GirgParams params, std::vector<double> weights, std::vector<double> positions,
                     Graph topology, std::string origin)
    : params_(params),
      weights_(std::move(weights)),
      positions_(std::move(positions)),
      topology_(std::move(topology)),
      origin_(std::move(origin)) {
  const std::size_t n = weights_.size();
  const auto d = static_cast<std::size_t>(params_.d());
  if (n != params_.n()) {
    throw ValidationError("weight array has length " + std::to_string(n) + " but n = " +
                          std::to_string(params_.n()));
  }
  if (positions_.size() != n * d) {
    throw ValidationError("position array has length " + std::to_string(positions_.size()) +
                          ", expected n*d = " + std::to_string(n * d));
  }
  if (topology_.num_vertices() != n) {
    throw ValidationError("topology vertex count does not match n");
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (!(weights_[v] >= params_.w0()) || !std::isfinite(weights_[v])) {
      throw ValidationError("weight of vertex " + std::to_string(v) + " is below w0");
    }
  }
  for (double x : positions_) {
    if (!(x >= 0.0 && x < 1.0)) throw ValidationError("coordinates must lie in [0,1)");
  }
}

}  // namespace girg
