#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "girg/model.hpp"

namespace girg {

using Edge = std::pair<VertexId, VertexId>;

/// Immutable simple undirected graph in CSR form. Neighbor lists are sorted
/// by vertex id; there are no self-loops or duplicate edges.
class Graph {
 public:
  Graph() = default;

  /// Builds the CSR structure. Throws ValidationError on self-loops,
  /// duplicate edges or out-of-range endpoints.
  static Graph from_edges(std::size_t num_vertices, std::span<const Edge> edges);

  std::size_t num_vertices() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  std::uint64_t edge_count() const { return neighbors_.size() / 2; }

  std::span<const VertexId> neighbors(VertexId v) const {
    return {neighbors_.data() + offsets_[v], neighbors_.data() + offsets_[v + 1]};
  }
  std::size_t degree(VertexId v) const { return offsets_[v + 1] - offsets_[v]; }
  std::size_t max_degree() const;
  bool has_edge(VertexId u, VertexId v) const;

  /// All edges as (u, v) with u < v, in lexicographic order.
  std::vector<Edge> edges() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> neighbors_;
};

/// A sampled (or loaded) GIRG: model parameters, vertex attributes and the
/// realized topology. Immutable after construction.
class GirgGraph {
 public:
  /// `positions` is row-major, n * d coordinates. Validates weights >= w0,
  /// coordinates in [0,1) and the topology invariants.
  GirgGraph(GirgParams params, std::vector<double> weights, std::vector<double> positions,
            Graph topology, std::string origin);

  const GirgParams& params() const { return params_; }
  const Graph& topology() const { return topology_; }
  const std::string& origin() const { return origin_; }

  std::size_t num_vertices() const { return weights_.size(); }
  std::uint64_t edge_count() const { return topology_.edge_count(); }
  int dimension() const { return params_.d(); }

  double weight(VertexId v) const { return weights_[v]; }
  Position position(VertexId v) const {
    const auto d = static_cast<std::size_t>(params_.d());
    return {positions_.data() + v * d, d};
  }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> positions() const { return positions_; }

  friend bool operator==(const GirgGraph&, const GirgGraph&) = default;

 private:
  GirgParams params_;
  std::vector<double> weights_;
  std::vector<double> positions_;
  Graph topology_;
  std::string origin_;
};

}  // namespace girg
