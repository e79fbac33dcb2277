#pragma once

#include <cstdint>
#include <vector>

#include "girg/graph.hpp"

namespace girg {

/// Minimum-degree peeling order. Every vertex has at most `degeneracy`
/// neighbors later in the order.
struct DegeneracyOrder {
  std::vector<VertexId> order;     // order[r] = vertex peeled r-th
  std::vector<VertexId> rank;      // rank[v] = position of v in order
  std::uint32_t degeneracy = 0;
};

/// Peels a vertex of minimum remaining degree, lowest id first among ties.
DegeneracyOrder degeneracy_order(const Graph& g);

/// Neighbors of v that appear after v in the order, sorted by order position.
std::vector<VertexId> forward_neighbors(const Graph& g, const DegeneracyOrder& order, VertexId v);

/// All forward adjacency lists at once, relabeled into rank space: list r
/// holds the ranks of the forward neighbors of order[r], ascending.
class ForwardGraph {
 public:
  ForwardGraph(const Graph& g, const DegeneracyOrder& order);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::span<const VertexId> out(VertexId rank) const {
    return {targets_.data() + offsets_[rank], targets_.data() + offsets_[rank + 1]};
  }
  std::uint64_t edge_count() const { return targets_.size(); }

 private:
  std::vector<std::uint64_t> offsets_;
  std::vector<VertexId> targets_;
};

}  // namespace girg
