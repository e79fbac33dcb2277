// Cell-grid GIRG sampler.
//
// Vertices are bucketed into weight layers [w0*2^i, w0*2^(i+1)). For every
// pair of layers (i, j) a comparison level l(i,j) is chosen so that a cell of
// side 2^-l(i,j) is at least as wide as the largest clamp radius possible
// between the two layers. The product space of positions is then partitioned
// into
//   - touching cell pairs at level l(i,j): every vertex pair is tested
//     individually (these pairs have large connection probabilities), and
//   - cell pairs at some level l <= l(i,j) that do not touch while their
//     parents do: the connection probability is bounded by its value at the
//     maximal layer weights and the minimal cell distance, pairs are skipped
//     geometrically at that bound and accepted with probability p / bound.
// Each unordered vertex pair is covered by exactly one block, so every pair
// receives an independent Bernoulli(p_uv) trial.
//
// Cells are addressed by Morton codes so that the vertices of a cell at any
// level form a contiguous range of the layer's code-sorted vertex list.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <numeric>

#include "girg/errors.hpp"
#include "girg/sampler.hpp"

namespace girg {
namespace {

constexpr int kMaxCodeBits = 62;

using CellCode = std::uint64_t;

class MortonGrid {
 public:
  explicit MortonGrid(int d) : d_(d) {}

  CellCode encode(std::span<const std::uint32_t> coords, int level) const {
    CellCode code = 0;
    for (int b = level - 1; b >= 0; --b) {
      for (int h = 0; h < d_; ++h) code = (code << 1) | ((coords[h] >> b) & 1U);
    }
    return code;
  }

  void decode(CellCode code, int level, std::span<std::uint32_t> coords) const {
    std::fill(coords.begin(), coords.end(), 0U);
    for (int b = 0; b < level; ++b) {
      for (int h = d_ - 1; h >= 0; --h) {
        coords[h] |= static_cast<std::uint32_t>(code & 1U) << b;
        code >>= 1;
      }
    }
  }

  int d() const { return d_; }

 private:
  int d_;
};

std::uint32_t circular_gap(std::uint32_t a, std::uint32_t b, std::uint32_t side) {
  const std::uint32_t diff = a > b ? a - b : b - a;
  return std::min(diff, side - diff);
}

bool cells_touch(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                 std::uint32_t side) {
  for (std::size_t h = 0; h < a.size(); ++h) {
    if (circular_gap(a[h], b[h], side) > 1) return false;
  }
  return true;
}

/// Lower bound on the torus distance between points of two cells.
double cell_distance(std::span<const std::uint32_t> a, std::span<const std::uint32_t> b,
                     int level) {
  const std::uint32_t side = 1U << level;
  std::uint32_t gap = 0;
  for (std::size_t h = 0; h < a.size(); ++h) gap = std::max(gap, circular_gap(a[h], b[h], side));
  return gap <= 1 ? 0.0 : std::ldexp(static_cast<double>(gap - 1), -level);
}

/// Distinct values of {c + offset : offset in offsets} modulo side.
void wrapped_candidates(std::int64_t base, std::span<const std::int64_t> offsets, std::uint32_t side,
                        std::vector<std::uint32_t>& out) {
  out.clear();
  for (std::int64_t off : offsets) {
    const auto s = static_cast<std::int64_t>(side);
    const auto value = static_cast<std::uint32_t>(((base + off) % s + s) % s);
    if (std::find(out.begin(), out.end(), value) == out.end()) out.push_back(value);
  }
  std::sort(out.begin(), out.end());
}

struct Layer {
  std::vector<VertexId> vertices;     // sorted by (cell code at deepest level, id)
  std::vector<std::uint32_t> begin;   // cell boundaries at level `depth`
  int depth = 0;
  double max_weight = 0.0;            // exclusive upper bound of the layer

  std::size_t cell_begin(CellCode cell, int level, int d) const {
    return begin[cell << (d * (depth - level))];
  }
  std::size_t cell_end(CellCode cell, int level, int d) const {
    return begin[(cell + 1) << (d * (depth - level))];
  }
};

class CellGridSampler {
 public:
  CellGridSampler(const GirgParams& params, std::span<const double> weights,
                  std::span<const double> positions, Rng& rng)
      : kernel_(params),
        grid_(params.d()),
        d_(params.d()),
        w0_(params.w0()),
        weights_(weights),
        positions_(positions),
        rng_(rng) {}

  std::vector<Edge> run() {
    const std::size_t n = weights_.size();
    if (n < 2) return {};
    build_layers();
    const int num_layers = static_cast<int>(layers_.size());
    for (int i = 0; i < num_layers; ++i) {
      if (layers_[i].vertices.empty()) continue;
      for (int j = i; j < num_layers; ++j) {
        if (layers_[j].vertices.empty()) continue;
        const int level = comparison_level(i, j);
        for (int l = 1; l <= level; ++l) sample_distant_blocks(i, j, l);
        sample_touching_blocks(i, j, level);
      }
    }
    return std::move(edges_);
  }

 private:
  int comparison_level(int i, int j) const {
    const double max_ratio = std::ldexp(w0_ * w0_, i + j + 2) * kernel_.inv_nmu();
    if (max_ratio >= 1.0) return 0;
    const int level = static_cast<int>(std::floor(-std::log2(max_ratio) / d_));
    return std::clamp(level, 0, level_cap_);
  }

  void build_layers() {
    const std::size_t n = weights_.size();
    // Bound the finest grid by ~4n cells and by the Morton code width.
    level_cap_ = std::min(kMaxCodeBits / d_,
                          static_cast<int>(std::floor(std::log2(4.0 * static_cast<double>(n)) / d_)));
    level_cap_ = std::clamp(level_cap_, 0, 31);

    std::vector<int> layer_of(n);
    int num_layers = 0;
    for (std::size_t v = 0; v < n; ++v) {
      const int layer = std::max(0, std::ilogb(weights_[v] / w0_));
      layer_of[v] = layer;
      num_layers = std::max(num_layers, layer + 1);
    }
    layers_.assign(static_cast<std::size_t>(num_layers), Layer{});
    depth_ = comparison_level(0, 0);

    std::vector<CellCode> code(n);
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(d_));
    const double side = std::ldexp(1.0, depth_);
    const auto max_coord = static_cast<std::uint32_t>((1ULL << depth_) - 1);
    for (std::size_t v = 0; v < n; ++v) {
      for (int h = 0; h < d_; ++h) {
        const auto c = static_cast<std::uint32_t>(positions_[v * d_ + h] * side);
        coords[h] = std::min(c, max_coord);
      }
      code[v] = grid_.encode(coords, depth_);
      layers_[layer_of[v]].vertices.push_back(static_cast<VertexId>(v));
    }

    for (int i = 0; i < num_layers; ++i) {
      Layer& layer = layers_[i];
      layer.depth = comparison_level(i, 0);
      layer.max_weight = std::ldexp(w0_, i + 1);
      std::sort(layer.vertices.begin(), layer.vertices.end(), [&](VertexId a, VertexId b) {
        return code[a] != code[b] ? code[a] < code[b] : a < b;
      });
      const std::size_t cells = std::size_t{1} << (d_ * layer.depth);
      const int shift = d_ * (depth_ - layer.depth);
      layer.begin.assign(cells + 1, 0);
      for (VertexId v : layer.vertices) ++layer.begin[(code[v] >> shift) + 1];
      std::partial_sum(layer.begin.begin(), layer.begin.end(), layer.begin.begin());
    }
  }

  void add_edge(VertexId u, VertexId v) { edges_.emplace_back(std::min(u, v), std::max(u, v)); }

  double distance(VertexId u, VertexId v) const {
    double dist = 0.0;
    for (int h = 0; h < d_; ++h) {
      dist = std::max(dist, circular(positions_[u * d_ + h], positions_[v * d_ + h]));
    }
    return dist;
  }

  static double circular(double a, double b) {
    const double diff = std::abs(a - b);
    return std::min(diff, 1.0 - diff);
  }

  void test_pair(VertexId u, VertexId v) {
    const double p = kernel_(weights_[u], weights_[v], distance(u, v));
    if (p >= 1.0 || rng_.uniform() < p) add_edge(u, v);
  }

  /// Calls fn(cell) for every cell at `level` holding at least one vertex of
  /// the layer, in ascending code order.
  template <typename Fn>
  void for_each_occupied_cell(const Layer& layer, int level, Fn&& fn) const {
    const std::size_t cells = std::size_t{1} << (d_ * level);
    if (cells <= layer.vertices.size()) {
      for (CellCode c = 0; c < cells; ++c) {
        if (layer.cell_end(c, level, d_) > layer.cell_begin(c, level, d_)) fn(c);
      }
      return;
    }
    // Sparse layer: walk the code-sorted vertex list instead of the grid.
    const int shift = d_ * (layer.depth - level);
    std::size_t idx = 0;
    const std::size_t cells_at_depth = layer.begin.size() - 1;
    while (idx < layer.vertices.size()) {
      const auto deep_cell = static_cast<CellCode>(
          std::upper_bound(layer.begin.begin(), layer.begin.begin() + static_cast<std::ptrdiff_t>(cells_at_depth) + 1,
                           static_cast<std::uint32_t>(idx)) -
          layer.begin.begin() - 1);
      const CellCode cell = deep_cell >> shift;
      fn(cell);
      idx = layer.cell_end(cell, level, d_);
    }
  }

  void sample_touching_blocks(int i, int j, int level) {
    const Layer& li = layers_[i];
    const Layer& lj = layers_[j];
    const std::uint32_t side = 1U << level;
    std::vector<std::uint32_t> a_coords(d_), b_coords(d_);
    std::vector<std::vector<std::uint32_t>> candidates(d_);
    static constexpr std::array<std::int64_t, 3> kNear{-1, 0, 1};

    for_each_occupied_cell(li, level, [&](CellCode a) {
      grid_.decode(a, level, a_coords);
      for (int h = 0; h < d_; ++h) wrapped_candidates(a_coords[h], kNear, side, candidates[h]);
      for_each_product(candidates, b_coords, [&] {
        const CellCode b = grid_.encode(b_coords, level);
        if (i == j && b < a) return;
        const std::size_t a_begin = li.cell_begin(a, level, d_), a_end = li.cell_end(a, level, d_);
        const std::size_t b_begin = lj.cell_begin(b, level, d_), b_end = lj.cell_end(b, level, d_);
        for (std::size_t x = a_begin; x < a_end; ++x) {
          const std::size_t y_start = (i == j && a == b) ? x + 1 : b_begin;
          for (std::size_t y = y_start; y < b_end; ++y) test_pair(li.vertices[x], lj.vertices[y]);
        }
      });
    });
  }

  void sample_distant_blocks(int i, int j, int level) {
    const Layer& li = layers_[i];
    const Layer& lj = layers_[j];
    const std::uint32_t side = 1U << level;
    const std::uint32_t parent_side = side >> 1;
    std::vector<std::uint32_t> a_coords(d_), b_coords(d_);
    std::vector<std::vector<std::uint32_t>> candidates(d_);
    std::vector<std::uint32_t> parent_nbrs;
    static constexpr std::array<std::int64_t, 3> kNear{-1, 0, 1};
    static constexpr std::array<std::int64_t, 2> kChildren{0, 1};
    const double ratio_bound = li.max_weight * lj.max_weight * kernel_.inv_nmu();

    for_each_occupied_cell(li, level, [&](CellCode a) {
      grid_.decode(a, level, a_coords);
      for (int h = 0; h < d_; ++h) {
        wrapped_candidates(a_coords[h] >> 1, kNear, parent_side, parent_nbrs);
        candidates[h].clear();
        std::vector<std::uint32_t> kids;
        for (std::uint32_t q : parent_nbrs) {
          wrapped_candidates(2 * static_cast<std::int64_t>(q), kChildren, side, kids);
          candidates[h].insert(candidates[h].end(), kids.begin(), kids.end());
        }
        std::sort(candidates[h].begin(), candidates[h].end());
      }
      for_each_product(candidates, b_coords, [&] {
        if (cells_touch(a_coords, b_coords, side)) return;
        const CellCode b = grid_.encode(b_coords, level);
        if (i == j && b < a) return;
        const std::size_t b_begin = lj.cell_begin(b, level, d_), b_end = lj.cell_end(b, level, d_);
        if (b_begin == b_end) return;
        const std::size_t a_begin = li.cell_begin(a, level, d_), a_end = li.cell_end(a, level, d_);
        const double bound =
            kernel_.probability_from_ratio(ratio_bound, cell_distance(a_coords, b_coords, level));
        sample_block(li, a_begin, a_end - a_begin, lj, b_begin, b_end - b_begin, bound);
      });
    });
  }

  void sample_block(const Layer& li, std::size_t a_begin, std::size_t a_size, const Layer& lj,
                    std::size_t b_begin, std::size_t b_size, double bound) {
    const std::uint64_t total = static_cast<std::uint64_t>(a_size) * b_size;
    if (bound >= 1.0) {
      for (std::uint64_t r = 0; r < total; ++r) {
        test_pair(li.vertices[a_begin + r % a_size], lj.vertices[b_begin + r / a_size]);
      }
      return;
    }
    std::uint64_t r = rng_.geometric(bound);
    while (r < total) {
      const VertexId u = li.vertices[a_begin + r % a_size];
      const VertexId v = lj.vertices[b_begin + r / a_size];
      const double p = kernel_(weights_[u], weights_[v], distance(u, v));
      if (rng_.uniform() * bound < p) add_edge(u, v);
      const std::uint64_t skip = rng_.geometric(bound);
      if (skip >= total) break;
      r += skip + 1;
    }
  }

  /// Odometer over the Cartesian product of per-dimension candidate lists.
  template <typename Fn>
  static void for_each_product(const std::vector<std::vector<std::uint32_t>>& candidates,
                               std::vector<std::uint32_t>& out, Fn&& fn) {
    const std::size_t d = candidates.size();
    std::vector<std::size_t> idx(d, 0);
    for (std::size_t h = 0; h < d; ++h) out[h] = candidates[h][0];
    while (true) {
      fn();
      std::size_t h = d;
      while (h > 0) {
        --h;
        if (++idx[h] < candidates[h].size()) {
          out[h] = candidates[h][idx[h]];
          break;
        }
        idx[h] = 0;
        out[h] = candidates[h][0];
        if (h == 0) return;
      }
      if (d == 0) return;
    }
  }

  EdgeKernel kernel_;
  MortonGrid grid_;
  int d_;
  double w0_;
  std::span<const double> weights_;
  std::span<const double> positions_;
  Rng& rng_;
  std::vector<Layer> layers_;
  int level_cap_ = 0;
  int depth_ = 0;
  std::vector<Edge> edges_;
};

}  // namespace

std::vector<Edge> sample_edges_cellgrid(const GirgParams& params, std::span<const double> weights,
                                        std::span<const double> positions, Rng& rng) {
  if (weights.size() != params.n() ||
      positions.size() != weights.size() * static_cast<std::size_t>(params.d())) {
    throw ValidationError("sample_edges_cellgrid: attribute arrays do not match params");
  }
  return CellGridSampler(params, weights, positions, rng).run();
}

}  // namespace girg
