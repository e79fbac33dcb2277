#pragma once

#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "girg/graph.hpp"
#include "girg/model.hpp"
#include "girg/rng.hpp"

namespace girg {

enum class SamplerKind { kNaive, kCellGrid };

std::string_view to_string(SamplerKind kind);
/// Accepts "naive" and "cellgrid"; throws ValidationError otherwise.
SamplerKind parse_sampler_kind(std::string_view name);

/// The quadratic sampler refuses inputs above this size.
inline constexpr std::uint64_t kNaiveSamplerMaxVertices = 100000;

struct VertexAttributes {
  std::vector<double> weights;    // n entries, each >= w0
  std::vector<double> positions;  // n * d entries, each in [0,1)
};

/// Draws i.i.d. Pareto weights (inverse CDF) and uniform torus positions.
/// Vertex v consumes one uniform for its weight followed by d uniforms for
/// its coordinates.
VertexAttributes sample_attributes(const GirgParams& params, Rng& rng);

/// Independent Bernoulli(p_uv) for every unordered pair; O(n^2).
std::vector<Edge> sample_edges_naive(const GirgParams& params, std::span<const double> weights,
                                     std::span<const double> positions, Rng& rng);

/// Same law as sample_edges_naive in expected O(n + m) time (up to
/// logarithmic factors) using weight layers and a hierarchy of torus cells.
std::vector<Edge> sample_edges_cellgrid(const GirgParams& params, std::span<const double> weights,
                                        std::span<const double> positions, Rng& rng);

/// Throws CapacityError for n > kNaiveSamplerMaxVertices.
GirgGraph sample_naive(const GirgParams& params, RngStream stream);
GirgGraph sample_cellgrid(const GirgParams& params, RngStream stream);
GirgGraph sample(const GirgParams& params, RngStream stream, SamplerKind kind);

/// Samples only the edges for fixed attributes. Validates array lengths,
/// weights >= w0 and coordinates in [0,1).
GirgGraph inject_attributes(const GirgParams& params, std::vector<double> weights,
                            std::vector<double> positions, RngStream stream,
                            SamplerKind kind = SamplerKind::kNaive);

}  // namespace girg
