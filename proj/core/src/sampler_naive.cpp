#include <string>

#include "girg/errors.hpp"
#include "girg/sampler.hpp"

namespace girg {

std::string_view to_string(SamplerKind kind) {
  switch (kind) {
    case SamplerKind::kNaive:
      return "naive";
    case SamplerKind::kCellGrid:
      return "cellgrid";
  }
  return "unknown";
}

SamplerKind parse_sampler_kind(std::string_view name) {
  if (name == "naive") return SamplerKind::kNaive;
  if (name == "cellgrid") return SamplerKind::kCellGrid;
  throw ValidationError("sampler must be 'naive' or 'cellgrid', got '" + std::string(name) + "'");
}

VertexAttributes sample_attributes(const GirgParams& params, Rng& rng) {
  const std::size_t n = params.n();
  const auto d = static_cast<std::size_t>(params.d());
  VertexAttributes attrs;
  attrs.weights.resize(n);
  attrs.positions.resize(n * d);
  for (std::size_t v = 0; v < n; ++v) {
    attrs.weights[v] = pareto_quantile(rng.uniform_pos(), params);
    for (std::size_t h = 0; h < d; ++h) attrs.positions[v * d + h] = rng.uniform();
  }
  return attrs;
}

std::vector<Edge> sample_edges_naive(const GirgParams& params, std::span<const double> weights,
                                     std::span<const double> positions, Rng& rng) {
  const std::size_t n = weights.size();
  const auto d = static_cast<std::size_t>(params.d());
  const EdgeKernel kernel(params);
  std::vector<Edge> edges;
  for (std::size_t u = 0; u < n; ++u) {
    const Position xu = positions.subspan(u * d, d);
    for (std::size_t v = u + 1; v < n; ++v) {
      const double p = kernel(weights[u], weights[v], torus_distance(xu, positions.subspan(v * d, d)));
      if (p >= 1.0 || rng.uniform() < p) {
        edges.emplace_back(static_cast<VertexId>(u), static_cast<VertexId>(v));
      }
    }
  }
  return edges;
}

namespace {

void check_attributes(const GirgParams& params, std::span<const double> weights,
                      std::span<const double> positions) {
  const std::size_t n = params.n();
  if (weights.size() != n) {
    throw ValidationError("expected " + std::to_string(n) + " weights, got " +
                          std::to_string(weights.size()));
  }
  if (positions.size() != n * static_cast<std::size_t>(params.d())) {
    throw ValidationError("expected n*d = " + std::to_string(n * params.d()) +
                          " coordinates, got " + std::to_string(positions.size()));
  }
  for (double w : weights) {
    if (!(w >= params.w0())) throw ValidationError("weights must be >= w0");
  }
  for (double x : positions) {
    if (!(x >= 0.0 && x < 1.0)) throw ValidationError("coordinates must lie in [0,1)");
  }
}

void check_naive_capacity(const GirgParams& params) {
  if (params.n() > kNaiveSamplerMaxVertices) {
    throw CapacityError("naive sampler refuses n = " + std::to_string(params.n()) + " > " +
                        std::to_string(kNaiveSamplerMaxVertices) +
                        "; use the cellgrid sampler");
  }
}

GirgGraph build(const GirgParams& params, std::vector<double> weights,
                std::vector<double> positions, Rng& rng, SamplerKind kind, std::string origin) {
  std::vector<Edge> edges = kind == SamplerKind::kNaive
                                ? sample_edges_naive(params, weights, positions, rng)
                                : sample_edges_cellgrid(params, weights, positions, rng);
  Graph topology = Graph::from_edges(weights.size(), edges);
  return GirgGraph(params, std::move(weights), std::move(positions), std::move(topology),
                   std::move(origin));
}

}  // namespace

GirgGraph sample(const GirgParams& params, RngStream stream, SamplerKind kind) {
  if (kind == SamplerKind::kNaive) check_naive_capacity(params);
  Rng rng(stream);
  VertexAttributes attrs = sample_attributes(params, rng);
  return build(params, std::move(attrs.weights), std::move(attrs.positions), rng, kind,
               std::string(to_string(kind)));
}

GirgGraph sample_naive(const GirgParams& params, RngStream stream) {
  return sample(params, stream, SamplerKind::kNaive);
}

GirgGraph sample_cellgrid(const GirgParams& params, RngStream stream) {
  return sample(params, stream, SamplerKind::kCellGrid);
}

GirgGraph inject_attributes(const GirgParams& params, std::vector<double> weights,
                            std::vector<double> positions, RngStream stream, SamplerKind kind) {
  check_attributes(params, weights, positions);
  if (kind == SamplerKind::kNaive) check_naive_capacity(params);
  Rng rng(stream);
  return build(params, std::move(weights), std::move(positions), rng, kind,
               "injected-" + std::string(to_string(kind)));
}

}  // namespace girg
