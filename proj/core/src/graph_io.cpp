#include "girg/graph_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <vector>

#include "girg/errors.hpp"

namespace girg {
namespace {

constexpr std::string_view kHeader = "#girg v1";

template <typename T>
T parse_number(std::string_view token, std::size_t line, std::string_view what) {
  T value{};
  const auto* end = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(token.data(), end, value);
  if (ec != std::errc() || ptr != end) {
    const std::string where = line == 0 ? std::string("#param") : "line " + std::to_string(line) + ":";
    throw IoError(where + " malformed " + std::string(what) + " '" + std::string(token) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t' || s[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < s.size() && s[i] != ' ' && s[i] != '\t' && s[i] != '\r') ++i;
    if (i > start) out.push_back(s.substr(start, i - start));
  }
  return out;
}

}  // namespace

std::string format_double(double x) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) throw IoError("cannot format floating-point value");
  return std::string(buf, ptr);
}

void write_graph(std::ostream& out, const GirgGraph& g) {
  const auto& p = g.params();
  out << kHeader << '\n';
  out << "#param n=" << p.n() << '\n';
  out << "#param d=" << p.d() << '\n';
  out << "#param tau=" << format_double(p.tau()) << '\n';
  out << "#param gamma=" << format_double(p.gamma()) << '\n';
  out << "#param w0=" << format_double(p.w0()) << '\n';
  out << "#param seed=" << p.seed() << '\n';
  out << "#param sampler=" << g.origin() << '\n';
  for (std::size_t v = 0; v < g.num_vertices(); ++v) {
    out << "V " << v << ' ' << format_double(g.weight(static_cast<VertexId>(v)));
    for (double x : g.position(static_cast<VertexId>(v))) out << ' ' << format_double(x);
    out << '\n';
  }
  for (const auto& [u, v] : g.topology().edges()) out << "E " << u << ' ' << v << '\n';
  if (!out) throw IoError("failed to write graph");
}

GirgGraph read_graph(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;
  if (!std::getline(in, line)) throw IoError("empty graph file");
  ++lineno;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != kHeader) throw IoError("missing '#girg v1' header");

  std::map<std::string, std::string, std::less<>> params;
  std::vector<double> weights, positions;
  std::vector<Edge> edges;
  std::optional<int> d;
  std::uint64_t n = 0;
  bool body = false;

  while (std::getline(in, line)) {
    ++lineno;
    std::string_view sv(line);
    if (!sv.empty() && sv.back() == '\r') sv.remove_suffix(1);
    if (sv.empty()) continue;
    if (sv.starts_with("#param ")) {
      if (body) throw IoError("line " + std::to_string(lineno) + ": #param after vertex data");
      const auto kv = sv.substr(7);
      const auto eq = kv.find('=');
      if (eq == std::string_view::npos) throw IoError("line " + std::to_string(lineno) + ": expected key=value");
      params.emplace(std::string(kv.substr(0, eq)), std::string(kv.substr(eq + 1)));
      continue;
    }
    if (sv.front() == '#') continue;
    if (!body) {
      for (const char* key : {"n", "d", "tau", "gamma", "w0", "seed", "sampler"}) {
        if (!params.count(key)) throw IoError(std::string("missing #param ") + key);
      }
      n = parse_number<std::uint64_t>(params.find("n")->second, 0, "n");
      d = parse_number<int>(params.find("d")->second, 0, "d");
      if (*d < 1) throw IoError("#param d must be at least 1");
      weights.reserve(n);
      positions.reserve(n * static_cast<std::uint64_t>(*d));
      body = true;
    }
    const auto tokens = split(sv);
    if (tokens[0] == "V") {
      if (tokens.size() != static_cast<std::size_t>(3 + *d)) {
        throw IoError("line " + std::to_string(lineno) + ": vertex line needs id, weight and " +
                      std::to_string(*d) + " coordinates");
      }
      if (!edges.empty()) throw IoError("line " + std::to_string(lineno) + ": vertex after edges");
      const auto id = parse_number<std::uint64_t>(tokens[1], lineno, "vertex id");
      if (id != weights.size()) throw IoError("line " + std::to_string(lineno) + ": vertex ids must be consecutive from 0");
      weights.push_back(parse_number<double>(tokens[2], lineno, "weight"));
      for (int h = 0; h < *d; ++h) positions.push_back(parse_number<double>(tokens[3 + h], lineno, "coordinate"));
    } else if (tokens[0] == "E") {
      if (tokens.size() != 3) throw IoError("line " + std::to_string(lineno) + ": edge line needs two endpoints");
      const auto u = parse_number<VertexId>(tokens[1], lineno, "endpoint");
      const auto v = parse_number<VertexId>(tokens[2], lineno, "endpoint");
      if (!(u < v)) throw IoError("line " + std::to_string(lineno) + ": edge endpoints must satisfy u < v");
      edges.emplace_back(u, v);
    } else {
      throw IoError("line " + std::to_string(lineno) + ": unknown record '" + std::string(tokens[0]) + "'");
    }
  }
  if (!body) {
    for (const char* key : {"n", "d", "tau", "gamma", "w0", "seed", "sampler"}) {
      if (!params.count(key)) throw IoError(std::string("missing #param ") + key);
    }
    n = parse_number<std::uint64_t>(params.find("n")->second, 0, "n");
  }
  if (weights.size() != n) {
    throw IoError("expected " + std::to_string(n) + " vertices, found " + std::to_string(weights.size()));
  }
  try {
    GirgParams p(n, parse_number<int>(params.find("d")->second, 0, "d"),
                 parse_number<double>(params.find("tau")->second, 0, "tau"),
                 parse_number<double>(params.find("w0")->second, 0, "w0"),
                 parse_number<double>(params.find("gamma")->second, 0, "gamma"),
                 parse_number<std::uint64_t>(params.find("seed")->second, 0, "seed"));
    Graph topology = Graph::from_edges(n, edges);
    return GirgGraph(p, std::move(weights), std::move(positions), std::move(topology),
                     params.find("sampler")->second);
  } catch (const ValidationError& e) {
    throw IoError(std::string("invalid graph file: ") + e.what());
  }
}

void save_graph(const std::filesystem::path& path, const GirgGraph& g) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  write_graph(out, g);
  out.close();
  if (!out) throw IoError("failed to write '" + path.string() + "'");
}

GirgGraph load_graph(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  return read_graph(in);
}

}  // namespace girg
