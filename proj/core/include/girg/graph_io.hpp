#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "girg/graph.hpp"

namespace girg {

/// Text format v1:
///   #girg v1
///   #param key=value      (n, d, tau, gamma, w0, seed, sampler)
///   V <id> <weight> <x1> ... <xd>
///   E <u> <v>             (u < v)
/// Floats use the shortest decimal form that reads back to the same double.
void write_graph(std::ostream& out, const GirgGraph& g);
GirgGraph read_graph(std::istream& in);

void save_graph(const std::filesystem::path& path, const GirgGraph& g);
GirgGraph load_graph(const std::filesystem::path& path);

/// Shortest round-trip decimal representation of x.
std::string format_double(double x);

}  // namespace girg
