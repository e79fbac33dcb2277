#include "girg/rng.hpp"

#include <cmath>
#include <limits>

namespace girg {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::mt19937_64 make_engine(RngStream stream) {
  const std::uint64_t a = splitmix64(stream.seed);
  const std::uint64_t b = splitmix64(stream.stream_id ^ 0x6a09e667f3bcc909ULL);
  std::seed_seq seq{static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(a >> 32),
                    static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

std::uint64_t derive_stream_id(std::uint64_t parent, std::uint64_t index) {
  return splitmix64(splitmix64(parent) ^ (index * 0xd1342543de82ef95ULL + 1));
}

Rng::Rng(RngStream stream) : engine_(make_engine(stream)) {}

std::uint64_t Rng::geometric(double p) {
  if (p >= 1.0) return 0;
  const double skip = std::floor(std::log(uniform_pos()) / std::log1p(-p));
  if (!(skip < 9.0e18)) return std::numeric_limits<std::uint64_t>::max();
  return static_cast<std::uint64_t>(skip);
}

}  // namespace girg
