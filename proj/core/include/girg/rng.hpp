#pragma once

#include <cstdint>
#include <random>

namespace girg {

/// Identifies an independent random substream. Identical (seed, stream_id)
/// pairs reproduce identical draws; distinct stream ids give unrelated
/// sequences.
struct RngStream {
  std::uint64_t seed = 0;
  std::uint64_t stream_id = 0;

  friend bool operator==(const RngStream&, const RngStream&) = default;
};

/// Derives a child stream id from a parent id and an index, e.g. one
/// substream per (n, replica) cell of a sweep.
std::uint64_t derive_stream_id(std::uint64_t parent, std::uint64_t index);

class Rng {
 public:
  explicit Rng(RngStream stream);

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Uniform on (0, 1].
  double uniform_pos() { return 1.0 - uniform(); }

  bool bernoulli(double p) { return uniform() < p; }

  /// Number of failures before the first success of a Bernoulli(p) sequence,
  /// p in (0, 1].
  std::uint64_t geometric(double p);

 private:
  std::mt19937_64 engine_;
};

}  // namespace girg
