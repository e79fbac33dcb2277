#pragma once

#include <cstdint>
#include <map>

namespace girg {

/// Streaming quantile sketch with bounded relative error on nonnegative
/// values (logarithmic buckets of ratio (1+a)/(1-a)). Deterministic and
/// exactly mergeable: merging sketches in any order gives the same state.
class QuantileSketch {
 public:
  explicit QuantileSketch(double relative_accuracy = 0.01);

  void add(double value);
  void merge(const QuantileSketch& other);

  std::uint64_t count() const { return count_; }
  double min() const { return min_; }
  double max() const { return max_; }
  double relative_accuracy() const { return accuracy_; }

  /// Value at quantile q in [0,1]; within relative_accuracy of an exact
  /// order statistic. Returns 0 for an empty sketch.
  double quantile(double q) const;

  friend bool operator==(const QuantileSketch&, const QuantileSketch&) = default;

 private:
  int bucket_of(double value) const;
  double bucket_value(int bucket) const;

  double accuracy_;
  double log_gamma_;
  std::map<int, std::uint64_t> buckets_;
  std::uint64_t zeros_ = 0;
  std::uint64_t count_ = 0;
  double min_ = 0.0;
  double max_ = 0.0;
};

}  // namespace girg
