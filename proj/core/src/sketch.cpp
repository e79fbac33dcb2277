#include "girg/sketch.hpp"

#include <algorithm>
#include <cmath>

#include "girg/errors.hpp"

namespace girg {

QuantileSketch::QuantileSketch(double relative_accuracy)
    : accuracy_(relative_accuracy),
      log_gamma_(std::log((1.0 + relative_accuracy) / (1.0 - relative_accuracy))) {
  if (!(relative_accuracy > 0.0 && relative_accuracy < 1.0)) {
    throw ValidationError("sketch accuracy must lie in (0,1)");
  }
}

int QuantileSketch::bucket_of(double value) const {
  return static_cast<int>(std::ceil(std::log(value) / log_gamma_));
}

double QuantileSketch::bucket_value(int bucket) const {
  const double gamma = std::exp(log_gamma_);
  return 2.0 * std::exp(log_gamma_ * bucket) / (gamma + 1.0);
}

void QuantileSketch::add(double value) {
  if (!(value >= 0.0)) throw ValidationError("QuantileSketch accepts nonnegative values only");
  if (count_ == 0) {
    min_ = max_ = value;
  } else {
    min_ = std::min(min_, value);
    max_ = std::max(max_, value);
  }
  ++count_;
  if (value == 0.0) {
    ++zeros_;
  } else {
    ++buckets_[bucket_of(value)];
  }
}

void QuantileSketch::merge(const QuantileSketch& other) {
  if (other.accuracy_ != accuracy_) throw ValidationError("cannot merge sketches of different accuracy");
  if (other.count_ == 0) return;
  if (count_ == 0) {
    min_ = other.min_;
    max_ = other.max_;
  } else {
    min_ = std::min(min_, other.min_);
    max_ = std::max(max_, other.max_);
  }
  count_ += other.count_;
  zeros_ += other.zeros_;
  for (const auto& [bucket, c] : other.buckets_) buckets_[bucket] += c;
}

double QuantileSketch::quantile(double q) const {
  if (count_ == 0) return 0.0;
  q = std::clamp(q, 0.0, 1.0);
  const auto rank = static_cast<std::uint64_t>(q * static_cast<double>(count_ - 1));
  if (rank < zeros_) return 0.0;
  std::uint64_t seen = zeros_;
  for (const auto& [bucket, c] : buckets_) {
    seen += c;
    if (seen > rank) return std::clamp(bucket_value(bucket), min_, max_);
  }
  return max_;
}

}  // namespace girg
