#include "tsci/time_series.hpp"

#include "tsci/error.hpp"

#include <cmath>
#include <string>

namespace tsci {

TimeSeries::TimeSeries(std::vector<double> values, double dt) : values_(std::move(values)), dt_(dt) {
  if (!(dt_ > 0.0) || !std::isfinite(dt_)) {
    throw Error(ErrorCode::InvalidArgument, "sampling interval must be positive and finite");
  }
  if (values_.empty()) {
    throw Error(ErrorCode::SeriesTooShort, "time series is empty");
  }
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (!std::isfinite(values_[i])) {
      throw Error(ErrorCode::InvalidArgument, "non-finite sample at index " + std::to_string(i));
    }
  }
}

double TimeSeries::mean() const {
  double s = 0.0;
  for (double v : values_) s += v;
  return s / static_cast<double>(values_.size());
}

double TimeSeries::variance() const {
  const double m = mean();
  double s = 0.0;
  for (double v : values_) s += (v - m) * (v - m);
  return s / static_cast<double>(values_.size());
}

namespace {
std::uint64_t splitmix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}
}  // namespace

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) {
  return splitmix(splitmix(splitmix(seed) ^ a) ^ (b * 0x2545f4914f6cdd1dULL));
}

}  // namespace tsci
