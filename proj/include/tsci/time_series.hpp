#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tsci {

/// Sample-major matrix: one row per time index.
using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Uniformly sampled scalar signal. Values are finite and dt > 0.
class TimeSeries {
 public:
  TimeSeries(std::vector<double> values, double dt);

  std::span<const double> values() const noexcept { return values_; }
  double operator[](std::size_t i) const noexcept { return values_[i]; }
  std::size_t size() const noexcept { return values_.size(); }
  double dt() const noexcept { return dt_; }

  double mean() const;
  /// Population variance (divide by N).
  double variance() const;

 private:
  std::vector<double> values_;
  double dt_;
};

/// Deterministic 64-bit mixing of a seed with stream indices (splitmix64 finalizer).
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0);

}  // namespace tsci
