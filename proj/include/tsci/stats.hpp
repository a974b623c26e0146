#pragma once

#include <span>
#include <vector>

namespace tsci {

/// Linear-interpolation percentile (q in [0, 100]) of unsorted values.
double percentile(std::span<const double> values, double q);

struct TrialSummary {
  double p5;
  double median;
  double p95;
};

TrialSummary aggregate_trials(std::span<const double> values);

/// Pearson correlation; 0 when either input is constant.
double pearson(std::span<const double> a, std::span<const double> b);

}  // namespace tsci
