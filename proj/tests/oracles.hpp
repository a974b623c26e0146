#pragma once

// Slow reference implementations used to cross-check the library.

#include "tsci/time_series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <limits>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace oracle {

using tsci::Matrix;

inline double euclid(const Matrix& P, std::size_t i, const double* q) {
  double s = 0.0;
  for (Eigen::Index c = 0; c < P.cols(); ++c) {
    const double d = P(static_cast<Eigen::Index>(i), c) - q[c];
    s += d * d;
  }
  return std::sqrt(s);
}

inline double cheb(const Matrix& P, std::size_t i, std::size_t j) {
  double m = 0.0;
  for (Eigen::Index c = 0; c < P.cols(); ++c) {
    m = std::max(m, std::abs(P(static_cast<Eigen::Index>(i), c) - P(static_cast<Eigen::Index>(j), c)));
  }
  return m;
}

/// All rows sorted by (distance, index), skipping |i - center| <= radius.
inline std::vector<std::pair<double, std::size_t>> sorted_neighbors(const Matrix& P, const double* q,
                                                                     long center = -1, std::size_t radius = 0) {
  std::vector<std::pair<double, std::size_t>> all;
  for (std::size_t i = 0; i < static_cast<std::size_t>(P.rows()); ++i) {
    if (center >= 0) {
      const auto c = static_cast<std::size_t>(center);
      const std::size_t gap = i > c ? i - c : c - i;
      if (gap <= radius) continue;
    }
    all.emplace_back(euclid(P, i, q), i);
  }
  std::sort(all.begin(), all.end());
  return all;
}

inline std::vector<double> delay_row(const std::vector<double>& x, std::size_t s, std::size_t lag, std::size_t dim) {
  std::vector<double> r(dim);
  for (std::size_t q = 0; q < dim; ++q) r[q] = x[s - q * lag];
  return r;
}

/// Kennel false-neighbor fraction by exhaustive search, written against the
/// raw series rather than an embedding matrix.
inline double fnn_fraction(const std::vector<double>& x, std::size_t lag, std::size_t dim, double rtol,
                           double atol = std::numeric_limits<double>::infinity()) {
  const std::size_t first = dim * lag;
  const std::size_t n = x.size();
  double mean = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
  double var = 0.0;
  for (double v : x) var += (v - mean) * (v - mean);
  const double sigma = std::sqrt(var / static_cast<double>(n));
  std::size_t counted = 0, falses = 0;
  for (std::size_t s = first; s < n; ++s) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t arg = 0;
    for (std::size_t u = first; u < n; ++u) {
      const std::size_t gap = u > s ? u - s : s - u;
      if (gap <= lag) continue;
      double d2 = 0.0;
      for (std::size_t q = 0; q < dim; ++q) {
        const double d = x[s - q * lag] - x[u - q * lag];
        d2 += d * d;
      }
      if (d2 < best) {
        best = d2;
        arg = u;
      }
    }
    const double d = std::sqrt(best);
    if (!(d > 0.0)) continue;
    const double extra = std::abs(x[s - dim * lag] - x[arg - dim * lag]);
    ++counted;
    if (extra / d > rtol || std::sqrt(best + extra * extra) / sigma > atol) ++falses;
  }
  return counted == 0 ? 0.0 : static_cast<double>(falses) / static_cast<double>(counted);
}

inline double digamma(double x) {
  // Recurrence up to x >= 6, then the asymptotic series.
  double r = 0.0;
  while (x < 6.0) {
    r -= 1.0 / x;
    x += 1.0;
  }
  const double f = 1.0 / (x * x);
  return r + std::log(x) - 0.5 / x -
         f * (1.0 / 12 - f * (1.0 / 120 - f * (1.0 / 252 - f * (1.0 / 240 - f / 132))));
}

/// KSG (first estimator) by O(T^2) search.
inline double ksg(const Matrix& A, const Matrix& B, std::size_t k) {
  const std::size_t n = static_cast<std::size_t>(A.rows());
  double acc = 0.0;
  std::vector<double> dj(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) dj[j] = j == i ? std::numeric_limits<double>::infinity()
                                                       : std::max(cheb(A, i, j), cheb(B, i, j));
    std::vector<double> tmp = dj;
    std::nth_element(tmp.begin(), tmp.begin() + static_cast<std::ptrdiff_t>(k - 1), tmp.end());
    const double eps = tmp[k - 1];
    std::size_t na = 0, nb = 0;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == i) continue;
      if (cheb(A, i, j) < eps) ++na;
      if (cheb(B, i, j) < eps) ++nb;
    }
    acc += digamma(static_cast<double>(na) + 1.0) + digamma(static_cast<double>(nb) + 1.0);
  }
  return digamma(static_cast<double>(k)) + digamma(static_cast<double>(n)) - acc / static_cast<double>(n);
}

using State3 = std::array<double, 3>;

inline State3 lorenz(const State3& s) {
  return {10.0 * (s[1] - s[0]), s[0] * (28.0 - s[2]) - s[1], s[0] * s[1] - 8.0 / 3.0 * s[2]};
}

/// Lorenz trajectory via its own RK4 loop; `sub` integration steps per sample.
inline std::vector<State3> lorenz_trajectory(State3 s, double dt, std::size_t n, std::size_t sub = 10,
                                             double transient = 20.0) {
  const double h = dt / static_cast<double>(sub);
  auto step = [&](State3 z) {
    auto add = [](State3 a, const State3& b, double c) {
      for (int i = 0; i < 3; ++i) a[i] += c * b[i];
      return a;
    };
    const State3 k1 = lorenz(z), k2 = lorenz(add(z, k1, h / 2)), k3 = lorenz(add(z, k2, h / 2)),
                 k4 = lorenz(add(z, k3, h));
    for (int i = 0; i < 3; ++i) z[i] += h / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
    return z;
  };
  for (double t = 0.0; t < transient; t += h) s = step(s);
  std::vector<State3> out;
  out.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(s);
    for (std::size_t j = 0; j < sub; ++j) s = step(s);
  }
  return out;
}

inline Matrix gaussian(std::size_t rows, std::size_t cols, unsigned seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd;
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = nd(g);
  return m;
}

inline std::vector<double> gaussian_series(std::size_t n, unsigned seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> nd;
  std::vector<double> v(n);
  for (auto& x : v) x = nd(g);
  return v;
}

}  // namespace oracle
