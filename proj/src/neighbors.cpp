#include "tsci/neighbors.hpp"

#include "tsci/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsci {

namespace {

struct Candidate {
  double rdist;
  std::size_t row;
  bool operator<(const Candidate& o) const {
    return rdist < o.rdist || (rdist == o.rdist && row < o.row);
  }
};

}  // namespace

NeighborIndex::NeighborIndex(const Matrix& points, Metric metric)
    : NeighborIndex(points, {}, metric) {}

NeighborIndex::NeighborIndex(const Matrix& points, std::span<const std::size_t> rows, Metric metric)
    : metric_(metric), dim_(static_cast<std::size_t>(points.cols())) {
  if (rows.empty()) {
    rows_.resize(static_cast<std::size_t>(points.rows()));
    std::iota(rows_.begin(), rows_.end(), std::size_t{0});
  } else {
    rows_.assign(rows.begin(), rows.end());
  }
  coords_.resize(rows_.size() * dim_);
  for (std::size_t s = 0; s < rows_.size(); ++s) {
    if (rows_[s] >= static_cast<std::size_t>(points.rows())) {
      throw Error(ErrorCode::InvalidArgument, "neighbor index row out of range");
    }
    for (std::size_t d = 0; d < dim_; ++d) {
      coords_[s * dim_ + d] = points(static_cast<Eigen::Index>(rows_[s]), static_cast<Eigen::Index>(d));
    }
  }
  order_.resize(rows_.size());
  std::iota(order_.begin(), order_.end(), std::size_t{0});
  if (!rows_.empty()) {
    nodes_.reserve(2 * rows_.size() / kLeafSize + 1);
    build(0, rows_.size());
  }
}

int NeighborIndex::build(std::size_t begin, std::size_t end) {
  const int id = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{begin, end});
  const std::size_t n = end - begin;
  const bool brute = rows_.size() < kBruteForceBelow;
  if (brute || n <= kLeafSize || dim_ == 0) return id;

  std::size_t best_dim = 0;
  double best_spread = -1.0;
  for (std::size_t d = 0; d < dim_; ++d) {
    double lo = coords_[order_[begin] * dim_ + d];
    double hi = lo;
    for (std::size_t i = begin + 1; i < end; ++i) {
      const double v = coords_[order_[i] * dim_ + d];
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    if (hi - lo > best_spread) {
      best_spread = hi - lo;
      best_dim = d;
    }
  }
  if (best_spread <= 0.0) return id;  // all points coincide

  const std::size_t mid = begin + n / 2;
  auto key = [&](std::size_t slot) { return coords_[slot * dim_ + best_dim]; };
  std::nth_element(order_.begin() + static_cast<std::ptrdiff_t>(begin),
                   order_.begin() + static_cast<std::ptrdiff_t>(mid),
                   order_.begin() + static_cast<std::ptrdiff_t>(end),
                   [&](std::size_t a, std::size_t b) { return key(a) < key(b); });
  const double split = key(order_[mid]);

  const int left = build(begin, mid);
  const int right = build(mid, end);
  Node& node = nodes_[static_cast<std::size_t>(id)];
  node.split_dim = static_cast<int>(best_dim);
  node.split = split;
  node.left = left;
  node.right = right;
  return id;
}

double NeighborIndex::reduced_distance(const double* a, const double* b) const {
  double acc = 0.0;
  if (metric_ == Metric::Euclidean) {
    for (std::size_t d = 0; d < dim_; ++d) {
      const double diff = a[d] - b[d];
      acc += diff * diff;
    }
  } else {
    for (std::size_t d = 0; d < dim_; ++d) acc = std::max(acc, std::abs(a[d] - b[d]));
  }
  return acc;
}

double NeighborIndex::reduce(double axis_gap) const {
  return metric_ == Metric::Euclidean ? axis_gap * axis_gap : std::abs(axis_gap);
}

double NeighborIndex::unreduce(double reduced) const {
  return metric_ == Metric::Euclidean ? std::sqrt(reduced) : reduced;
}

std::vector<Neighbor> NeighborIndex::knn(std::span<const double> query, std::size_t k,
                                         std::optional<TemporalExclusion> exclude) const {
  if (query.size() != dim_) {
    throw Error(ErrorCode::InvalidArgument, "query dimension does not match index");
  }
  std::vector<Candidate> heap;  // max-heap on (rdist, row)
  if (k == 0 || rows_.empty()) return {};
  heap.reserve(k + 1);

  auto excluded = [&](std::size_t row) {
    if (!exclude) return false;
    const std::size_t lo = exclude->center > exclude->radius ? exclude->center - exclude->radius : 0;
    return row >= lo && row <= exclude->center + exclude->radius;
  };
  auto offer = [&](std::size_t slot) {
    const std::size_t row = rows_[slot];
    if (excluded(row)) return;
    Candidate c{reduced_distance(query.data(), &coords_[slot * dim_]), row};
    if (heap.size() < k) {
      heap.push_back(c);
      std::push_heap(heap.begin(), heap.end());
    } else if (c < heap.front()) {
      std::pop_heap(heap.begin(), heap.end());
      heap.back() = c;
      std::push_heap(heap.begin(), heap.end());
    }
  };

  // Explicit stack: (node, lower bound on reduced distance to its region).
  std::vector<std::pair<int, double>> stack;
  stack.emplace_back(0, 0.0);
  while (!stack.empty()) {
    const auto [id, bound] = stack.back();
    stack.pop_back();
    if (heap.size() == k && bound > heap.front().rdist) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.split_dim < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) offer(order_[i]);
      continue;
    }
    const double gap = query[static_cast<std::size_t>(node.split_dim)] - node.split;
    const int near = gap < 0.0 ? node.left : node.right;
    const int far = gap < 0.0 ? node.right : node.left;
    const double far_bound = metric_ == Metric::Euclidean ? std::max(bound, reduce(gap))
                                                          : std::max(bound, std::abs(gap));
    stack.emplace_back(far, far_bound);
    stack.emplace_back(near, bound);
  }

  std::sort_heap(heap.begin(), heap.end());
  std::vector<Neighbor> out;
  out.reserve(heap.size());
  for (const auto& c : heap) out.push_back({c.row, unreduce(c.rdist)});
  return out;
}

std::size_t NeighborIndex::count_within(std::span<const double> query, double radius) const {
  if (query.size() != dim_) {
    throw Error(ErrorCode::InvalidArgument, "query dimension does not match index");
  }
  if (rows_.empty() || !(radius > 0.0)) return 0;
  const double rlimit = reduce(radius);
  std::size_t count = 0;
  std::vector<std::pair<int, double>> stack;
  stack.emplace_back(0, 0.0);
  while (!stack.empty()) {
    const auto [id, bound] = stack.back();
    stack.pop_back();
    if (bound >= rlimit) continue;
    const Node& node = nodes_[static_cast<std::size_t>(id)];
    if (node.split_dim < 0) {
      for (std::size_t i = node.begin; i < node.end; ++i) {
        if (reduced_distance(query.data(), &coords_[order_[i] * dim_]) < rlimit) ++count;
      }
      continue;
    }
    const double gap = query[static_cast<std::size_t>(node.split_dim)] - node.split;
    const int near = gap < 0.0 ? node.left : node.right;
    const int far = gap < 0.0 ? node.right : node.left;
    stack.emplace_back(far, std::max(bound, reduce(gap)));
    stack.emplace_back(near, bound);
  }
  return count;
}

}  // namespace tsci
