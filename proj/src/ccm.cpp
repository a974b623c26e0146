#include "tsci/ccm.hpp"

#include "tsci/crossmap.hpp"
#include "tsci/error.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

namespace tsci {

LibrarySplit sample_library(std::size_t rows, std::size_t library_length, std::uint64_t seed) {
  if (library_length == 0) throw Error(ErrorCode::InvalidArgument, "library length must be positive");
  if (library_length > rows) {
    throw Error(ErrorCode::LibraryTooLong, "library length " + std::to_string(library_length) +
                                               " exceeds the " + std::to_string(rows) + " embedded rows");
  }
  LibrarySplit split;
  std::size_t start = 0;
  if (library_length < rows) {
    std::mt19937_64 rng(mix_seed(seed, 0x11b));
    std::uniform_int_distribution<std::size_t> pick(0, rows - library_length);
    start = pick(rng);
  }
  split.library.resize(library_length);
  std::iota(split.library.begin(), split.library.end(), start);
  if (library_length == rows) {
    split.queries = split.library;
  } else {
    split.queries.reserve(rows - library_length);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i < start || i >= start + library_length) split.queries.push_back(i);
    }
  }
  return split;
}

double ccm_skill(const AlignedPair& pair, Direction direction, const LibrarySplit& split,
                 std::optional<std::size_t> theiler_window) {
  const bool xy = direction == Direction::XToY;
  const Matrix& source = xy ? pair.Y : pair.X;
  const Matrix& target = xy ? pair.X : pair.Y;
  const std::size_t lag = xy ? pair.y_params.lag : pair.x_params.lag;
  const Matrix truth = target.leftCols(1);
  const Matrix predicted = ccm_predict(source, truth, split.library, split.queries,
                                       KnnConfig{0, theiler_window.value_or(lag)});
  std::vector<double> a(split.queries.size());
  std::vector<double> b(split.queries.size());
  for (std::size_t i = 0; i < split.queries.size(); ++i) {
    a[i] = predicted(static_cast<Eigen::Index>(i), 0);
    b[i] = truth(static_cast<Eigen::Index>(split.queries[i]), 0);
  }
  return pearson(a, b);
}

namespace {

AlignedPair embed_pair(const TimeSeries& x, const TimeSeries& y, EmbeddingParams px, EmbeddingParams py) {
  Reconstruction rx{delay_embed(x, px), {}};
  Reconstruction ry{delay_embed(y, py), {}};
  // CCM needs no tangent vectors; reuse the state as a placeholder field.
  rx.field = {rx.embedding.points, DerivativeMethod::Central, rx.embedding.base_offset};
  ry.field = {ry.embedding.points, DerivativeMethod::Central, ry.embedding.base_offset};
  return align_pair(rx, ry);
}

}  // namespace

double ccm_skill(const TimeSeries& x, const TimeSeries& y, const CcmParams& params, std::size_t library_length,
                 std::uint64_t seed) {
  const AlignedPair pair = embed_pair(x, y, params.x, params.y);
  return ccm_skill(pair, Direction::XToY, sample_library(pair.rows(), library_length, seed), params.theiler_window);
}

std::vector<ConvergenceRow> ccm_convergence(const TimeSeries& x, const TimeSeries& y, const CcmConfig& cfg) {
  if (cfg.library_lengths.empty() || cfg.trials == 0) {
    throw Error(ErrorCode::InvalidArgument, "need at least one library length and one trial");
  }
  for (std::size_t i = 1; i < cfg.library_lengths.size(); ++i) {
    if (cfg.library_lengths[i] <= cfg.library_lengths[i - 1]) {
      throw Error(ErrorCode::InvalidArgument, "library lengths must be strictly increasing");
    }
  }
  const EmbeddingParams px = cfg.x_embedding ? *cfg.x_embedding : choose_embedding(x, {});
  const EmbeddingParams py = cfg.y_embedding ? *cfg.y_embedding : choose_embedding(y, {});
  const AlignedPair pair = embed_pair(x, y, px, py);

  std::vector<ConvergenceRow> rows;
  for (std::size_t li = 0; li < cfg.library_lengths.size(); ++li) {
    std::vector<double> xy(cfg.trials);
    std::vector<double> yx(cfg.trials);
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
      const LibrarySplit split = sample_library(pair.rows(), cfg.library_lengths[li], mix_seed(cfg.seed, li, trial));
      xy[trial] = ccm_skill(pair, Direction::XToY, split);
      yx[trial] = ccm_skill(pair, Direction::YToX, split);
    }
    rows.push_back({cfg.library_lengths[li], Direction::XToY, aggregate_trials(xy)});
    rows.push_back({cfg.library_lengths[li], Direction::YToX, aggregate_trials(yx)});
  }
  return rows;
}

}  // namespace tsci
