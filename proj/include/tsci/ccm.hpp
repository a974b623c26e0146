#pragma once

#include "tsci/embedding.hpp"
#include "tsci/pipeline.hpp"
#include "tsci/stats.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace tsci {

struct CcmParams {
  EmbeddingParams x;
  EmbeddingParams y;
  std::optional<std::size_t> theiler_window;  // default: lag of the searched embedding
};

/// Contiguous library of rows plus the rows it is scored on. When the library
/// covers every row, queries are all rows (leave-one-out via the Theiler window).
struct LibrarySplit {
  std::vector<std::size_t> library;
  std::vector<std::size_t> queries;
};

LibrarySplit sample_library(std::size_t rows, std::size_t library_length, std::uint64_t seed);

/// Cross-map skill on an aligned pair: X->Y predicts the scalar x(t) (first
/// column of X) from the y-manifold and correlates it with the truth.
double ccm_skill(const AlignedPair& pair, Direction direction, const LibrarySplit& split,
                 std::optional<std::size_t> theiler_window = std::nullopt);

/// r^CCM_{X->Y} = corr(x_hat, x), x_hat predicted from the delay embedding of y.
double ccm_skill(const TimeSeries& x, const TimeSeries& y, const CcmParams& params,
                 std::size_t library_length, std::uint64_t seed);

struct CcmConfig {
  std::vector<std::size_t> library_lengths;
  std::optional<EmbeddingParams> x_embedding;
  std::optional<EmbeddingParams> y_embedding;
  std::size_t trials = 1;
  std::uint64_t seed = 0;
};

struct ConvergenceRow {
  std::size_t library_length;
  Direction direction;
  TrialSummary summary;
};

/// Skill percentiles over seeded library placements, for both directions and
/// every library length (rows ordered by length, then X->Y before Y->X).
std::vector<ConvergenceRow> ccm_convergence(const TimeSeries& x, const TimeSeries& y, const CcmConfig& cfg);

}  // namespace tsci
