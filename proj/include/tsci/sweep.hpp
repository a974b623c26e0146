#pragma once

#include "tsci/pipeline.hpp"
#include "tsci/systems.hpp"

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tsci {

enum class SweepKind { Coupling, LibraryLength, Snr, SinePower, EmbedDim };
enum class Method { TsciKnn, TsciModel, Ccm, Granger, Mi };

std::string_view to_string(SweepKind kind);
std::string_view to_string(Method method);
SweepKind parse_sweep_kind(std::string_view name);
Method parse_method(std::string_view name);

/// One experiment grid on the coupled Roessler-Lorenz benchmark.
///
/// Trial i starts from the initial state drawn from (seed, i) at every grid
/// value, so curves along the grid share trajectories. Additive noise and
/// library placement draw from (seed, grid index, trial).
struct SweepSpec {
  SweepKind kind = SweepKind::Coupling;
  std::vector<double> grid;
  std::size_t trials = 10;
  std::vector<Method> methods = {Method::TsciKnn, Method::Ccm};
  std::uint64_t seed = 0;

  SimulationConfig system;  // system.coupling is used unless the sweep varies it
  PipelineConfig pipeline;
  std::string x_variable = "z2";
  std::string y_variable = "z4";

  std::size_t granger_lag = 5;
  std::size_t mi_k = 4;
  double sine_period = 6.283185307179586;
  /// Derivative estimator for the corrupted-signal sweeps (snr, sine_power).
  DerivativeConfig corrupted_derivative{DerivativeMethod::SavitzkyGolay, 5, 2};
  std::size_t threads = 0;  // 0: hardware concurrency
};

void validate(const SweepSpec& spec);

struct TrialRecord {
  std::size_t grid_index;
  std::size_t trial;
  Method method;
  Direction direction;
  double value;
};

struct ResultRow {
  double sweep_value;
  std::string method;
  std::string direction;
  double median;
  double p5;
  double p95;
  std::size_t trials;
};

/// Every per-trial statistic, ordered by (grid index, method, direction, trial).
std::vector<TrialRecord> run_sweep_trials(const SweepSpec& spec);

/// Percentile rows in grid order, then method order, then X->Y before Y->X.
std::vector<ResultRow> summarize(const SweepSpec& spec, const std::vector<TrialRecord>& records);

std::vector<ResultRow> run_sweep(const SweepSpec& spec);

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows);
void write_rows_json(std::ostream& out, const std::vector<ResultRow>& rows);

}  // namespace tsci
