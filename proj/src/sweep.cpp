#include "tsci/sweep.hpp"

#include "tsci/baselines.hpp"
#include "tsci/ccm.hpp"
#include "tsci/csv.hpp"
#include "tsci/error.hpp"
#include "tsci/stats.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <ostream>
#include <thread>

namespace tsci {

std::string_view to_string(SweepKind kind) {
  switch (kind) {
    case SweepKind::Coupling: return "coupling";
    case SweepKind::LibraryLength: return "library_length";
    case SweepKind::Snr: return "snr";
    case SweepKind::SinePower: return "sine_power";
    case SweepKind::EmbedDim: return "embed_dim";
  }
  return "coupling";
}

std::string_view to_string(Method method) {
  switch (method) {
    case Method::TsciKnn: return "tsci_knn";
    case Method::TsciModel: return "tsci_model";
    case Method::Ccm: return "ccm";
    case Method::Granger: return "granger";
    case Method::Mi: return "mi";
  }
  return "tsci_knn";
}

SweepKind parse_sweep_kind(std::string_view name) {
  for (auto k : {SweepKind::Coupling, SweepKind::LibraryLength, SweepKind::Snr, SweepKind::SinePower,
                 SweepKind::EmbedDim}) {
    if (to_string(k) == name) return k;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown sweep kind '" + std::string(name) + "'");
}

Method parse_method(std::string_view name) {
  for (auto m : {Method::TsciKnn, Method::TsciModel, Method::Ccm, Method::Granger, Method::Mi}) {
    if (to_string(m) == name) return m;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown method '" + std::string(name) + "'");
}

void validate(const SweepSpec& spec) {
  if (spec.grid.empty()) throw Error(ErrorCode::InvalidArgument, "sweep grid is empty");
  if (spec.trials < 1) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one trial");
  if (spec.methods.empty()) throw Error(ErrorCode::InvalidArgument, "sweep needs at least one method");
  state_index(spec.x_variable);
  state_index(spec.y_variable);
  const bool integral = spec.kind == SweepKind::LibraryLength || spec.kind == SweepKind::EmbedDim;
  for (double g : spec.grid) {
    if (!std::isfinite(g) && !(spec.kind == SweepKind::Snr || spec.kind == SweepKind::SinePower)) {
      throw Error(ErrorCode::InvalidArgument, "non-finite grid value");
    }
    if (integral && (g < 1.0 || g != std::floor(g))) {
      throw Error(ErrorCode::InvalidArgument, "library lengths and dimensions must be positive integers");
    }
    if (spec.kind == SweepKind::Coupling && g < 0.0) {
      throw Error(ErrorCode::InvalidArgument, "coupling must be non-negative");
    }
  }
}

namespace {

struct Job {
  std::size_t grid_index;
  std::size_t trial;
};

/// Values for one (grid value, trial): methods x {X->Y, Y->X}, method-major.
std::vector<double> run_job(const SweepSpec& spec, const Job& job) {
  const double g = spec.grid[job.grid_index];
  const std::uint64_t job_seed = mix_seed(spec.seed, job.grid_index + 1, job.trial);

  SimulationConfig sim = spec.system;
  if (spec.kind == SweepKind::Coupling) sim.coupling = g;
  if (!sim.initial_state) sim.initial_state = random_initial_state(mix_seed(spec.seed, 0, job.trial));
  const std::vector<TimeSeries> states = rk4_integrate(sim);
  TimeSeries x = states[state_index(spec.x_variable)];
  TimeSeries y = states[state_index(spec.y_variable)];

  // Embedding parameters always come from the uncorrupted observations.
  PipelineConfig cfg = spec.pipeline;
  const EmbeddingParams px = choose_embedding(x, cfg.x_embedding);
  const EmbeddingParams py = choose_embedding(y, cfg.y_embedding);

  if (spec.kind == SweepKind::Snr) {
    x = corrupt_additive_noise(x, g, mix_seed(job_seed, 1));
    y = corrupt_additive_noise(y, g, mix_seed(job_seed, 2));
  } else if (spec.kind == SweepKind::SinePower) {
    x = corrupt_sine(x, g, spec.sine_period);
    y = corrupt_sine(y, g, spec.sine_period);
  }
  if (spec.kind == SweepKind::Snr || spec.kind == SweepKind::SinePower) cfg.derivative = spec.corrupted_derivative;

  // For the dimension sweep the putative effect's dimension follows the grid:
  // Q_y when testing X->Y, Q_x when testing Y->X.
  auto pair_for = [&](Direction d) {
    EmbeddingParams ex = px;
    EmbeddingParams ey = py;
    if (spec.kind == SweepKind::EmbedDim) {
      (d == Direction::XToY ? ey : ex).dim = static_cast<std::size_t>(g);
    }
    return align_pair(reconstruct(x, ex, cfg.derivative), reconstruct(y, ey, cfg.derivative));
  };

  std::vector<double> values;
  values.reserve(spec.methods.size() * 2);
  const std::array<Direction, 2> directions = {Direction::XToY, Direction::YToX};
  std::optional<AlignedPair> shared;
  if (spec.kind != SweepKind::EmbedDim) shared = pair_for(Direction::XToY);

  for (Method m : spec.methods) {
    for (Direction d : directions) {
      try {
        const AlignedPair local = shared ? AlignedPair{} : pair_for(d);
        const AlignedPair& pair = shared ? *shared : local;
        LibrarySplit split;
        const bool library_sweep = spec.kind == SweepKind::LibraryLength;
        if (library_sweep) split = sample_library(pair.rows(), static_cast<std::size_t>(g), job_seed);

        double v = 0.0;
        switch (m) {
          case Method::TsciKnn:
          case Method::TsciModel: {
            PipelineConfig c = cfg;
            c.method = m == Method::TsciKnn ? CrossMapMethod::Knn : CrossMapMethod::KernelRidge;
            v = library_sweep ? score_direction(pair, d, c, split.library, split.queries).r
                              : score_direction(pair, d, c).r;
            break;
          }
          case Method::Ccm: {
            if (!library_sweep) split = sample_library(pair.rows(), pair.rows(), job_seed);
            v = ccm_skill(pair, d, split, cfg.theiler_window);
            break;
          }
          case Method::Mi: {
            PipelineConfig c = cfg;
            c.method = CrossMapMethod::Knn;
            const auto [pushed, native] = library_sweep
                                              ? pushforward_direction(pair, d, c, split.library, split.queries)
                                              : pushforward_direction(pair, d, c);
            v = mi_pushforward_score(native, pushed, spec.mi_k);
            break;
          }
          case Method::Granger: {
            auto window = [&](const TimeSeries& s) {
              if (!library_sweep) return s;
              const std::size_t begin = pair.first_index + split.library.front();
              const auto vals = s.values().subspan(begin, split.library.size());
              return TimeSeries({vals.begin(), vals.end()}, s.dt());
            };
            const GrangerResult gr = granger_f_test(window(x), window(y), spec.granger_lag);
            v = d == Direction::XToY ? gr.p_xy : gr.p_yx;
            break;
          }
        }
        values.push_back(v);
      } catch (const Error& e) {
        throw Error(e.code(), std::string(to_string(spec.kind)) + "=" + format_double(g) + ", trial " +
                                  std::to_string(job.trial) + ", " + std::string(to_string(m)) + " " +
                                  std::string(to_string(d)) + ": " + e.what());
      }
    }
  }
  return values;
}

}  // namespace

std::vector<TrialRecord> run_sweep_trials(const SweepSpec& spec) {
  validate(spec);
  std::vector<Job> jobs;
  for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
    for (std::size_t t = 0; t < spec.trials; ++t) jobs.push_back({gi, t});
  }
  std::vector<std::vector<double>> results(jobs.size());

  std::size_t workers = spec.threads == 0 ? std::thread::hardware_concurrency() : spec.threads;
  workers = std::clamp<std::size_t>(workers, 1, jobs.size());
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        results[i] = run_job(spec, jobs[i]);
      } catch (...) {
        const std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = jobs.size();
      }
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  std::vector<TrialRecord> records;
  records.reserve(jobs.size() * spec.methods.size() * 2);
  for (std::size_t gi = 0; gi < spec.grid.size(); ++gi) {
    for (std::size_t mi = 0; mi < spec.methods.size(); ++mi) {
      for (std::size_t di = 0; di < 2; ++di) {
        for (std::size_t t = 0; t < spec.trials; ++t) {
          const double v = results[gi * spec.trials + t][mi * 2 + di];
          records.push_back({gi, t, spec.methods[mi], di == 0 ? Direction::XToY : Direction::YToX, v});
        }
      }
    }
  }
  return records;
}

std::vector<ResultRow> summarize(const SweepSpec& spec, const std::vector<TrialRecord>& records) {
  std::vector<ResultRow> rows;
  std::size_t i = 0;
  while (i < records.size()) {
    std::size_t j = i;
    std::vector<double> values;
    while (j < records.size() && records[j].grid_index == records[i].grid_index &&
           records[j].method == records[i].method && records[j].direction == records[i].direction) {
      values.push_back(records[j].value);
      ++j;
    }
    const TrialSummary s = aggregate_trials(values);
    rows.push_back({spec.grid[records[i].grid_index], std::string(to_string(records[i].method)),
                    std::string(to_string(records[i].direction)), s.median, s.p5, s.p95, values.size()});
    i = j;
  }
  return rows;
}

std::vector<ResultRow> run_sweep(const SweepSpec& spec) { return summarize(spec, run_sweep_trials(spec)); }

void write_rows_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "sweep_value,method,direction,median,p5,p95,trials\n";
  for (const auto& r : rows) {
    out << format_double(r.sweep_value) << ',' << r.method << ',' << r.direction << ',' << format_double(r.median)
        << ',' << format_double(r.p5) << ',' << format_double(r.p95) << ',' << r.trials << '\n';
  }
}

namespace {
std::string json_number(double v) { return std::isfinite(v) ? format_double(v) : "null"; }
}  // namespace

void write_rows_json(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << "[\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    out << "  {\"sweep_value\": " << json_number(r.sweep_value) << ", \"method\": \"" << r.method
        << "\", \"direction\": \"" << r.direction << "\", \"median\": " << json_number(r.median)
        << ", \"p5\": " << json_number(r.p5) << ", \"p95\": " << json_number(r.p95)
        << ", \"trials\": " << r.trials << "}" << (i + 1 < rows.size() ? "," : "") << '\n';
  }
  out << "]\n";
}

}  // namespace tsci
