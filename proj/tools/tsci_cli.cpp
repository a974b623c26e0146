#include "tsci/baselines.hpp"
#include "tsci/ccm.hpp"
#include "tsci/csv.hpp"
#include "tsci/error.hpp"
#include "tsci/pipeline.hpp"
#include "tsci/sweep.hpp"
#include "tsci/sweep_config.hpp"
#include "tsci/systems.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;
using namespace tsci;

namespace {

enum class Format { Csv, Json };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Common {
  std::string input;
  std::string output;
  std::string format = "csv";
  std::uint64_t seed = 0;
  std::size_t trials = 1;
  std::string method;
};

struct SystemFlags {
  double coupling = 1.0;
  std::size_t n_samples = 10000;
  double dt_sample = 0.05;
  double dt_integrate = 0.001;
  double transient = 50.0;
};

struct PairFlags {
  std::string x = "z2";
  std::string y = "z4";
  std::optional<std::size_t> lag_x, dim_x, lag_y, dim_y;
};

/// A small result table written as CSV or as a JSON array of objects.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<json>> rows;
};

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::Csv;
  if (s == "json") return Format::Json;
  throw UsageError("--format must be csv or json");
}

std::string cell(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_float()) return format_double(v.get<double>());
  if (v.is_null()) return "nan";
  return v.dump();
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

void write_table(std::ostream& out, const Table& t, Format f) {
  if (f == Format::Csv) {
    for (std::size_t i = 0; i < t.columns.size(); ++i) out << (i ? "," : "") << t.columns[i];
    out << '\n';
    for (const auto& row : t.rows) {
      for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << cell(row[i]);
      out << '\n';
    }
    return;
  }
  json doc = json::array();
  for (const auto& row : t.rows) {
    json obj = json::object();
    for (std::size_t i = 0; i < row.size(); ++i) obj[t.columns[i]] = row[i];
    doc.push_back(obj);
  }
  out << doc.dump(2) << '\n';
}

template <class Writer>
void emit(const Common& c, Writer&& write) {
  if (c.output.empty() || c.output == "-") {
    write(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(c.output, std::ios::binary);
  if (!out) throw Error(ErrorCode::ParseError, "cannot write '" + c.output + "'");
  write(out);
}

void emit_table(const Common& c, const Table& t) {
  const Format f = parse_format(c.format);
  emit(c, [&](std::ostream& out) { write_table(out, t, f); });
}

void add_common(CLI::App* app, Common& c, bool with_input = true) {
  if (with_input) app->add_option("-i,--input", c.input, "Trajectory CSV (time,<names...>); simulated when omitted");
  app->add_option("-o,--output", c.output, "Output path (stdout by default)");
  app->add_option("-f,--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  app->add_option("--seed", c.seed, "Seed for initial conditions and random draws");
}

void add_system(CLI::App* app, SystemFlags& s) {
  app->add_option("--coupling", s.coupling, "Coupling strength C");
  app->add_option("--n-samples", s.n_samples, "Number of retained samples");
  app->add_option("--dt-sample", s.dt_sample, "Sampling interval");
  app->add_option("--dt-integrate", s.dt_integrate, "RK4 step");
  app->add_option("--transient", s.transient, "Discarded transient time");
}

void add_pair(CLI::App* app, PairFlags& p) {
  app->add_option("-x,--x", p.x, "Putative cause column");
  app->add_option("-y,--y", p.y, "Putative effect column");
  app->add_option("--lag-x", p.lag_x, "Delay of x (ACF rule when omitted)");
  app->add_option("--dim-x", p.dim_x, "Embedding dimension of x (FNN rule when omitted)");
  app->add_option("--lag-y", p.lag_y, "Delay of y");
  app->add_option("--dim-y", p.dim_y, "Embedding dimension of y");
}

SimulationConfig simulation(const SystemFlags& s, std::uint64_t seed) {
  SimulationConfig cfg;
  cfg.coupling = s.coupling;
  cfg.n_samples = s.n_samples;
  cfg.dt_sample = s.dt_sample;
  cfg.dt_integrate = s.dt_integrate;
  cfg.transient_time = s.transient;
  cfg.seed = seed;
  return cfg;
}

SeriesTable simulated_table(const SystemFlags& s, std::uint64_t seed) {
  const SimulationConfig cfg = simulation(s, seed);
  SeriesTable t;
  t.dt = cfg.dt_sample;
  t.series = rk4_integrate(cfg);
  t.names.assign(kStateNames.begin(), kStateNames.end());
  return t;
}

SeriesTable load(const Common& c, const SystemFlags& s) {
  return c.input.empty() ? simulated_table(s, c.seed) : read_csv(c.input);
}

std::pair<TimeSeries, TimeSeries> pick(const SeriesTable& t, const PairFlags& p) {
  return {t.at(p.x), t.at(p.y)};
}

void apply_embedding(const PairFlags& p, PipelineConfig& cfg) {
  cfg.x_embedding.lag = p.lag_x;
  cfg.x_embedding.dim = p.dim_x;
  cfg.y_embedding.lag = p.lag_y;
  cfg.y_embedding.dim = p.dim_y;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + item + "' in list");
    }
  }
  if (out.empty()) throw UsageError("empty list");
  return out;
}

int exit_code(ErrorCode code) {
  if (is_numerical_failure(code)) return 3;
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidFilterConfig:
      return 1;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Tangent space causal inference on time series"};
  app.require_subcommand(1);

  Common common;
  SystemFlags system;
  PairFlags pair;

  auto* sim = app.add_subcommand("simulate", "Integrate the coupled Roessler-Lorenz system and write its trajectory");
  add_common(sim, common, false);
  add_system(sim, system);

  auto* embed = app.add_subcommand("embed-params", "Report the delay and dimension selected for each series");
  add_common(embed, common);
  add_system(embed, system);
  std::vector<std::string> columns;
  embed->add_option("--columns", columns, "Series to analyze (all by default)");

  std::string derivative = "central";
  std::size_t sg_window = 5, sg_order = 2, k = 0;
  auto* tsci_cmd = app.add_subcommand("tsci", "Tangent space causal inference in both directions");
  add_common(tsci_cmd, common);
  add_system(tsci_cmd, system);
  add_pair(tsci_cmd, pair);
  common.method = "knn";
  tsci_cmd->add_option("-m,--method", common.method, "Cross map")->check(CLI::IsMember({"knn", "kernel_ridge"}));
  tsci_cmd->add_option("--derivative", derivative, "Derivative estimator")
      ->check(CLI::IsMember({"forward", "central", "savgol"}));
  tsci_cmd->add_option("--sg-window", sg_window, "Savitzky-Golay window");
  tsci_cmd->add_option("--sg-order", sg_order, "Savitzky-Golay polynomial order");
  tsci_cmd->add_option("-k,--neighbors", k, "Neighbors for local Jacobians (0: 4 max(Q_x, Q_y))");

  std::string libraries;
  auto* ccm_cmd = app.add_subcommand("ccm", "Convergent cross mapping skill over library lengths");
  add_common(ccm_cmd, common);
  add_system(ccm_cmd, system);
  add_pair(ccm_cmd, pair);
  ccm_cmd->add_option("--trials", common.trials, "Library placements per length")->check(CLI::PositiveNumber);
  ccm_cmd->add_option("-L,--library-lengths", libraries, "Comma-separated library lengths (all rows by default)");

  std::size_t max_lag = 5;
  auto* granger_cmd = app.add_subcommand("granger", "Pairwise Granger F-tests");
  add_common(granger_cmd, common);
  add_system(granger_cmd, system);
  add_pair(granger_cmd, pair);
  granger_cmd->add_option("--max-lag", max_lag, "Autoregressive order")->check(CLI::PositiveNumber);

  std::size_t mi_k = 4;
  auto* mi_cmd = app.add_subcommand("mi", "KSG mutual information between pushed-forward and native tangent vectors");
  add_common(mi_cmd, common);
  add_system(mi_cmd, system);
  add_pair(mi_cmd, pair);
  mi_cmd->add_option("--k", mi_k, "KSG neighbors")->check(CLI::PositiveNumber);

  std::string config_path, kind, grid;
  std::vector<std::string> methods;
  std::optional<std::size_t> threads;
  std::optional<double> sweep_coupling;
  std::optional<std::size_t> sweep_samples;
  auto* sweep = app.add_subcommand("sweep", "Run an experiment grid and write percentile rows");
  add_common(sweep, common, false);
  sweep->add_option("-i,--input,--config", config_path, "Sweep configuration JSON")->check(CLI::ExistingFile);
  sweep->add_option("--kind", kind, "Sweep axis")
      ->check(CLI::IsMember({"coupling", "library_length", "snr", "sine_power", "embed_dim"}));
  sweep->add_option("--grid", grid, "Comma-separated grid values");
  auto* trials_opt = sweep->add_option("--trials", common.trials, "Trials per grid value")->check(CLI::PositiveNumber);
  sweep->add_option("-m,--method", methods, "Methods (tsci_knn, tsci_model, ccm, granger, mi)");
  sweep->add_option("--threads", threads, "Worker threads (0: all cores)");
  sweep->add_option("--coupling", sweep_coupling, "Coupling for sweeps that do not vary it");
  sweep->add_option("--n-samples", sweep_samples, "Samples per trajectory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (sim->parsed()) {
      const SeriesTable t = simulated_table(system, common.seed);
      if (parse_format(common.format) == Format::Csv) {
        emit(common, [&](std::ostream& out) { write_csv(out, t); });
      } else {
        json doc{{"dt", t.dt}, {"coupling", system.coupling}, {"seed", common.seed}};
        for (std::size_t i = 0; i < t.names.size(); ++i) doc[t.names[i]] = t.series[i].values();
        emit(common, [&](std::ostream& out) { out << doc.dump() << '\n'; });
      }
    } else if (embed->parsed()) {
      const SeriesTable t = load(common, system);
      if (columns.empty()) columns = t.names;
      Table out{{"series", "lag", "dim"}, {}};
      for (const auto& name : columns) {
        const EmbeddingParams p = choose_embedding(t.at(name), EmbeddingChoice{});
        out.rows.push_back({name, p.lag, p.dim});
      }
      emit_table(common, out);
    } else if (tsci_cmd->parsed()) {
      const auto [x, y] = pick(load(common, system), pair);
      PipelineConfig cfg;
      apply_embedding(pair, cfg);
      cfg.method = common.method == "knn" ? CrossMapMethod::Knn : CrossMapMethod::KernelRidge;
      cfg.derivative = {parse_derivative_method(derivative), sg_window, sg_order};
      cfg.k = k;
      const BidirectionalScore s = tsci_bidirectional(x, y, cfg);
      Table out{{"direction", "r", "n_used", "n_dropped", "lag_x", "dim_x", "lag_y", "dim_y"}, {}};
      for (const ScoreResult* r : {&s.x_to_y, &s.y_to_x}) {
        out.rows.push_back({r->direction_label, number(r->r), r->n_used, r->n_dropped, s.x_params.lag,
                            s.x_params.dim, s.y_params.lag, s.y_params.dim});
      }
      emit_table(common, out);
    } else if (ccm_cmd->parsed()) {
      const auto [x, y] = pick(load(common, system), pair);
      CcmConfig cfg;
      cfg.x_embedding = choose_embedding(x, {pair.lag_x, pair.dim_x});
      cfg.y_embedding = choose_embedding(y, {pair.lag_y, pair.dim_y});
      cfg.trials = common.trials;
      cfg.seed = common.seed;
      if (libraries.empty()) {
        const std::size_t span = std::max(cfg.x_embedding->span(), cfg.y_embedding->span());
        cfg.library_lengths = {x.size() - std::min(x.size(), span)};
      } else {
        for (double v : parse_list(libraries)) {
          if (v < 1 || v != std::floor(v)) throw UsageError("library lengths must be positive integers");
          cfg.library_lengths.push_back(static_cast<std::size_t>(v));
        }
      }
      Table out{{"library_length", "direction", "median", "p5", "p95", "trials"}, {}};
      for (const auto& row : ccm_convergence(x, y, cfg)) {
        out.rows.push_back({row.library_length, std::string(to_string(row.direction)), number(row.summary.median),
                            number(row.summary.p5), number(row.summary.p95), cfg.trials});
      }
      emit_table(common, out);
    } else if (granger_cmd->parsed()) {
      const auto [x, y] = pick(load(common, system), pair);
      const GrangerResult g = granger_f_test(x, y, max_lag);
      Table out{{"direction", "f_statistic", "p_value", "lag_order"}, {}};
      out.rows.push_back({"X->Y", number(g.f_statistics.first), number(g.p_xy), g.lag_order});
      out.rows.push_back({"Y->X", number(g.f_statistics.second), number(g.p_yx), g.lag_order});
      emit_table(common, out);
    } else if (mi_cmd->parsed()) {
      const auto [x, y] = pick(load(common, system), pair);
      PipelineConfig cfg;
      apply_embedding(pair, cfg);
      const AlignedPair aligned = prepare_pair(x, y, cfg);
      Table out{{"direction", "mi_nats", "k"}, {}};
      for (Direction d : {Direction::XToY, Direction::YToX}) {
        const auto [pushed, native] = pushforward_direction(aligned, d, cfg);
        out.rows.push_back({std::string(to_string(d)), number(mi_pushforward_score(native, pushed, mi_k)), mi_k});
      }
      emit_table(common, out);
    } else if (sweep->parsed()) {
      SweepSpec spec;
      if (!config_path.empty()) {
        std::ifstream in(config_path);
        json doc;
        try {
          doc = json::parse(in);
        } catch (const json::exception& e) {
          throw Error(ErrorCode::ParseError, config_path + ": " + e.what());
        }
        spec = sweep_spec_from_json(doc);
      }
      if (!kind.empty()) spec.kind = parse_sweep_kind(kind);
      if (!grid.empty()) spec.grid = parse_list(grid);
      if (*trials_opt) spec.trials = common.trials;
      if (!methods.empty()) {
        spec.methods.clear();
        for (const auto& m : methods) spec.methods.push_back(parse_method(m));
      }
      if (sweep->count("--seed")) spec.seed = common.seed;
      if (threads) spec.threads = *threads;
      if (sweep_coupling) spec.system.coupling = *sweep_coupling;
      if (sweep_samples) spec.system.n_samples = *sweep_samples;
      if (spec.grid.empty()) throw UsageError("sweep needs a grid (--grid or the config file)");
      const auto rows = run_sweep(spec);
      const Format f = parse_format(common.format);
      emit(common, [&](std::ostream& out) { f == Format::Csv ? write_rows_csv(out, rows) : write_rows_json(out, rows); });
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  }
  return 0;
}
