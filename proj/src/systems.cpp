#include "tsci/systems.hpp"

#include "tsci/error.hpp"

#include <cmath>
#include <random>

namespace tsci {

SystemState rossler_lorenz_rhs(const SystemState& z, double coupling) {
  return {
      -6.0 * (z[1] + z[2]),
      6.0 * (z[0] + 0.2 * z[1]),
      6.0 * (0.2 + z[2] * (z[0] - 5.7)),
      10.0 * (z[4] - z[3]),
      28.0 * z[3] - z[4] - z[3] * z[5] + coupling * z[1] * z[1],
      z[3] * z[4] - 8.0 * z[5] / 3.0,
  };
}

SystemState random_initial_state(std::uint64_t seed) {
  std::mt19937_64 rng(mix_seed(seed, 0x5eed));
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  return {5.0 * u(rng), 5.0 * u(rng), 0.5 + 0.5 * u(rng), 10.0 * u(rng), 10.0 * u(rng), 25.0 + 5.0 * u(rng)};
}

std::vector<TimeSeries> rk4_integrate(const SimulationConfig& cfg) {
  if (!(cfg.dt_integrate > 0.0) || !(cfg.dt_sample > 0.0) || cfg.transient_time < 0.0 || cfg.coupling < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "invalid simulation configuration");
  }
  const double ratio = cfg.dt_sample / cfg.dt_integrate;
  const auto stride = static_cast<std::size_t>(std::llround(ratio));
  if (stride < 1 || std::abs(ratio - static_cast<double>(stride)) > 1e-9 * ratio) {
    throw Error(ErrorCode::InvalidArgument, "dt_sample must be an integer multiple of dt_integrate");
  }
  if (cfg.n_samples < 1) throw Error(ErrorCode::InvalidArgument, "n_samples must be positive");

  SystemState z = cfg.initial_state ? *cfg.initial_state : random_initial_state(cfg.seed);
  const double c = cfg.coupling;
  auto rhs = [c](const SystemState& s) { return rossler_lorenz_rhs(s, c); };
  auto check = [](const SystemState& s, std::size_t step) {
    for (double v : s) {
      if (!std::isfinite(v) || std::abs(v) > kDivergenceBound) {
        throw Error(ErrorCode::Divergence, "trajectory left the bounded region at step " + std::to_string(step));
      }
    }
  };

  const auto transient_steps = static_cast<std::size_t>(std::llround(cfg.transient_time / cfg.dt_integrate));
  std::size_t step = 0;
  for (; step < transient_steps; ++step) {
    z = rk4_step(z, cfg.dt_integrate, rhs);
    check(z, step);
  }

  std::array<std::vector<double>, 6> out;
  for (auto& v : out) v.reserve(cfg.n_samples);
  for (std::size_t i = 0; i < cfg.n_samples; ++i) {
    if (i > 0) {
      for (std::size_t s = 0; s < stride; ++s, ++step) {
        z = rk4_step(z, cfg.dt_integrate, rhs);
        check(z, step);
      }
    }
    for (std::size_t d = 0; d < 6; ++d) out[d].push_back(z[d]);
  }
  std::vector<TimeSeries> series;
  series.reserve(6);
  for (auto& v : out) series.emplace_back(std::move(v), cfg.dt_sample);
  return series;
}

std::size_t state_index(const std::string& name) {
  for (std::size_t i = 0; i < kStateNames.size(); ++i) {
    if (kStateNames[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown state variable '" + name + "'");
}

TimeSeries corrupt_additive_noise(const TimeSeries& series, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0.0) return series;
  const double power = series.variance();
  if (!(power > 0.0)) throw Error(ErrorCode::ZeroVariance, "cannot set an SNR on a constant series");
  const double sigma = std::sqrt(power / std::pow(10.0, snr_db / 10.0));
  std::mt19937_64 rng(mix_seed(seed, 0x4015e));
  std::normal_distribution<double> noise(0.0, sigma);
  std::vector<double> v(series.values().begin(), series.values().end());
  for (double& x : v) x += noise(rng);
  return {std::move(v), series.dt()};
}

TimeSeries corrupt_sine(const TimeSeries& series, double relative_power_db, double period) {
  if (!(period > 0.0)) throw Error(ErrorCode::InvalidArgument, "sine period must be positive");
  const double power = series.variance();
  if (!(power > 0.0)) throw Error(ErrorCode::ZeroVariance, "cannot scale a sine against a constant series");
  if (std::isinf(relative_power_db) && relative_power_db < 0.0) return series;
  const double amplitude = std::sqrt(2.0 * power * std::pow(10.0, relative_power_db / 10.0));
  constexpr double two_pi = 6.283185307179586;
  std::vector<double> v(series.values().begin(), series.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) {
    v[i] += amplitude * std::sin(two_pi * static_cast<double>(i) * series.dt() / period);
  }
  return {std::move(v), series.dt()};
}

}  // namespace tsci
