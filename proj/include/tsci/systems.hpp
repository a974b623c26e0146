#pragma once

#include "tsci/time_series.hpp"

#include <array>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace tsci {

/// z1..z3: time-scaled Roessler driver, z4..z6: Lorenz response.
using SystemState = std::array<double, 6>;

/// Unidirectionally coupled Roessler-Lorenz vector field; the coupling enters
/// the Lorenz block as C * z2^2.
SystemState rossler_lorenz_rhs(const SystemState& z, double coupling);

/// One classical fourth-order Runge-Kutta step of dz/dt = f(z).
template <class State, class Rhs>
State rk4_step(const State& z, double dt, Rhs&& f) {
  auto axpy = [](const State& base, const State& d, double h) {
    State out = base;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += h * d[i];
    return out;
  };
  const State k1 = f(z);
  const State k2 = f(axpy(z, k1, dt / 2));
  const State k3 = f(axpy(z, k2, dt / 2));
  const State k4 = f(axpy(z, k3, dt));
  State out = z;
  for (std::size_t i = 0; i < out.size(); ++i) out[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return out;
}

struct SimulationConfig {
  double coupling = 0.0;
  double dt_integrate = 0.001;
  double dt_sample = 0.05;
  std::size_t n_samples = 10000;
  double transient_time = 50.0;
  std::optional<SystemState> initial_state;  // drawn from `seed` when absent
  std::uint64_t seed = 0;
};

/// Initial condition drawn near both attractors.
SystemState random_initial_state(std::uint64_t seed);

inline constexpr double kDivergenceBound = 1e6;

/// Six series z1..z6 sampled every dt_sample after the transient.
std::vector<TimeSeries> rk4_integrate(const SimulationConfig& cfg);

inline const std::array<std::string, 6> kStateNames = {"z1", "z2", "z3", "z4", "z5", "z6"};

/// Index of a state name "z1".."z6".
std::size_t state_index(const std::string& name);

inline constexpr double kNoCorruption = std::numeric_limits<double>::infinity();

/// Adds Gaussian noise with variance var(series) / 10^(snr_db / 10).
/// snr_db = +inf returns the input unchanged.
TimeSeries corrupt_additive_noise(const TimeSeries& series, double snr_db, std::uint64_t seed);

/// Adds A sin(2 pi t / period), t = i * dt, with A^2 / 2 = var(series) * 10^(db / 10).
/// relative_power_db = -inf returns the input unchanged.
TimeSeries corrupt_sine(const TimeSeries& series, double relative_power_db, double period);

}  // namespace tsci
