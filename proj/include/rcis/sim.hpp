#pragma once

#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "rcis/repetitive_control.hpp"
#include "rcis/timestamping.hpp"
#include "rcis/transfer_function.hpp"

namespace rcis {

inline constexpr double kDivergenceGuard = 1e12;

struct Harmonic {
  // Either a multiple of the fundamental 2*pi/period or an absolute frequency.
  std::optional<int> harmonic;      // index >= 1
  std::optional<double> omega;      // rad/sample
  double amplitude = 1.0;
  double phase = 0.0;
};

struct Disturbance {
  double period = 1.0;  // samples; may be non-integer
  std::vector<Harmonic> harmonics;
};

struct Scenario {
  TransferFunction plant;  // must be strictly proper
  Disturbance disturbance;
  std::variant<RcConfig, BasisRcConfig> controller;
  TimestampGenerator timestamps;
  std::int64_t horizon = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct FrequencyRatio {
  double omega = 0.0;
  double initial_amplitude = 0.0;
  double converged_amplitude = 0.0;
  double ratio = 0.0;
};

struct Metrics {
  double initial_rms = 0.0;
  double converged_rms = 0.0;
  double reduction_factor = 0.0;
  double max_abs_e = 0.0;
  std::vector<FrequencyRatio> per_frequency;
  bool diverged = false;
  std::int64_t diverged_at = -1;
};

struct SimResult {
  std::vector<double> e, ebar, u, y, v;
  TimestampSet psi;
  Metrics metrics;
  double period = 1.0;          // N_v carried over from the scenario
  double sample_time = 1.0;
  std::vector<double> harmonic_omegas;
};

std::vector<double> synthesize_disturbance(const Disturbance& d, std::int64_t horizon);

// Per sample: plant output from past inputs, e = y + v, ebar through the
// timestamping operator, controller update. Deterministic given the scenario.
SimResult run_closed_loop(const Scenario& scn);

// Windowed RMS over the trailing `window` samples (prefix-normalized).
std::vector<double> rms_moving_window(const std::vector<double>& e, std::int64_t window);

// Linear interpolation of stamped values onto the full grid, constant
// extrapolation outside the stamped range. Throws TooFewStamps below 2.
std::vector<double> interpolate_to_grid(const TimestampSet& psi,
                                        const std::vector<double>& values_at_stamps);

struct AmplitudeSpectrum {
  std::vector<double> omegas;      // rad/sample
  std::vector<double> amplitude;   // single-sided
  std::vector<double> cumulative;
};

AmplitudeSpectrum cumulative_amplitude_spectrum(const std::vector<double>& e);

// Windowed before/after comparison: first and last period-length windows.
Metrics reduction_metrics(const SimResult& result, std::int64_t settle_periods);

double window_rms(const std::vector<double>& x, std::size_t begin, std::size_t end);

// Single-bin amplitude of x[begin..end) at frequency omega.
double goertzel_amplitude(const std::vector<double>& x, std::size_t begin, std::size_t end,
                          double omega);

}  // namespace rcis
