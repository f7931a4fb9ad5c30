#pragma once

#include <vector>

#include "rcis/transfer_function.hpp"

namespace rcis {

inline constexpr double kPoleTolerance = 1e-9;

// G(e^{j w}) = num(e^{-jw})/den(e^{-jw}) * e^{+jw*preview} on the given grid.
// Throws DenominatorZeroOnGrid when |den(e^{-jw})| < 1e-12 at a grid point.
FrfData freq_response(const TransferFunction& tf, const std::vector<double>& omegas);

Complex freq_response_at(const TransferFunction& tf, double omega);

// Uniform grid of n points on [0, pi] (endpoints included).
std::vector<double> make_frequency_grid(std::size_t n);

// Zero-initial-state difference equation; output length equals input length.
// Preview consumes future samples; samples beyond the record are zero.
std::vector<double> simulate(const TransferFunction& tf, const std::vector<double>& input);

PoleSet poles(const TransferFunction& tf);

// max |pole| < 1 - kPoleTolerance.
bool is_internally_stable(const TransferFunction& tf);

// Stable approximate inverse with zero-phase error: minimum-phase dynamics are
// inverted exactly, non-minimum-phase numerator factors are replaced by their
// conjugate reciprocal and scaled by the squared DC gain of that factor.
TransferFunction zpetc_inverse(const TransferFunction& tf);

// Symmetric Hann-windowed-sinc FIR q_{-m..m} realized with preview m;
// response is real everywhere and exactly 1 at DC.
TransferFunction zero_phase_fir_lowpass(double cutoff, int half_order, double ts = 1.0);

// Streaming direct-form-II-transposed realization of the causal part of a
// transfer function (preview must be 0).
class StreamingFilter {
 public:
  StreamingFilter() = default;
  explicit StreamingFilter(const TransferFunction& tf);

  double step(double u);
  void reset();

  // Output contribution of past inputs only (the state top); equals the next
  // output when num[0] == 0.
  double pending_output() const;

  const std::vector<double>& state() const { return state_; }

 private:
  Poly num_{0.0};
  Poly den_{1.0};
  std::vector<double> state_;
};

}  // namespace rcis
