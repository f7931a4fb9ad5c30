#include "rcis/lti.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rcis/errors.hpp"

namespace rcis {

std::vector<double> make_frequency_grid(std::size_t n) {
  if (n < 2) throw InvalidParameters("frequency grid needs at least 2 points");
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = M_PI * static_cast<double>(i) / static_cast<double>(n - 1);
  }
  w.back() = M_PI;
  return w;
}

Complex freq_response_at(const TransferFunction& tf, double omega) {
  const Complex q = std::polar(1.0, -omega);
  const Complex d = poly_eval(tf.den, q);
  if (std::abs(d) < 1e-12) {
    throw DenominatorZeroOnGrid("pole on the unit circle at omega = " + std::to_string(omega));
  }
  Complex value = poly_eval(tf.num, q) / d;
  if (tf.preview != 0) value *= std::polar(1.0, omega * static_cast<double>(tf.preview));
  return value;
}

FrfData freq_response(const TransferFunction& tf, const std::vector<double>& omegas) {
  std::vector<Complex> values(omegas.size());
  for (std::size_t i = 0; i < omegas.size(); ++i) {
    if (omegas[i] < -1e-12 || omegas[i] > M_PI + 1e-9) {
      throw InvalidParameters("frequency grid must lie in [0, pi]");
    }
    values[i] = freq_response_at(tf, omegas[i]);
  }
  return FrfData(omegas, std::move(values), FrfSource::kModelDerived);
}

std::vector<double> simulate(const TransferFunction& tf, const std::vector<double>& input) {
  const std::int64_t n = static_cast<std::int64_t>(input.size());
  const std::int64_t p = tf.preview;
  std::vector<double> out(input.size(), 0.0);
  for (std::int64_t k = 0; k < n; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i < tf.num.size(); ++i) {
      const std::int64_t idx = k - static_cast<std::int64_t>(i) + p;
      if (idx >= 0 && idx < n) acc += tf.num[i] * input[static_cast<std::size_t>(idx)];
    }
    for (std::size_t i = 1; i < tf.den.size(); ++i) {
      const std::int64_t idx = k - static_cast<std::int64_t>(i);
      if (idx >= 0) acc -= tf.den[i] * out[static_cast<std::size_t>(idx)];
    }
    out[static_cast<std::size_t>(k)] = acc;  // den[0] == 1 after normalization
  }
  return out;
}

PoleSet poles(const TransferFunction& tf) {
  return PoleSet{delay_poly_roots_z(tf.den)};
}

bool is_internally_stable(const TransferFunction& tf) {
  for (const Complex& p : poles(tf).poles) {
    if (std::abs(p) >= 1.0 - kPoleTolerance) return false;
  }
  return true;
}

TransferFunction zpetc_inverse(const TransferFunction& tf) {
  if (!is_internally_stable(tf)) {
    throw UnstablePlant("zpetc_inverse requires an internally stable plant");
  }

  // Split the numerator into pure delay and the delay-free factor B.
  std::size_t d = 0;
  while (d < tf.num.size() && tf.num[d] == 0.0) ++d;
  if (d == tf.num.size()) throw InvalidParameters("cannot invert the zero system");
  Poly b(tf.num.begin() + static_cast<std::ptrdiff_t>(d), tf.num.end());
  b = trim_poly(b, 0.0);

  std::vector<Complex> plus_roots;   // |q| > 1: zeros inside the unit disk
  std::vector<Complex> minus_roots;  // |q| < 1: non-minimum-phase zeros
  for (const Complex& r : poly_roots(b)) {
    const double mag = std::abs(r);
    if (std::abs(mag - 1.0) < 1e-7) {
      throw ZeroOnUnitCircle("plant zero on the unit circle");
    }
    (mag > 1.0 ? plus_roots : minus_roots).push_back(r);
  }

  Poly b_plus = poly_from_roots(plus_roots);
  for (double& c : b_plus) c *= b.back();  // leading coefficient carried by B+
  Poly b_minus = poly_from_roots(minus_roots);

  // Conjugate-reciprocal of B-: reversed coefficients; unity-gain scaling by
  // the squared DC gain of B-.
  Poly b_minus_rev(b_minus.rbegin(), b_minus.rend());
  const double dc = poly_eval_real(b_minus, 1.0);

  Poly num = poly_mul(tf.den, b_minus_rev);
  Poly den = b_plus;
  for (double& c : den) c *= dc * dc;

  int preview = static_cast<int>(d) + static_cast<int>(b_minus.size()) - 1 - tf.preview;
  if (preview < 0) {
    num = poly_shift(num, -preview);
    preview = 0;
  }
  return TransferFunction(std::move(num), std::move(den), preview, tf.sample_time);
}

TransferFunction zero_phase_fir_lowpass(double cutoff, int half_order, double ts) {
  if (!(cutoff > 0.0) || cutoff > M_PI + 1e-12) {
    throw InvalidParameters("cutoff must lie in (0, pi]");
  }
  if (half_order < 0) throw InvalidParameters("half_order must be non-negative");
  const int m = half_order;
  Poly taps(static_cast<std::size_t>(2 * m + 1), 0.0);
  for (int n = -m; n <= m; ++n) {
    const double ideal = (n == 0) ? cutoff / M_PI
                                  : std::sin(cutoff * n) / (M_PI * n);
    const double hann = 0.5 + 0.5 * std::cos(M_PI * n / static_cast<double>(m + 1));
    taps[static_cast<std::size_t>(n + m)] = ideal * hann;
  }
  double sum = 0.0;
  for (double t : taps) sum += t;
  for (double& t : taps) t /= sum;
  // Force exact symmetry against rounding in the window evaluation.
  for (int n = 1; n <= m; ++n) {
    const double avg = 0.5 * (taps[static_cast<std::size_t>(m + n)] +
                              taps[static_cast<std::size_t>(m - n)]);
    taps[static_cast<std::size_t>(m + n)] = avg;
    taps[static_cast<std::size_t>(m - n)] = avg;
  }
  return TransferFunction(std::move(taps), Poly{1.0}, m, ts);
}

StreamingFilter::StreamingFilter(const TransferFunction& tf) : num_(tf.num), den_(tf.den) {
  if (tf.preview != 0) {
    throw InvalidParameters("StreamingFilter requires a causal transfer function");
  }
  const std::size_t order = std::max(num_.size(), den_.size());
  num_.resize(order, 0.0);
  den_.resize(order, 0.0);
  state_.assign(order > 1 ? order - 1 : 0, 0.0);
}

double StreamingFilter::step(double u) {
  const double y = num_[0] * u + (state_.empty() ? 0.0 : state_[0]);
  for (std::size_t i = 0; i + 1 < state_.size(); ++i) {
    state_[i] = state_[i + 1] + num_[i + 1] * u - den_[i + 1] * y;
  }
  if (!state_.empty()) {
    const std::size_t last = state_.size() - 1;
    state_[last] = num_[last + 1] * u - den_[last + 1] * y;
  }
  return y;
}

void StreamingFilter::reset() {
  std::fill(state_.begin(), state_.end(), 0.0);
}

double StreamingFilter::pending_output() const {
  return state_.empty() ? 0.0 : state_[0];
}

}  // namespace rcis
