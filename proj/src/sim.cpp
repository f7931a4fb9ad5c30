#include "rcis/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>

#include "rcis/errors.hpp"

namespace rcis {

namespace {

double harmonic_omega(const Harmonic& h, double period) {
  if (h.harmonic.has_value() == h.omega.has_value()) {
    throw InvalidParameters("harmonic needs exactly one of index or absolute frequency");
  }
  if (h.harmonic.has_value()) {
    if (*h.harmonic < 1) throw InvalidParameters("harmonic index must be >= 1");
    return 2.0 * M_PI * static_cast<double>(*h.harmonic) / period;
  }
  return *h.omega;
}

}  // namespace

void Scenario::validate() const {
  if (horizon < 1) throw InvalidParameters("horizon must be >= 1");
  if (!(disturbance.period > 0.0)) throw InvalidParameters("disturbance period must be positive");
  if (static_cast<double>(horizon) < 10.0 * disturbance.period) {
    throw InvalidParameters("horizon must cover at least 10 disturbance periods");
  }
  for (const Harmonic& h : disturbance.harmonics) {
    if (!std::isfinite(h.amplitude) || !std::isfinite(h.phase)) {
      throw InvalidParameters("harmonic amplitude and phase must be finite");
    }
    const double w = harmonic_omega(h, disturbance.period);
    if (!(w > 0.0) || w > M_PI + 1e-12) {
      throw InvalidParameters("harmonic frequency must lie in (0, pi]");
    }
  }
  if (std::holds_alternative<RcConfig>(controller)) {
    std::get<RcConfig>(controller).validate();
  } else {
    std::get<BasisRcConfig>(controller).validate();
  }
}

std::vector<double> synthesize_disturbance(const Disturbance& d, std::int64_t horizon) {
  std::vector<double> v(static_cast<std::size_t>(horizon), 0.0);
  for (const Harmonic& h : d.harmonics) {
    const double w = harmonic_omega(h, d.period);
    for (std::int64_t k = 0; k < horizon; ++k) {
      v[static_cast<std::size_t>(k)] +=
          h.amplitude * std::sin(w * static_cast<double>(k) + h.phase);
    }
  }
  return v;
}

double window_rms(const std::vector<double>& x, std::size_t begin, std::size_t end) {
  if (end <= begin || end > x.size()) throw InvalidParameters("bad RMS window");
  double acc = 0.0;
  for (std::size_t i = begin; i < end; ++i) acc += x[i] * x[i];
  return std::sqrt(acc / static_cast<double>(end - begin));
}

double goertzel_amplitude(const std::vector<double>& x, std::size_t begin, std::size_t end,
                          double omega) {
  if (end <= begin || end > x.size()) throw InvalidParameters("bad spectrum window");
  Complex acc(0.0, 0.0);
  for (std::size_t n = begin; n < end; ++n) {
    acc += x[n] * std::polar(1.0, -omega * static_cast<double>(n));
  }
  const double len = static_cast<double>(end - begin);
  const bool edge = omega < 1e-12 || std::abs(omega - M_PI) < 1e-12;
  return (edge ? 1.0 : 2.0) * std::abs(acc) / len;
}

namespace {

Metrics compute_metrics(const SimResult& result) {
  Metrics m;
  m.diverged = result.metrics.diverged;
  m.diverged_at = result.metrics.diverged_at;
  const std::size_t horizon = result.e.size();
  for (double e : result.e) {
    if (std::isfinite(e)) m.max_abs_e = std::max(m.max_abs_e, std::abs(e));
  }
  if (horizon == 0) return m;
  std::size_t window = static_cast<std::size_t>(
      std::max<std::int64_t>(1, std::llround(result.period)));
  window = std::min(window, horizon);
  m.initial_rms = window_rms(result.e, 0, window);
  m.converged_rms = window_rms(result.e, horizon - window, horizon);
  m.reduction_factor = m.converged_rms > 0.0
                           ? m.initial_rms / m.converged_rms
                           : std::numeric_limits<double>::infinity();
  for (double w : result.harmonic_omegas) {
    FrequencyRatio fr;
    fr.omega = w;
    fr.initial_amplitude = goertzel_amplitude(result.e, 0, window, w);
    fr.converged_amplitude = goertzel_amplitude(result.e, horizon - window, horizon, w);
    fr.ratio = fr.converged_amplitude > 0.0
                   ? fr.initial_amplitude / fr.converged_amplitude
                   : std::numeric_limits<double>::infinity();
    m.per_frequency.push_back(fr);
  }
  return m;
}

}  // namespace

SimResult run_closed_loop(const Scenario& scn) {
  scn.validate();
  if (!scn.plant.is_strictly_proper()) {
    throw IllPosedLoop("plant must be strictly proper to break the algebraic loop");
  }

  SimResult result;
  result.period = scn.disturbance.period;
  result.sample_time = scn.plant.sample_time;
  for (const Harmonic& h : scn.disturbance.harmonics) {
    result.harmonic_omegas.push_back(harmonic_omega(h, scn.disturbance.period));
  }

  const std::size_t horizon = static_cast<std::size_t>(scn.horizon);
  result.v = synthesize_disturbance(scn.disturbance, scn.horizon);
  result.psi = generate(scn.timestamps, scn.horizon, scn.seed);
  result.e.resize(horizon);
  result.ebar.resize(horizon);
  result.u.resize(horizon);
  result.y.resize(horizon);

  StreamingFilter plant(scn.plant);

  const bool classic = std::holds_alternative<RcConfig>(scn.controller);
  RcState rc_state;
  StreamingFilter basis_filter;
  const RcConfig* rc_cfg = nullptr;
  if (classic) {
    rc_cfg = &std::get<RcConfig>(scn.controller);
    rc_state = RcState(*rc_cfg);
  } else {
    basis_filter = StreamingFilter(basis_rc_transfer(std::get<BasisRcConfig>(scn.controller)));
  }

  const std::vector<std::uint8_t> sampled = result.psi.mask();
  result.metrics.diverged = false;
  result.metrics.diverged_at = -1;

  for (std::size_t k = 0; k < horizon; ++k) {
    const double y = plant.pending_output();  // strictly proper: past inputs only
    const double e = y + result.v[k];
    const double ebar = sampled[k] ? e : 0.0;
    // The controller acts in negative feedback: u = -R(ebar), which closes the
    // loop to e = (1 + J R)^{-1} v under full sampling.
    const double u = -(classic ? rc_step(rc_state, *rc_cfg, ebar) : basis_filter.step(ebar));
    plant.step(u);

    result.y[k] = y;
    result.e[k] = e;
    result.ebar[k] = ebar;
    result.u[k] = u;

    if (!result.metrics.diverged && (!std::isfinite(e) || std::abs(e) > kDivergenceGuard)) {
      result.metrics.diverged = true;
      result.metrics.diverged_at = static_cast<std::int64_t>(k);
    }
  }

  result.metrics = compute_metrics(result);
  return result;
}

std::vector<double> rms_moving_window(const std::vector<double>& e, std::int64_t window) {
  if (window < 1) throw InvalidParameters("window must be >= 1");
  std::vector<double> out(e.size(), 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < e.size(); ++k) {
    acc += e[k] * e[k];
    if (k >= static_cast<std::size_t>(window)) {
      acc -= e[k - static_cast<std::size_t>(window)] * e[k - static_cast<std::size_t>(window)];
    }
    const double count = static_cast<double>(
        std::min<std::size_t>(k + 1, static_cast<std::size_t>(window)));
    out[k] = std::sqrt(std::max(0.0, acc) / count);
  }
  return out;
}

std::vector<double> interpolate_to_grid(const TimestampSet& psi,
                                        const std::vector<double>& values_at_stamps) {
  if (psi.stamps.size() != values_at_stamps.size()) {
    throw LengthMismatch("one value per timestamp required");
  }
  if (psi.stamps.size() < 2) throw TooFewStamps("interpolation needs at least 2 stamps");

  std::vector<double> out(static_cast<std::size_t>(psi.horizon), 0.0);
  std::size_t seg = 0;
  for (std::int64_t k = 0; k < psi.horizon; ++k) {
    if (k <= psi.stamps.front()) {
      out[static_cast<std::size_t>(k)] = values_at_stamps.front();
      continue;
    }
    if (k >= psi.stamps.back()) {
      out[static_cast<std::size_t>(k)] = values_at_stamps.back();
      continue;
    }
    while (psi.stamps[seg + 1] < k) ++seg;
    const double k0 = static_cast<double>(psi.stamps[seg]);
    const double k1 = static_cast<double>(psi.stamps[seg + 1]);
    const double t = (static_cast<double>(k) - k0) / (k1 - k0);
    out[static_cast<std::size_t>(k)] =
        (1.0 - t) * values_at_stamps[seg] + t * values_at_stamps[seg + 1];
  }
  return out;
}

namespace {

// Iterative radix-2 FFT, in place; size must be a power of two.
void fft_pow2(std::vector<Complex>& a, bool inverse) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const Complex wl = std::polar(1.0, ang);
    for (std::size_t i = 0; i < n; i += len) {
      Complex w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse) {
    for (Complex& x : a) x /= static_cast<double>(n);
  }
}

// Bluestein chirp transform: exact K-point DFT for arbitrary K.
std::vector<Complex> dft_bluestein(const std::vector<double>& x) {
  const std::size_t n = x.size();
  std::size_t m = 1;
  while (m < 2 * n - 1) m <<= 1;

  // Chirp phases evaluated with the quadratic index reduced mod 2n.
  std::vector<Complex> chirp(n);
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t q = (k * k) % (2 * n);
    chirp[k] = std::polar(1.0, -M_PI * static_cast<double>(q) / static_cast<double>(n));
  }

  std::vector<Complex> a(m, Complex(0.0, 0.0));
  std::vector<Complex> b(m, Complex(0.0, 0.0));
  for (std::size_t k = 0; k < n; ++k) a[k] = x[k] * chirp[k];
  b[0] = std::conj(chirp[0]);
  for (std::size_t k = 1; k < n; ++k) {
    b[k] = std::conj(chirp[k]);
    b[m - k] = b[k];
  }
  fft_pow2(a, false);
  fft_pow2(b, false);
  for (std::size_t k = 0; k < m; ++k) a[k] *= b[k];
  fft_pow2(a, true);

  std::vector<Complex> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a[k] * chirp[k];
  return out;
}

}  // namespace

AmplitudeSpectrum cumulative_amplitude_spectrum(const std::vector<double>& e) {
  if (e.size() < 2) throw InvalidParameters("spectrum needs at least 2 samples");
  const std::size_t n = e.size();
  const std::size_t bins = n / 2 + 1;
  const std::vector<Complex> dft = dft_bluestein(e);
  AmplitudeSpectrum s;
  s.omegas.resize(bins);
  s.amplitude.resize(bins);
  s.cumulative.resize(bins);
  double running = 0.0;
  for (std::size_t k = 0; k < bins; ++k) {
    const bool edge = (k == 0) || (n % 2 == 0 && k == bins - 1);
    const double amp = (edge ? 1.0 : 2.0) * std::abs(dft[k]) / static_cast<double>(n);
    s.omegas[k] = 2.0 * M_PI * static_cast<double>(k) / static_cast<double>(n);
    s.amplitude[k] = amp;
    running += amp;
    s.cumulative[k] = running;
  }
  return s;
}

Metrics reduction_metrics(const SimResult& result, std::int64_t settle_periods) {
  if (settle_periods < 0) throw InvalidParameters("settle_periods must be >= 0");
  const std::int64_t window = std::max<std::int64_t>(1, std::llround(result.period));
  if (static_cast<std::int64_t>(result.e.size()) < (settle_periods + 1) * window) {
    throw HorizonTooShort("horizon must cover the settle periods plus a measurement window");
  }
  return compute_metrics(result);
}

}  // namespace rcis
