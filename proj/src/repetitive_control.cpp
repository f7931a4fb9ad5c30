#include "rcis/repetitive_control.hpp"

#include <cmath>
#include <cstddef>

#include "rcis/errors.hpp"

namespace rcis {

void RcConfig::validate() const {
  if (buffer_length < 1) throw InvalidParameters("buffer length must be >= 1");
  if (alpha < 0.0 || alpha > 1.0) throw InvalidParameters("alpha must be in [0, 1]");
  if (buffer_length <= learning.preview + robustness.preview) {
    throw PreviewExceedsBuffer("buffer length must exceed the combined L/Q preview");
  }
}

TransferFunction rc_transfer(const RcConfig& cfg) {
  cfg.validate();
  const int n_l = cfg.learning.preview;
  const int n_q = cfg.robustness.preview;
  const std::int64_t N = cfg.buffer_length;

  // R = alpha L Q q^N / (1 - Q q^N) with the previews folded into the buffer:
  // numerator path delayed N - n_L - n_Q steps, loop path N - n_Q steps.
  Poly num = poly_mul(cfg.learning.num, cfg.robustness.num);
  for (double& c : num) c *= cfg.alpha;
  num = poly_shift(num, static_cast<int>(N) - n_l - n_q);

  Poly loop = poly_add(cfg.robustness.den,
                       poly_shift(cfg.robustness.num, static_cast<int>(N) - n_q), -1.0);
  Poly den = poly_mul(cfg.learning.den, loop);

  bool zero = true;
  for (double c : num) {
    if (c != 0.0) zero = false;
  }
  if (zero) return TransferFunction::constant(0.0, cfg.learning.sample_time);
  return TransferFunction(std::move(num), std::move(den), 0, cfg.learning.sample_time);
}

RcState::RcState(const RcConfig& cfg) {
  cfg.validate();
  const std::size_t tap = static_cast<std::size_t>(
      cfg.buffer_length - cfg.learning.preview - cfg.robustness.preview);
  ring_.assign(tap, 0.0);
  l_delay_.assign(static_cast<std::size_t>(cfg.learning.preview), 0.0);
  q_filter_ = StreamingFilter(
      TransferFunction(cfg.robustness.num, cfg.robustness.den, 0, cfg.robustness.sample_time));
  l_filter_ = StreamingFilter(
      TransferFunction(cfg.learning.num, cfg.learning.den, 0, cfg.learning.sample_time));
}

double rc_step(RcState& state, const RcConfig& cfg, double ebar_k) {
  if (state.ring_.empty()) throw InvalidParameters("RcState not initialized from a config");
  // Oldest ring entry is the internal-model input from N - n_L - n_Q steps ago.
  const double tapped = state.ring_[state.head_];

  const double sl = state.q_filter_.step(tapped);
  double s = sl;
  if (!state.l_delay_.empty()) {
    s = state.l_delay_[state.l_head_];
    state.l_delay_[state.l_head_] = sl;
    state.l_head_ = (state.l_head_ + 1) % state.l_delay_.size();
  }

  const double u = cfg.alpha * state.l_filter_.step(sl);

  state.ring_[state.head_] = ebar_k + s;
  state.head_ = (state.head_ + 1) % state.ring_.size();
  return u;
}

void BasisRcConfig::validate() const {
  if (frequencies.size() != gains.size()) {
    throw InvalidParameters("frequencies and gains must have equal length");
  }
  for (std::size_t i = 0; i < frequencies.size(); ++i) {
    const double w = frequencies[i];
    if (!(w > 0.0) || !(w < M_PI)) {
      throw InvalidParameters("basis frequencies must lie in (0, pi)");
    }
    for (std::size_t j = i + 1; j < frequencies.size(); ++j) {
      if (std::abs(frequencies[j] - w) < 1e-12) {
        throw DuplicateFrequency("repeated basis frequency");
      }
    }
  }
}

TransferFunction basis_rc_transfer(const BasisRcConfig& cfg) {
  cfg.validate();
  TransferFunction r = TransferFunction::constant(0.0);
  for (std::size_t i = 0; i < cfg.frequencies.size(); ++i) {
    const double c = std::cos(cfg.frequencies[i]);
    // Proportional-resonant section: poles exactly at e^{+-j w_i}.
    TransferFunction section(Poly{cfg.gains[i], -cfg.gains[i] * c},
                             Poly{1.0, -2.0 * c, 1.0});
    r = tf_add(r, section);
  }
  return r;
}

}  // namespace rcis
