#pragma once

#include <cstdint>
#include <vector>

#include "rcis/lti.hpp"
#include "rcis/transfer_function.hpp"

namespace rcis {

// Classic buffer RC: R = alpha L Q z^{-N} / (1 - Q z^{-N}), previews of L and
// Q absorbed into the buffer delay (requires N > n_L + n_Q).
struct RcConfig {
  std::int64_t buffer_length = 1;  // N
  TransferFunction learning;       // L, preview n_L
  TransferFunction robustness;     // Q, preview n_Q
  double alpha = 1.0;

  void validate() const;  // throws PreviewExceedsBuffer / InvalidParameters
};

TransferFunction rc_transfer(const RcConfig& cfg);

// Causal online realization: one shared delay line on the internal-model input
// with a shortened tap for the preview of L, plus the L/Q filter states.
class RcState {
 public:
  RcState() = default;
  explicit RcState(const RcConfig& cfg);

  std::size_t buffer_size() const { return ring_.size(); }

 private:
  friend double rc_step(RcState& state, const RcConfig& cfg, double ebar_k);

  std::vector<double> ring_;       // internal-model memory
  std::size_t head_ = 0;
  std::vector<double> l_delay_;    // aligns loop tap with the L-path tap
  std::size_t l_head_ = 0;
  StreamingFilter q_filter_;
  StreamingFilter l_filter_;
};

// Advances one sample; consumes the intermittent error, returns u(k).
// Input-output identical to simulate(rc_transfer(cfg), .) from zero state.
double rc_step(RcState& state, const RcConfig& cfg, double ebar_k);

// Simplified stand-in for basis-function RC: parallel second-order resonant
// internal models 1 - 2 cos(w_i) q + q^2 with per-frequency gains.
struct BasisRcConfig {
  std::vector<double> frequencies;  // rad/sample, in (0, pi), distinct
  std::vector<double> gains;

  void validate() const;  // throws DuplicateFrequency / InvalidParameters
};

TransferFunction basis_rc_transfer(const BasisRcConfig& cfg);

}  // namespace rcis
