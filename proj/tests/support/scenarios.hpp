#pragma once

// Named scenarios shared between the unit tests and the acceptance suite.

#include <cmath>

#include "rcis/design.hpp"
#include "rcis/lti.hpp"
#include "rcis/sim.hpp"

namespace scenario {

// Second-order stable minimum-phase plant.
inline rcis::TransferFunction nominal_plant() {
  return rcis::TransferFunction(rcis::Poly{0.0, 0.5, 0.1},
                                rcis::poly_mul(rcis::Poly{1.0, -0.6}, rcis::Poly{1.0, -0.2}));
}

// The nominal plant with an unmodelled high-frequency branch
// 1 + 0.8 (1 - q)^2 / (1 - 0.5 q): negligible at the disturbance harmonics,
// tens of degrees of phase error around the Q transition band.
inline rcis::TransferFunction true_plant_with_lag() {
  const rcis::TransferFunction branch(
      rcis::poly_add(rcis::Poly{1.0, -0.5}, rcis::poly_mul({0.8}, {1.0, -2.0, 1.0})),
      rcis::Poly{1.0, -0.5});
  return rcis::tf_mul(nominal_plant(), branch);
}

inline std::vector<double> midpoint_grid(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  }
  return w;
}

// Design problem where alpha = 1 violates the passivity condition on the
// measured response but a reduced alpha satisfies it. The short positive-tap
// Q keeps |Q| <= 1 everywhere with a gentle roll-off over the mismatch band.
inline rcis::DesignSpec phase_loss_spec() {
  rcis::DesignSpec spec;
  spec.plant = nominal_plant();
  spec.measured_frf = rcis::freq_response(true_plant_with_lag(), midpoint_grid(16384));
  spec.buffer_length = 300;
  spec.q_cutoff = 0.35 * M_PI;
  spec.q_half_order = 1;
  spec.alpha_schedule.factor = 0.9;
  spec.alpha_schedule.max_iters = 40;
  spec.grid_size = 16384;
  return spec;
}

// Strongly non-minimum-phase plant (triple zero just outside the unit circle)
// whose reflected inverse gain exceeds any windowed-sinc stop-band floor.
inline rcis::TransferFunction infeasible_plant() {
  const rcis::Poly triple =
      rcis::poly_mul(rcis::poly_mul({1.0, -1.02}, {1.0, -1.02}), {1.0, -1.02});
  return rcis::TransferFunction(rcis::poly_shift(triple, 1),
                                rcis::poly_mul(rcis::Poly{1.0, -0.5}, rcis::Poly{1.0, -0.3}));
}

}  // namespace scenario
