#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rcis/errors.hpp"

#include "rcis/repetitive_control.hpp"
#include "rcis/stability.hpp"
#include "rcis/transfer_function.hpp"

namespace rcis {

struct AlphaSchedule {
  double factor = 0.9;        // geometric decrease, in (0, 1)
  std::int64_t max_iters = 40;
};

struct NotchSettings {
  bool enabled = false;
  double depth = 0.5;   // target gain over the violation set, in (0, 1)
  double width = 0.1;   // rad/sample added around each violation interval
};

struct DesignSpec {
  TransferFunction plant;               // parametric model
  std::optional<FrfData> measured_frf;  // verification data, when available
  std::int64_t buffer_length = 1;       // N
  double q_cutoff = 1.0;                // rad/sample
  int q_half_order = 8;
  AlphaSchedule alpha_schedule;
  NotchSettings notch;
  std::size_t grid_size = kDefaultGridSize;

  void validate() const;
};

struct DesignIteration {
  std::int64_t iter = 0;
  double alpha = 1.0;
  double passivity_margin = 0.0;
  double small_gain_margin = 0.0;
  bool q_modified = false;
};

struct DesignReports {
  bool equidistant_pass = false;
  double equidistant_margin = 0.0;
  StabilityReport passivity;  // S1 + passivity S2
  StabilityReport small_gain;  // S1 + small-gain S2
  double crossover_omega = 0.0;  // lowest w with |J R| crossing 1; 0 if none
};

struct DesignOutcome {
  RcConfig cfg;
  DesignReports reports;
  std::vector<DesignIteration> iterations;
};

// Procedure step 2: L from the inverse of the model, Q a zero-phase low-pass,
// alpha = 1; the cutoff is lowered by 0.8 per retry (max 20) until the
// classic small-gain criterion holds. Throws NominalDesignInfeasible.
RcConfig design_nominal(const DesignSpec& spec);

// Carries the full iteration log out of a failed design sweep.
struct DesignExhaustedWithLog : DesignExhausted {
  DesignExhaustedWithLog(const std::string& what, std::vector<DesignIteration> log)
      : DesignExhausted(what), iterations(std::move(log)) {}
  std::vector<DesignIteration> iterations;
};

// Procedure step 3: iterate alpha scaling (preferred) then local Q notching
// until the passivity test passes on the verification response. Throws
// DesignExhaustedWithLog when the schedule is spent.
DesignOutcome design_intermittent(const DesignSpec& spec);

DesignReports evaluate_design(const RcConfig& cfg, const TransferFunction& plant,
                              std::size_t grid_size = kDefaultGridSize);
DesignReports evaluate_design(const RcConfig& cfg, const FrfData& plant_frf);

// Frequency-sampled symmetric FIR gain correction: 1 in the passband,
// `depth` over each [lo, hi] violation interval. Exact at the sample points,
// so the DC gain is preserved whenever the intervals exclude 0.
TransferFunction notch_correction(const std::vector<std::pair<double, double>>& intervals,
                                  double depth, int half_order);

// Merges a sorted violation-frequency list into closed intervals, widened by
// width/2 on each side and clipped to [0, pi].
std::vector<std::pair<double, double>> violation_intervals(const std::vector<double>& omegas,
                                                           double grid_step, double width);

}  // namespace rcis
