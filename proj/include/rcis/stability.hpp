#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rcis/transfer_function.hpp"

namespace rcis {

inline constexpr double kNyquistMargin = 1e-6;      // "does not intersect"
inline constexpr double kBoundaryTolerance = 1e-9;  // closed/open region edge
inline constexpr std::size_t kDefaultGridSize = 16384;

enum class TheoremKind { kPassivity, kSmallGain, kEquidistantSmallGain, kClassicPassivity };

struct StabilityReport {
  bool s1_pass = false;
  std::int64_t s1_winding_number = 0;
  bool s2_pass = false;
  double s2_margin = 0.0;  // signed distance to the region boundary
  std::vector<double> violation_frequencies;  // the set Omega
  std::size_t grid_size = 0;
  TheoremKind theorem = TheoremKind::kPassivity;
  bool grid_certified_only = false;  // set for imported (non-parametric) data
};

std::string theorem_name(TheoremKind kind);

// Net encirclements of -1 by the loop locus, the [0,pi] data extended to
// [0,2pi) by conjugate symmetry. pass = winding 0 and the locus staying
// kNyquistMargin away from -1. Throws GridTooCoarse when adjacent locus
// points near the critical point are further than 0.1 apart.
std::pair<bool, std::int64_t> nyquist_check(const FrfData& loop_frf);

// sup_w |(1 - J L) Q| < 1; margin = 1 - sup. Grids must match exactly.
std::pair<bool, double> equidistant_small_gain(const FrfData& j_frf, const FrfData& l_frf,
                                               const FrfData& q_frf);
std::pair<bool, double> equidistant_small_gain(const FrfData& j_frf,
                                               const TransferFunction& learning,
                                               const TransferFunction& robustness);

// Passivity region condition: -T_R confined to the closed half-plane Re(z) >= -1.
// margin = 1 - max_w Re(T_R); violations where Re(T_R) > 1.
StabilityReport passivity_check(const FrfData& tr_frf);

// Small-gain region condition: T_R confined to the open unit disk.
// margin = 1 - sup_w |T_R|; violations where |T_R| >= 1.
StabilityReport small_gain_check(const FrfData& tr_frf);

// Parametric checks evaluate on a default grid plus one 10x local refinement
// pass around near-extremal frequencies.
StabilityReport passivity_check(const TransferFunction& tr,
                                std::size_t grid_size = kDefaultGridSize);
StabilityReport small_gain_check(const TransferFunction& tr,
                                 std::size_t grid_size = kDefaultGridSize);

// T_R = (1+JR)^{-1} J R and S_R = (1+JR)^{-1}.
std::pair<TransferFunction, TransferFunction> build_T_R(const TransferFunction& plant,
                                                        const TransferFunction& controller);
std::pair<FrfData, FrfData> build_T_R(const FrfData& plant_frf, const FrfData& controller_frf);

// Closed form of the classic-RC complementary sensitivity evaluated pointwise:
// T_R = alpha J L Q e^{-jwN} / (1 - (1 - alpha J L) Q e^{-jwN}).
FrfData classic_tr_frf(const FrfData& j_frf, const TransferFunction& learning,
                       const TransferFunction& robustness, std::int64_t buffer_length,
                       double alpha);

}  // namespace rcis
