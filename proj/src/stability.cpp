#include "rcis/stability.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>

#include "rcis/errors.hpp"
#include "rcis/lti.hpp"

namespace rcis {

namespace {

// Crossing a unit-circle pole flips the locus direction exactly (up to the
// slow rotation of the regular part), so the principal angle increment of the
// straddling segment aliases to just under +pi; the outward-indented contour
// resolves it as a clockwise half turn instead. Segments this far out are
// trusted as pole excursions; grid samples adjacent to a unit-circle pole
// reach O(|J| / (N dw)), which clears this for the supported densities.
constexpr double kPoleExcursion = 2.0;
constexpr double kCrossingBand = 0.02;      // tolerance around +pi for the alias
constexpr double kNearCritical = 0.5;       // neighborhood of -1 for grid checks
constexpr double kCoarseSpacing = 0.1;

void require_same_grid(const FrfData& a, const FrfData& b) {
  if (a.size() != b.size()) throw GridMismatch("frequency grids differ in length");
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::abs(a.omegas[i] - b.omegas[i]) > 1e-12) {
      throw GridMismatch("frequency grids differ");
    }
  }
}

}  // namespace

std::string theorem_name(TheoremKind kind) {
  switch (kind) {
    case TheoremKind::kPassivity: return "passivity";
    case TheoremKind::kSmallGain: return "small_gain";
    case TheoremKind::kEquidistantSmallGain: return "equidistant_small_gain";
    case TheoremKind::kClassicPassivity: return "classic_passivity";
  }
  return "unknown";
}

std::pair<bool, std::int64_t> nyquist_check(const FrfData& loop_frf) {
  if (loop_frf.size() < 8) throw GridTooCoarse("nyquist grid needs at least 8 points");

  // Close the locus over [0, 2pi) by conjugate symmetry.
  std::vector<Complex> locus(loop_frf.values);
  for (std::size_t i = loop_frf.size(); i-- > 0;) {
    const double w = loop_frf.omegas[i];
    if (w > 1e-12 && w < M_PI - 1e-12) locus.push_back(std::conj(loop_frf.values[i]));
  }

  const std::size_t n = locus.size();
  double min_dist = 1e300;
  double arg_sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const Complex gi = locus[i];
    const Complex gj = locus[(i + 1) % n];
    const Complex wi = gi + 1.0;
    const Complex wj = gj + 1.0;
    const double di = std::abs(wi);
    const double dj = std::abs(wj);
    min_dist = std::min(min_dist, di);

    if (std::min(di, dj) < kNearCritical && std::abs(gj - gi) > kCoarseSpacing) {
      throw GridTooCoarse("loop locus under-sampled near the critical point");
    }
    if (di == 0.0 || dj == 0.0) continue;  // intersection; pass already lost

    double delta = std::arg(wj / wi);
    if (delta > M_PI - kCrossingBand) {
      if (std::min({di, dj, std::abs(gi), std::abs(gj)}) > kPoleExcursion) {
        delta -= 2.0 * M_PI;  // through infinity, resolved clockwise
      } else if (std::min(di, dj) >= kNearCritical) {
        throw GridTooCoarse("half-turn between adjacent locus samples is ambiguous");
      }
    }
    arg_sum += delta;
  }

  const auto winding = static_cast<std::int64_t>(std::llround(arg_sum / (2.0 * M_PI)));
  const bool pass = (winding == 0) && (min_dist > kNyquistMargin);
  return {pass, winding};
}

std::pair<bool, double> equidistant_small_gain(const FrfData& j_frf, const FrfData& l_frf,
                                               const FrfData& q_frf) {
  require_same_grid(j_frf, l_frf);
  require_same_grid(j_frf, q_frf);
  double sup = 0.0;
  for (std::size_t i = 0; i < j_frf.size(); ++i) {
    const double mag =
        std::abs((1.0 - j_frf.values[i] * l_frf.values[i]) * q_frf.values[i]);
    sup = std::max(sup, mag);
  }
  const double margin = 1.0 - sup;
  return {margin > 0.0, margin};
}

std::pair<bool, double> equidistant_small_gain(const FrfData& j_frf,
                                               const TransferFunction& learning,
                                               const TransferFunction& robustness) {
  return equidistant_small_gain(j_frf, freq_response(learning, j_frf.omegas),
                                freq_response(robustness, j_frf.omegas));
}

StabilityReport passivity_check(const FrfData& tr_frf) {
  StabilityReport report;
  report.theorem = TheoremKind::kPassivity;
  report.grid_size = tr_frf.size();
  report.grid_certified_only = tr_frf.source == FrfSource::kImported;
  double max_re = -1e300;
  for (std::size_t i = 0; i < tr_frf.size(); ++i) {
    const double re = tr_frf.values[i].real();
    max_re = std::max(max_re, re);
    if (re - 1.0 > kBoundaryTolerance) {
      report.violation_frequencies.push_back(tr_frf.omegas[i]);
    }
  }
  report.s2_margin = 1.0 - max_re;
  report.s2_pass = report.s2_margin >= -kBoundaryTolerance;  // closed region
  return report;
}

StabilityReport small_gain_check(const FrfData& tr_frf) {
  StabilityReport report;
  report.theorem = TheoremKind::kSmallGain;
  report.grid_size = tr_frf.size();
  report.grid_certified_only = tr_frf.source == FrfSource::kImported;
  double sup = 0.0;
  for (std::size_t i = 0; i < tr_frf.size(); ++i) {
    const double mag = std::abs(tr_frf.values[i]);
    sup = std::max(sup, mag);
    if (mag >= 1.0 - kBoundaryTolerance) {
      report.violation_frequencies.push_back(tr_frf.omegas[i]);
    }
  }
  report.s2_margin = 1.0 - sup;
  report.s2_pass = report.s2_margin > kBoundaryTolerance;  // open region
  return report;
}

namespace {

// One local refinement pass: 10x density around the worst quantile of the
// criterion quantity, so a sup over the continuum is not missed between grid
// points.
FrfData refined_response(const TransferFunction& tf, std::size_t grid_size,
                         double (*quantity)(const Complex&)) {
  std::vector<double> grid = make_frequency_grid(grid_size);
  FrfData base = freq_response(tf, grid);

  std::vector<std::size_t> order(base.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return quantity(base.values[a]) > quantity(base.values[b]);
  });
  const std::size_t keep = std::min<std::size_t>(64, order.size());

  std::vector<double> extra;
  const double step = M_PI / static_cast<double>(grid_size - 1);
  for (std::size_t r = 0; r < keep; ++r) {
    const double center = base.omegas[order[r]];
    for (int j = -10; j <= 10; ++j) {
      if (j == 0) continue;
      const double w = center + step * static_cast<double>(j) / 10.0;
      if (w > 0.0 && w < M_PI) extra.push_back(w);
    }
  }
  std::sort(extra.begin(), extra.end());
  extra.erase(std::unique(extra.begin(), extra.end()), extra.end());

  std::vector<double> merged;
  merged.reserve(grid.size() + extra.size());
  std::merge(grid.begin(), grid.end(), extra.begin(), extra.end(),
             std::back_inserter(merged));
  merged.erase(std::unique(merged.begin(), merged.end(),
                           [](double a, double b) { return std::abs(a - b) < 1e-15; }),
               merged.end());
  return freq_response(tf, merged);
}

double re_quantity(const Complex& v) { return v.real(); }
double abs_quantity(const Complex& v) { return std::abs(v); }

}  // namespace

StabilityReport passivity_check(const TransferFunction& tr, std::size_t grid_size) {
  return passivity_check(refined_response(tr, grid_size, re_quantity));
}

StabilityReport small_gain_check(const TransferFunction& tr, std::size_t grid_size) {
  return small_gain_check(refined_response(tr, grid_size, abs_quantity));
}

std::pair<TransferFunction, TransferFunction> build_T_R(const TransferFunction& plant,
                                                        const TransferFunction& controller) {
  const TransferFunction loop = tf_mul(plant, controller);
  const TransferFunction one = TransferFunction::constant(1.0, plant.sample_time);
  try {
    return {tf_feedback(loop, one), tf_sensitivity(loop, one)};
  } catch (const AlgebraicLoop&) {
    throw SingularReturnDifference("1 + J R is singular");
  }
}

std::pair<FrfData, FrfData> build_T_R(const FrfData& plant_frf, const FrfData& controller_frf) {
  require_same_grid(plant_frf, controller_frf);
  std::vector<Complex> tr(plant_frf.size());
  std::vector<Complex> sr(plant_frf.size());
  for (std::size_t i = 0; i < plant_frf.size(); ++i) {
    const Complex loop = plant_frf.values[i] * controller_frf.values[i];
    const Complex ret = 1.0 + loop;
    if (std::abs(ret) < 1e-12) {
      throw SingularReturnDifference("1 + J R vanishes on the grid");
    }
    tr[i] = loop / ret;
    sr[i] = 1.0 / ret;
  }
  const FrfSource src = (plant_frf.source == FrfSource::kImported ||
                         controller_frf.source == FrfSource::kImported)
                            ? FrfSource::kImported
                            : FrfSource::kModelDerived;
  return {FrfData(plant_frf.omegas, std::move(tr), src),
          FrfData(plant_frf.omegas, std::move(sr), src)};
}

FrfData classic_tr_frf(const FrfData& j_frf, const TransferFunction& learning,
                       const TransferFunction& robustness, std::int64_t buffer_length,
                       double alpha) {
  if (buffer_length < 1) throw InvalidParameters("buffer length must be >= 1");
  const FrfData l_frf = freq_response(learning, j_frf.omegas);
  const FrfData q_frf = freq_response(robustness, j_frf.omegas);
  std::vector<Complex> tr(j_frf.size());
  for (std::size_t i = 0; i < j_frf.size(); ++i) {
    const double w = j_frf.omegas[i];
    const Complex jl = alpha * j_frf.values[i] * l_frf.values[i];
    const Complex qn = std::polar(1.0, -w * static_cast<double>(buffer_length));
    const Complex den = 1.0 - (1.0 - jl) * q_frf.values[i] * qn;
    if (std::abs(den) < 1e-12) {
      throw SingularReturnDifference("classic T_R denominator vanishes on the grid");
    }
    tr[i] = jl * q_frf.values[i] * qn / den;
  }
  return FrfData(j_frf.omegas, std::move(tr), j_frf.source);
}

}  // namespace rcis
