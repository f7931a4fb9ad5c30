#include "rcis/design.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>

#include "rcis/errors.hpp"
#include "rcis/lti.hpp"

namespace rcis {

namespace {

// Endpoint-free grid for loop loci: classic RC loops carry internal-model
// poles at w = 2 pi m / N, which include 0 and possibly pi.
std::vector<double> make_midpoint_grid(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t i = 0; i < n; ++i) {
    w[i] = M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(n);
  }
  return w;
}

FrfData loop_frf_on(const FrfData& plant_frf, const TransferFunction& controller) {
  const FrfData r_frf = freq_response(controller, plant_frf.omegas);
  std::vector<Complex> values(plant_frf.size());
  for (std::size_t i = 0; i < plant_frf.size(); ++i) {
    values[i] = plant_frf.values[i] * r_frf.values[i];
  }
  return FrfData(plant_frf.omegas, std::move(values), plant_frf.source);
}

double crossover_frequency(const FrfData& loop) {
  for (std::size_t i = 0; i + 1 < loop.size(); ++i) {
    const double a = std::abs(loop.values[i]) - 1.0;
    const double b = std::abs(loop.values[i + 1]) - 1.0;
    if (a == 0.0) return loop.omegas[i];
    if (a * b < 0.0) {
      const double t = a / (a - b);
      return loop.omegas[i] + t * (loop.omegas[i + 1] - loop.omegas[i]);
    }
  }
  return 0.0;
}

FrfData zero_frf(const std::vector<double>& omegas, FrfSource src) {
  return FrfData(omegas, std::vector<Complex>(omegas.size(), Complex(0.0, 0.0)), src);
}

FrfData tr_frf_for(const RcConfig& cfg, const FrfData& plant_frf) {
  if (cfg.alpha == 0.0) return zero_frf(plant_frf.omegas, plant_frf.source);
  return classic_tr_frf(plant_frf, cfg.learning, cfg.robustness, cfg.buffer_length,
                        cfg.alpha);
}

// Dense linear solve with partial pivoting; used for the frequency-sampled
// notch taps (tiny systems).
std::vector<double> gauss_solve(std::vector<std::vector<double>> a, std::vector<double> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r) {
      if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
    }
    if (std::abs(a[pivot][col]) < 1e-14) throw RootFindingFailure("singular notch system");
    std::swap(a[col], a[pivot]);
    std::swap(b[col], b[pivot]);
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<double> x(n, 0.0);
  for (std::size_t r = n; r-- > 0;) {
    double acc = b[r];
    for (std::size_t c = r + 1; c < n; ++c) acc -= a[r][c] * x[c];
    x[r] = acc / a[r][r];
  }
  return x;
}

}  // namespace

void DesignSpec::validate() const {
  if (buffer_length < 1) throw InvalidParameters("buffer length must be >= 1");
  if (!(q_cutoff > 0.0) || q_cutoff > M_PI) {
    throw InvalidParameters("q_cutoff must lie in (0, pi]");
  }
  if (q_half_order < 0) throw InvalidParameters("q_half_order must be non-negative");
  if (!(alpha_schedule.factor > 0.0) || !(alpha_schedule.factor < 1.0)) {
    throw InvalidParameters("alpha schedule factor must lie in (0, 1)");
  }
  if (alpha_schedule.max_iters < 0) throw InvalidParameters("alpha max_iters must be >= 0");
  if (notch.enabled) {
    if (!(notch.depth > 0.0) || !(notch.depth < 1.0)) {
      throw InvalidParameters("notch depth must lie in (0, 1)");
    }
    if (!(notch.width >= 0.0)) throw InvalidParameters("notch width must be non-negative");
  }
  if (grid_size < 2) throw InvalidParameters("grid size must be >= 2");
}

RcConfig design_nominal(const DesignSpec& spec) {
  spec.validate();
  if (!is_internally_stable(spec.plant)) {
    throw UnstablePlant("nominal design requires an internally stable plant");
  }
  if (!spec.plant.is_strictly_proper()) {
    throw InvalidParameters("nominal design requires a strictly proper plant");
  }

  const TransferFunction learning = zpetc_inverse(spec.plant);
  const FrfData j_frf = freq_response(spec.plant, make_frequency_grid(spec.grid_size));

  double cutoff = spec.q_cutoff;
  for (int retry = 0; retry <= 20; ++retry) {
    RcConfig cfg;
    cfg.buffer_length = spec.buffer_length;
    cfg.learning = learning;
    cfg.robustness = zero_phase_fir_lowpass(cutoff, spec.q_half_order,
                                            spec.plant.sample_time);
    cfg.alpha = 1.0;
    cfg.validate();
    const auto [pass, margin] = equidistant_small_gain(j_frf, cfg.learning, cfg.robustness);
    if (pass) return cfg;
    cutoff *= 0.8;
  }
  throw NominalDesignInfeasible(
      "no cutoff in the retry schedule satisfies the equidistant small-gain criterion");
}

std::vector<std::pair<double, double>> violation_intervals(const std::vector<double>& omegas,
                                                           double grid_step, double width) {
  std::vector<std::pair<double, double>> intervals;
  const double half = 0.5 * width;
  for (std::size_t i = 0; i < omegas.size();) {
    std::size_t j = i;
    while (j + 1 < omegas.size() && omegas[j + 1] - omegas[j] <= 2.0 * grid_step) ++j;
    intervals.emplace_back(std::max(0.0, omegas[i] - half),
                           std::min(M_PI, omegas[j] + half));
    i = j + 1;
  }
  // Merge any overlap introduced by the widening.
  std::vector<std::pair<double, double>> merged;
  for (const auto& iv : intervals) {
    if (!merged.empty() && iv.first <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, iv.second);
    } else {
      merged.push_back(iv);
    }
  }
  return merged;
}

TransferFunction notch_correction(const std::vector<std::pair<double, double>>& intervals,
                                  double depth, int half_order) {
  if (half_order < 1) throw InvalidParameters("notch half_order must be >= 1");
  const int m = half_order;
  // Raised-cosine tapers on both edges keep the sampled target smooth, which
  // suppresses the interpolation ripple that a hard-edged notch would leak
  // into the passband.
  const double taper = std::max(0.15, M_PI / static_cast<double>(m));
  const auto desired = [&](double w) {
    double dip = 0.0;
    for (const auto& iv : intervals) {
      double s = 0.0;
      if (w >= iv.first && w <= iv.second) {
        s = 1.0;
      } else if (w > iv.first - taper && w < iv.first) {
        const double t = (w - (iv.first - taper)) / taper;
        s = 0.5 - 0.5 * std::cos(M_PI * t);
      } else if (w > iv.second && w < iv.second + taper) {
        const double t = (iv.second + taper - w) / taper;
        s = 0.5 - 0.5 * std::cos(M_PI * t);
      }
      dip = std::max(dip, s);
    }
    return 1.0 - (1.0 - depth) * dip;
  };

  // Interpolate the target gain exactly at w_k = pi k / m with a symmetric
  // zero-phase tap set: C(w) = c0 + 2 sum c_n cos(n w).
  const std::size_t n = static_cast<std::size_t>(m) + 1;
  std::vector<std::vector<double>> a(n, std::vector<double>(n, 0.0));
  std::vector<double> g(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double w = M_PI * static_cast<double>(k) / static_cast<double>(m);
    a[k][0] = 1.0;
    for (std::size_t col = 1; col < n; ++col) {
      a[k][col] = 2.0 * std::cos(static_cast<double>(col) * w);
    }
    g[k] = desired(w);
  }
  const std::vector<double> c = gauss_solve(std::move(a), std::move(g));

  Poly taps(static_cast<std::size_t>(2 * m + 1), 0.0);
  taps[static_cast<std::size_t>(m)] = c[0];
  for (int i = 1; i <= m; ++i) {
    taps[static_cast<std::size_t>(m + i)] = c[static_cast<std::size_t>(i)];
    taps[static_cast<std::size_t>(m - i)] = c[static_cast<std::size_t>(i)];
  }
  return TransferFunction(std::move(taps), Poly{1.0}, m);
}

namespace {

struct CheckResult {
  bool s1_pass = false;
  std::int64_t winding = 0;
  StabilityReport passivity;
  StabilityReport small_gain;
  double crossover = 0.0;
};

CheckResult check_on_frf(const RcConfig& cfg, const FrfData& ver_frf) {
  CheckResult out;
  if (cfg.alpha == 0.0) {
    out.s1_pass = true;
    out.winding = 0;
    out.passivity = passivity_check(zero_frf(ver_frf.omegas, ver_frf.source));
    out.small_gain = small_gain_check(zero_frf(ver_frf.omegas, ver_frf.source));
    return out;
  }
  const TransferFunction controller = rc_transfer(cfg);
  const FrfData loop = loop_frf_on(ver_frf, controller);
  const auto [s1, winding] = nyquist_check(loop);
  out.s1_pass = s1;
  out.winding = winding;
  out.crossover = crossover_frequency(loop);
  const FrfData tr = tr_frf_for(cfg, ver_frf);
  out.passivity = passivity_check(tr);
  out.small_gain = small_gain_check(tr);
  return out;
}

}  // namespace

DesignOutcome design_intermittent(const DesignSpec& spec) {
  DesignOutcome outcome;
  outcome.cfg = design_nominal(spec);

  // Verification response: measured data when supplied, else the model, on an
  // endpoint-free grid so internal-model poles never land on a grid point.
  const FrfData ver_frf = spec.measured_frf.has_value()
                              ? *spec.measured_frf
                              : freq_response(spec.plant, make_midpoint_grid(spec.grid_size));
  const FrfData j_model = freq_response(spec.plant, ver_frf.omegas);

  std::int64_t alpha_steps = 0;
  int notches = 0;
  const int max_notches = 8;
  std::int64_t iter = 0;
  while (true) {
    const CheckResult check = check_on_frf(outcome.cfg, ver_frf);

    DesignIteration log;
    log.iter = iter;
    log.alpha = outcome.cfg.alpha;
    log.passivity_margin = check.passivity.s2_margin;
    log.small_gain_margin = check.small_gain.s2_margin;
    log.q_modified = notches > 0;
    outcome.iterations.push_back(log);

    // Success requires the passivity theorem on the verification data and,
    // when measured data was supplied, on the model as well.
    bool model_ok = true;
    if (check.s1_pass && check.passivity.s2_pass && spec.measured_frf.has_value()) {
      const CheckResult model_check = check_on_frf(outcome.cfg, j_model);
      model_ok = model_check.s1_pass && model_check.passivity.s2_pass;
    }
    if (check.s1_pass && check.passivity.s2_pass && model_ok) {
      // The equidistant criterion is reported for the unscaled L.
      const auto [equidistant_pass, equidistant_margin] =
          equidistant_small_gain(ver_frf, outcome.cfg.learning, outcome.cfg.robustness);
      outcome.reports.equidistant_pass = equidistant_pass;
      outcome.reports.equidistant_margin = equidistant_margin;
      outcome.reports.passivity = check.passivity;
      outcome.reports.passivity.s1_pass = check.s1_pass;
      outcome.reports.passivity.s1_winding_number = check.winding;
      outcome.reports.small_gain = check.small_gain;
      outcome.reports.small_gain.s1_pass = check.s1_pass;
      outcome.reports.small_gain.s1_winding_number = check.winding;
      outcome.reports.crossover_omega = check.crossover;
      return outcome;
    }

    // Heuristic 3a first: slow the learning down.
    if (alpha_steps < spec.alpha_schedule.max_iters) {
      outcome.cfg.alpha *= spec.alpha_schedule.factor;
      ++alpha_steps;
      ++iter;
      continue;
    }
    // Heuristic 3b: reduce Q locally over the violation set.
    if (spec.notch.enabled && notches < max_notches &&
        !check.passivity.violation_frequencies.empty()) {
      const double grid_step = ver_frf.size() > 1
                                   ? (ver_frf.omegas.back() - ver_frf.omegas.front()) /
                                         static_cast<double>(ver_frf.size() - 1)
                                   : M_PI;
      const auto intervals =
          violation_intervals(check.passivity.violation_frequencies, grid_step,
                              spec.notch.width);
      const TransferFunction correction =
          notch_correction(intervals, spec.notch.depth, std::max(16, spec.q_half_order));
      outcome.cfg.robustness = tf_mul(outcome.cfg.robustness, correction);
      outcome.cfg.validate();
      ++notches;
      ++iter;
      continue;
    }
    throw DesignExhaustedWithLog(
        "alpha schedule and notch budget spent without satisfying the passivity condition",
        outcome.iterations);
  }
}

namespace {

DesignReports assemble_reports(const RcConfig& cfg, const FrfData& plant_frf,
                               const StabilityReport& passivity_s2,
                               const StabilityReport& small_gain_s2) {
  DesignReports reports;
  const auto [equidistant_pass, equidistant_margin] =
      equidistant_small_gain(plant_frf, cfg.learning, cfg.robustness);
  reports.equidistant_pass = equidistant_pass;
  reports.equidistant_margin = equidistant_margin;

  bool s1 = true;
  std::int64_t winding = 0;
  if (cfg.alpha != 0.0) {
    const FrfData loop = loop_frf_on(plant_frf, rc_transfer(cfg));
    const auto s1_result = nyquist_check(loop);
    s1 = s1_result.first;
    winding = s1_result.second;
    reports.crossover_omega = crossover_frequency(loop);
  }

  reports.passivity = passivity_s2;
  reports.passivity.s1_pass = s1;
  reports.passivity.s1_winding_number = winding;
  reports.small_gain = small_gain_s2;
  reports.small_gain.s1_pass = s1;
  reports.small_gain.s1_winding_number = winding;
  return reports;
}

}  // namespace

DesignReports evaluate_design(const RcConfig& cfg, const TransferFunction& plant,
                              std::size_t grid_size) {
  cfg.validate();
  const FrfData plant_frf = freq_response(plant, make_midpoint_grid(grid_size));
  StabilityReport p_report;
  StabilityReport sg_report;
  if (cfg.alpha == 0.0) {
    p_report = passivity_check(zero_frf(plant_frf.omegas, plant_frf.source));
    sg_report = small_gain_check(zero_frf(plant_frf.omegas, plant_frf.source));
  } else {
    // Parametric complementary sensitivity gets the refined sup evaluation.
    const auto [tr, sr] = build_T_R(plant, rc_transfer(cfg));
    (void)sr;
    p_report = passivity_check(tr, grid_size);
    sg_report = small_gain_check(tr, grid_size);
  }
  return assemble_reports(cfg, plant_frf, p_report, sg_report);
}

DesignReports evaluate_design(const RcConfig& cfg, const FrfData& plant_frf) {
  cfg.validate();
  const FrfData tr = tr_frf_for(cfg, plant_frf);
  StabilityReport p_report = passivity_check(tr);
  p_report.theorem = TheoremKind::kClassicPassivity;
  const StabilityReport sg_report = small_gain_check(tr);
  return assemble_reports(cfg, plant_frf, p_report, sg_report);
}

}  // namespace rcis
