// Acceptance suite: one check per shipped criterion, each printed as a
// single pass/fail line. Exit status is nonzero when any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "rcis/csv_io.hpp"
#include "rcis/design.hpp"
#include "rcis/errors.hpp"
#include "rcis/lti.hpp"
#include "rcis/repetitive_control.hpp"
#include "rcis/sim.hpp"
#include "rcis/stability.hpp"
#include "rcis/timestamping.hpp"
#include "support/design_samples.hpp"
#include "support/oracles.hpp"
#include "support/scenarios.hpp"

namespace fs = std::filesystem;
using namespace rcis;

namespace {

int g_failures = 0;

void report(int id, const std::string& name, bool pass, const std::string& detail) {
  std::printf("[%s] criterion %2d: %s (%s)\n", pass ? "PASS" : "FAIL", id, name.c_str(),
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++g_failures;
}

void run(int id, const std::string& name,
         const std::function<std::pair<bool, std::string>()>& fn) {
  try {
    const auto [pass, detail] = fn();
    report(id, name, pass, detail);
  } catch (const std::exception& e) {
    report(id, name, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

// ---- criterion 1: operator identities ----
std::pair<bool, std::string> criterion1() {
  oracle::Rng rng(101);
  const auto t0 = std::chrono::steady_clock::now();
  int violations = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::int64_t horizon = rng.uniform_int(1, 256);
    std::vector<double> e(static_cast<std::size_t>(horizon));
    for (double& x : e) x = rng.uniform(-1e6, 1e6);
    if (trial % 7 == 0) e[static_cast<std::size_t>(rng.uniform_int(0, int(horizon) - 1))] = 0.0;

    TimestampSet psi;
    switch (trial % 4) {
      case 0:
        psi = generate(TimestampGenerator::bernoulli(rng.uniform(), rng.next()), horizon);
        break;
      case 1: psi = generate(TimestampGenerator::all(), horizon); break;
      case 2: psi = generate(TimestampGenerator::none(), horizon); break;
      default:
        psi = generate(TimestampGenerator::periodic(rng.uniform_int(1, 9),
                                                    rng.uniform_int(0, 8)), horizon);
    }

    const auto ebar = apply_T(e, psi);
    const auto etilde = apply_T_complement(e, psi);
    for (std::size_t k = 0; k < e.size(); ++k) {
      if (ebar[k] + etilde[k] != e[k]) ++violations;           // exact identity
      if (etilde[k] * (etilde[k] - e[k]) > 0.0) ++violations;  // sector bound
      if (e[k] == 0.0 && etilde[k] != 0.0) ++violations;       // zero maps to zero
    }
    if (!sector_check(e, psi)) ++violations;
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = violations == 0 && secs < 1.0;
  return {pass, "violations=" + std::to_string(violations) + ", runtime=" + fmt(secs) + "s"};
}

// ---- criterion 2: FRF vs DFT-of-impulse oracle ----
std::pair<bool, std::string> criterion2() {
  oracle::Rng rng(202);
  const std::vector<double> grid = make_frequency_grid(4096);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    TransferFunction tf = oracle::random_stable_tf(rng);
    if (trial % 4 == 0) tf = TransferFunction(tf.num, tf.den, rng.uniform_int(1, 3));
    const TransferFunction causal(tf.num, tf.den, 0, tf.sample_time);
    std::vector<double> impulse(4096, 0.0);
    impulse[0] = 1.0;
    const std::vector<double> h = simulate(causal, impulse);
    const FrfData frf = freq_response(tf, grid);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      // Rotor recurrence keeps the 4096x4096 oracle evaluation affordable.
      const Complex rot = std::polar(1.0, -grid[i]);
      Complex cur(1.0, 0.0);
      Complex acc(0.0, 0.0);
      for (double hk : h) {
        acc += hk * cur;
        cur *= rot;
      }
      acc *= std::polar(1.0, grid[i] * static_cast<double>(tf.preview));
      const double rel = std::abs(frf.values[i] - acc) / std::max(1.0, std::abs(acc));
      worst = std::max(worst, rel);
    }
  }
  return {worst <= 1e-10, "50 systems, worst relative error=" + fmt(worst)};
}

// ---- criterion 3: the small-gain region is inside the passivity region ----
std::pair<bool, std::string> criterion3() {
  oracle::Rng rng(303);
  const auto grid = scenario::midpoint_grid(8192);
  int smallgain_passes = 0;
  int counterexamples = 0;
  int s1_failures = 0;
  const std::int64_t lengths[] = {4, 8, 16, 32, 64};
  for (int trial = 0; trial < 200; ++trial) {
    const auto design = oracle::sample_contractive_design(rng, lengths[trial % 5], grid);
    const FrfData j_frf = freq_response(design.plant, grid);
    const FrfData r_frf = freq_response(rc_transfer(design.cfg), grid);
    std::vector<Complex> loop(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) loop[i] = j_frf.values[i] * r_frf.values[i];
    if (!nyquist_check(FrfData(grid, std::move(loop))).first) {
      ++s1_failures;  // sampled designs must be S1-passing
      continue;
    }
    const FrfData tr = classic_tr_frf(j_frf, design.cfg.learning, design.cfg.robustness,
                                      design.cfg.buffer_length, design.cfg.alpha);
    const bool th2 = small_gain_check(tr).s2_pass;
    const bool th1 = passivity_check(tr).s2_pass;
    if (th2) {
      ++smallgain_passes;
      if (!th1) ++counterexamples;
    }
  }
  const bool pass = counterexamples == 0 && s1_failures == 0;
  return {pass, "200 loop-condition-passing designs, small-gain passes=" +
                    std::to_string(smallgain_passes) +
                    ", counterexamples=" + std::to_string(counterexamples) +
                    ", s1 failures=" + std::to_string(s1_failures)};
}

// ---- criterion 4: equidistant criterion implies stable closed-loop poles ----
std::pair<bool, std::string> criterion4() {
  oracle::Rng rng(404);
  const auto grid = scenario::midpoint_grid(2048);
  int violations = 0;
  double worst_radius = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    // Sampled against the smallest buffer so the same triple is valid for all
    // three lengths (N must exceed the combined preview).
    const auto base = oracle::sample_contractive_design(rng, 4, grid, 2);
    for (std::int64_t n : {4, 16, 64}) {
      RcConfig cfg = base.cfg;
      cfg.buffer_length = n;
      const auto [tr, sr] = build_T_R(base.plant, rc_transfer(cfg));
      (void)sr;
      double max_radius = 0.0;
      for (const Complex& p : poles(tr).poles) {
        max_radius = std::max(max_radius, std::abs(p));
      }
      worst_radius = std::max(worst_radius, max_radius);
      if (max_radius >= 1.0 - kPoleTolerance) ++violations;
    }
  }
  return {violations == 0, "100 triples x N in {4,16,64}, violations=" +
                               std::to_string(violations) +
                               ", worst pole radius=" + fmt(worst_radius)};
}

// ---- criterion 5: boundary design T_R = delay^N ----
std::pair<bool, std::string> criterion5() {
  const TransferFunction plant = scenario::nominal_plant();
  const std::int64_t n = 24;
  RcConfig cfg;
  cfg.buffer_length = n;
  cfg.learning = zpetc_inverse(plant);
  cfg.robustness = TransferFunction::constant(1.0);
  cfg.alpha = 1.0;

  const auto grid = make_frequency_grid(4096);
  const auto [tr, sr] = build_T_R(plant, rc_transfer(cfg));
  (void)sr;
  const FrfData tr_frf = freq_response(tr, grid);
  double worst = 0.0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    worst = std::max(
        worst, std::abs(tr_frf.values[i] - std::polar(1.0, -grid[i] * double(n))));
  }

  const StabilityReport th1 = passivity_check(tr_frf);
  const StabilityReport th2 = small_gain_check(tr_frf);
  const bool pass = worst < 1e-9 && th1.s2_pass && std::abs(th1.s2_margin) <= 1e-9 &&
                    !th2.s2_pass && std::abs(th2.s2_margin) <= 1e-9;
  return {pass, "|T_R - q^N|=" + fmt(worst) + ", th1 pass margin=" + fmt(th1.s2_margin) +
                    ", th2 fail margin=" + fmt(th2.s2_margin)};
}

Scenario harmonic_scenario(const TransferFunction& plant, const RcConfig& cfg, double period,
                           std::int64_t periods) {
  Scenario scn;
  scn.plant = plant;
  scn.disturbance.period = period;
  Harmonic h1;
  h1.harmonic = 1;
  h1.amplitude = 1.0;
  Harmonic h2;
  h2.harmonic = 2;
  h2.amplitude = 0.5;
  h2.phase = 0.4;
  scn.disturbance.harmonics = {h1, h2};
  scn.controller = cfg;
  scn.timestamps = TimestampGenerator::all();
  scn.horizon = static_cast<std::int64_t>(period * static_cast<double>(periods));
  scn.seed = 1;
  return scn;
}

// ---- criterion 6: nominal convergence ----
std::pair<bool, std::string> criterion6() {
  const auto t0 = std::chrono::steady_clock::now();
  const TransferFunction plant = scenario::nominal_plant();
  RcConfig cfg;
  cfg.buffer_length = 50;
  cfg.learning = zpetc_inverse(plant);
  cfg.robustness = TransferFunction::constant(1.0);
  cfg.alpha = 1.0;

  const SimResult result = run_closed_loop(harmonic_scenario(plant, cfg, 50.0, 50));
  double tail = 0.0;
  for (std::size_t k = result.e.size() - 50; k < result.e.size(); ++k) {
    tail = std::max(tail, std::abs(result.e[k]));
  }
  const double amplitude = 1.5;  // sum of harmonic amplitudes
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  const bool pass = tail <= 1e-9 * amplitude && secs < 5.0;
  return {pass, "max|e| over final period=" + fmt(tail) + ", runtime=" + fmt(secs) + "s"};
}

// ---- criterion 7: intermittent convergence ----
std::pair<bool, std::string> criterion7() {
  const TransferFunction plant = scenario::nominal_plant();
  RcConfig cfg;
  cfg.buffer_length = 50;
  cfg.learning = zpetc_inverse(plant);
  cfg.robustness = TransferFunction::constant(0.9999);
  cfg.alpha = 1.0;

  // The modified design passes the small-gain test strictly.
  const FrfData tr = classic_tr_frf(freq_response(plant, scenario::midpoint_grid(8192)),
                                    cfg.learning, cfg.robustness, cfg.buffer_length, 1.0);
  if (!small_gain_check(tr).s2_pass) return {false, "design does not pass the small-gain test"};

  double worst_ratio = 0.0;
  double worst_max = 0.0;
  int runs = 0;
  for (double p : {0.3, 0.5, 0.8}) {
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
      Scenario scn = harmonic_scenario(plant, cfg, 50.0, 200);
      scn.timestamps = TimestampGenerator::bernoulli(p, seed);
      scn.seed = seed;
      const SimResult r = run_closed_loop(scn);
      if (r.metrics.diverged) return {false, "run diverged"};
      worst_ratio = std::max(worst_ratio, r.metrics.converged_rms / r.metrics.initial_rms);
      worst_max = std::max(worst_max, r.metrics.max_abs_e);
      ++runs;
    }
  }
  const bool pass = worst_ratio <= 1e-3 && worst_max <= 100.0 * 1.5;
  return {pass, std::to_string(runs) + " runs, worst final/initial RMS=" + fmt(worst_ratio) +
                    ", worst max|e|=" + fmt(worst_max)};
}

// ---- criterion 8: design loop soundness ----
std::pair<bool, std::string> criterion8() {
  const DesignSpec spec = scenario::phase_loss_spec();

  // alpha = 1 must violate the passivity condition on the measured response.
  const RcConfig nominal = design_nominal(spec);
  const FrfData tr1 = classic_tr_frf(*spec.measured_frf, nominal.learning,
                                     nominal.robustness, nominal.buffer_length, 1.0);
  if (passivity_check(tr1).s2_pass) return {false, "alpha=1 unexpectedly passes"};

  const DesignOutcome outcome = design_intermittent(spec);
  if (!(outcome.cfg.alpha < 1.0)) return {false, "returned alpha not below 1"};
  if (!outcome.reports.passivity.s2_pass || outcome.reports.passivity.s2_margin < 0.0) {
    return {false, "returned design misses the passivity margin"};
  }

  double worst_ratio = 0.0;
  double worst_max = 0.0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    Scenario scn;
    scn.plant = scenario::true_plant_with_lag();
    scn.disturbance.period = 300.0;
    Harmonic h1;
    h1.harmonic = 1;
    h1.amplitude = 1.0;
    Harmonic h2;
    h2.harmonic = 2;
    h2.amplitude = 0.3;
    h2.phase = 0.4;
    scn.disturbance.harmonics = {h1, h2};
    scn.controller = outcome.cfg;
    scn.timestamps = TimestampGenerator::bernoulli(0.5, seed);
    scn.horizon = 300 * 150;
    scn.seed = seed;
    const SimResult r = run_closed_loop(scn);
    if (r.metrics.diverged) return {false, "simulation diverged"};
    worst_ratio = std::max(worst_ratio, r.metrics.converged_rms / r.metrics.initial_rms);
    worst_max = std::max(worst_max, r.metrics.max_abs_e);
  }
  const bool pass = worst_ratio <= 1e-3 && worst_max <= 100.0 * 1.3;
  return {pass, "alpha=" + fmt(outcome.cfg.alpha) +
                    ", margin=" + fmt(outcome.reports.passivity.s2_margin) +
                    ", worst final/initial RMS over 10 seeds=" + fmt(worst_ratio)};
}

// ---- criterion 9: basis-RC amplitude reduction at the disturbance frequency ----
std::pair<bool, std::string> criterion9() {
  const TransferFunction plant = scenario::nominal_plant();
  const double period = 26.37;  // non-integer number of samples
  const double omega = 2.0 * M_PI / period;
  BasisRcConfig cfg;
  cfg.frequencies = {omega};
  cfg.gains = {0.2};

  const auto [tr, sr] = build_T_R(plant, basis_rc_transfer(cfg));
  (void)sr;
  if (!is_internally_stable(tr)) return {false, "closed loop unstable"};

  Scenario scn;
  scn.plant = plant;
  scn.disturbance.period = period;
  Harmonic h;
  h.omega = omega;
  h.amplitude = 1.0;
  scn.disturbance.harmonics = {h};
  scn.controller = cfg;
  scn.timestamps = TimestampGenerator::bernoulli(0.5, 2);
  scn.horizon = 6000;
  scn.seed = 2;
  const SimResult r = run_closed_loop(scn);
  if (r.metrics.diverged) return {false, "simulation diverged"};
  const double ratio = r.metrics.per_frequency.at(0).ratio;
  return {ratio >= 10.0, "amplitude ratio at the disturbance frequency=" + fmt(ratio)};
}

// ---- criterion 10: byte-identical CLI outputs ----
std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::pair<bool, std::string> criterion10() {
  const fs::path base = fs::temp_directory_path() / "rcis_acceptance_c10";
  fs::remove_all(base);
  fs::create_directories(base);

  const auto config_for = [&](const std::string& out) {
    return std::string(R"({
  "plant": {"num": [0.0, 0.5, 0.1], "den": [1.0, -0.8, 0.12], "preview": 0, "sample_time": 0.01},
  "design": {"N": 40, "q_cutoff": 1.0, "q_half_order": 1, "alpha_factor": 0.9, "alpha_max_iters": 40},
  "controller": {
    "type": "classic", "N": 40, "alpha": 1.0,
    "L": {"num": [1.0, -0.8, 0.12], "den": [0.5, 0.1], "preview": 1, "sample_time": 0.01},
    "Q": {"num": [0.95], "den": [1.0], "preview": 0, "sample_time": 0.01}
  },
  "scenario": {
    "disturbance": {"period": 40.0, "harmonics": [{"harmonic": 1, "amplitude": 1.0, "phase": 0.0}]},
    "timestamps": {"kind": "bernoulli", "p": 0.6, "seed": 3},
    "horizon": 2000, "seed": 7, "settle_periods": 2
  },
  "sweep": {"axis": "seed", "values": [1, 2, 3]},
  "output_dir": ")") + out + R"(", "grid_size": 2048
})";
  };

  const auto run_all = [&](const std::string& tag) {
    const fs::path dir = base / tag;
    fs::create_directories(dir);
    const fs::path cfg = dir / "config.json";
    std::ofstream(cfg) << config_for((dir / "out").string());
    const std::string cli = RCIS_CLI_PATH;
    for (const char* cmd : {"design", "verify", "simulate", "sweep"}) {
      const std::string full =
          cli + " " + cmd + " --config " + cfg.string() + " > /dev/null 2>&1";
      if (std::system(full.c_str()) != 0) {
        throw std::runtime_error(std::string(cmd) + " exited nonzero");
      }
    }
    return dir / "out";
  };

  const fs::path a = run_all("a");
  const fs::path b = run_all("b");
  int mismatches = 0;
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    if (slurp(entry.path()) != slurp(b / entry.path().filename())) ++mismatches;
  }
  const bool pass = mismatches == 0 && files >= 8;
  return {pass, std::to_string(files) + " output files compared, mismatches=" +
                    std::to_string(mismatches)};
}

}  // namespace

int main() {
  std::printf("acceptance suite\n");
  run(1, "timestamping operator identities and sector bound", criterion1);
  run(2, "frequency response matches the impulse-DFT oracle", criterion2);
  run(3, "small-gain pass implies passivity pass", criterion3);
  run(4, "equidistant small-gain criterion implies stable closed-loop poles", criterion4);
  run(5, "boundary design separates the closed and open regions", criterion5);
  run(6, "nominal convergence with the exact inverse", criterion6);
  run(7, "intermittent convergence for a small-gain design", criterion7);
  run(8, "design loop restores passivity and converges intermittently", criterion8);
  run(9, "basis controller cuts the matched-frequency amplitude tenfold", criterion9);
  run(10, "identical configs produce byte-identical outputs", criterion10);

  if (g_failures == 0) {
    std::printf("all criteria passed\n");
    return 0;
  }
  std::printf("%d criteria failed\n", g_failures);
  return 1;
}
