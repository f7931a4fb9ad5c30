// Command-line frontend: design, verify, simulate and sweep runs driven by a
// single JSON config. Exit codes: 0 = requested checks pass, 1 = computation
// ran but criteria failed, 2 = invalid input.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>

#include <CLI11.hpp>
#include <json.hpp>

#include "rcis/config.hpp"
#include "rcis/csv_io.hpp"
#include "rcis/design.hpp"
#include "rcis/errors.hpp"
#include "rcis/lti.hpp"
#include "rcis/sim.hpp"
#include "rcis/stability.hpp"

namespace {

using nlohmann::json;
using namespace rcis;

json json_number(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

json tf_to_json(const TransferFunction& tf) {
  return json{{"num", tf.num},
              {"den", tf.den},
              {"preview", tf.preview},
              {"sample_time", tf.sample_time}};
}

json report_to_json(const StabilityReport& r) {
  // Violation frequencies are condensed to [lo, hi] intervals for the summary.
  json intervals = json::array();
  const auto& v = r.violation_frequencies;
  for (std::size_t i = 0; i < v.size();) {
    std::size_t j = i;
    while (j + 1 < v.size() && v[j + 1] - v[j] < 0.01) ++j;
    intervals.push_back(json::array({json_number(v[i]), json_number(v[j])}));
    i = j + 1;
  }
  return json{{"theorem", theorem_name(r.theorem)},
              {"s1_pass", r.s1_pass},
              {"s1_winding_number", r.s1_winding_number},
              {"s2_pass", r.s2_pass},
              {"s2_margin", json_number(r.s2_margin)},
              {"violation_count", r.violation_frequencies.size()},
              {"omega_intervals", intervals},
              {"grid_size", r.grid_size},
              {"grid_certified_only", r.grid_certified_only}};
}

json reports_to_json(const DesignReports& r) {
  return json{{"equidistant_small_gain", json{{"pass", r.equidistant_pass}, {"margin", json_number(r.equidistant_margin)}}},
              {"passivity", report_to_json(r.passivity)},
              {"small_gain", report_to_json(r.small_gain)},
              {"crossover_omega", json_number(r.crossover_omega)}};
}

std::string iterations_csv(const std::vector<DesignIteration>& iterations) {
  std::ostringstream ss;
  ss << "iter,alpha,passivity_margin,small_gain_margin\n";
  for (const auto& it : iterations) {
    ss << it.iter << ',' << format_double(it.alpha) << ','
       << format_double(it.passivity_margin) << ',' << format_double(it.small_gain_margin)
       << '\n';
  }
  return ss.str();
}

struct CliOptions {
  std::string config_path;
  std::string out_override;
  std::int64_t grid_override = 0;
  std::int64_t seed_override = -1;
  bool has_seed_override = false;
};

struct LoadedRun {
  RunConfig cfg;
  std::filesystem::path out_dir;
};

LoadedRun prepare(const CliOptions& opt) {
  LoadedRun run;
  run.cfg = load_run_config(opt.config_path);
  if (!opt.out_override.empty()) run.cfg.output_dir = opt.out_override;
  if (opt.grid_override > 0) run.cfg.grid_size = static_cast<std::size_t>(opt.grid_override);
  if (opt.has_seed_override && run.cfg.scenario.has_value()) {
    run.cfg.scenario->seed = static_cast<std::uint64_t>(opt.seed_override);
  }
  run.out_dir = run.cfg.output_dir;
  std::filesystem::create_directories(run.out_dir);
  return run;
}

TransferFunction require_plant(const RunConfig& cfg) {
  if (!cfg.plant.has_value()) throw ConfigError("config requires a 'plant' section");
  return *cfg.plant;
}

FrfData plant_frf_or_model(const RunConfig& cfg, std::size_t grid_size) {
  if (cfg.plant_frf_csv.has_value()) return read_frf_csv(*cfg.plant_frf_csv);
  const TransferFunction plant = require_plant(cfg);
  std::vector<double> grid(grid_size);
  for (std::size_t i = 0; i < grid_size; ++i) {
    grid[i] = M_PI * (static_cast<double>(i) + 0.5) / static_cast<double>(grid_size);
  }
  return freq_response(plant, grid);
}

int cmd_design(const CliOptions& opt) {
  const LoadedRun run = prepare(opt);
  if (!run.cfg.design.has_value()) throw ConfigError("config requires a 'design' section");

  DesignSpec spec;
  spec.plant = require_plant(run.cfg);
  if (run.cfg.plant_frf_csv.has_value()) {
    spec.measured_frf = read_frf_csv(*run.cfg.plant_frf_csv);
  }
  const auto& d = *run.cfg.design;
  spec.buffer_length = d.buffer_length;
  spec.q_cutoff = d.q_cutoff;
  spec.q_half_order = d.q_half_order;
  spec.alpha_schedule.factor = d.alpha_factor;
  spec.alpha_schedule.max_iters = d.alpha_max_iters;
  spec.notch.enabled = d.notch_enabled;
  spec.notch.depth = d.notch_depth;
  spec.notch.width = d.notch_width;
  spec.grid_size = run.cfg.grid_size;

  try {
    const DesignOutcome outcome = design_intermittent(spec);
    json doc{{"status", "success"},
             {"cfg",
              json{{"N", outcome.cfg.buffer_length},
                   {"alpha", outcome.cfg.alpha},
                   {"L", tf_to_json(outcome.cfg.learning)},
                   {"Q", tf_to_json(outcome.cfg.robustness)}}},
             {"reports", reports_to_json(outcome.reports)},
             {"iterations", outcome.iterations.size()}};
    write_text_file((run.out_dir / "design_outcome.json").string(), doc.dump(2) + "\n");
    write_text_file((run.out_dir / "iterations.csv").string(),
                    iterations_csv(outcome.iterations));
    return 0;
  } catch (const DesignExhaustedWithLog& e) {
    json doc{{"status", "exhausted"}, {"error", e.what()}, {"iterations", e.iterations.size()}};
    write_text_file((run.out_dir / "design_outcome.json").string(), doc.dump(2) + "\n");
    write_text_file((run.out_dir / "iterations.csv").string(), iterations_csv(e.iterations));
    std::cerr << "design: " << e.what() << "\n";
    return 1;
  } catch (const NominalDesignInfeasible& e) {
    json doc{{"status", "infeasible"}, {"error", e.what()}};
    write_text_file((run.out_dir / "design_outcome.json").string(), doc.dump(2) + "\n");
    std::cerr << "design: " << e.what() << "\n";
    return 1;
  }
}

int cmd_verify(const CliOptions& opt) {
  const LoadedRun run = prepare(opt);
  if (!run.cfg.controller.has_value()) {
    throw ConfigError("config requires a 'controller' section");
  }
  const FrfData plant_frf = plant_frf_or_model(run.cfg, run.cfg.grid_size);

  DesignReports reports;
  FrfData tr_frf;
  if (std::holds_alternative<RcConfig>(*run.cfg.controller)) {
    const RcConfig& cfg = std::get<RcConfig>(*run.cfg.controller);
    reports = evaluate_design(cfg, plant_frf);
    tr_frf = cfg.alpha == 0.0
                 ? FrfData(plant_frf.omegas,
                           std::vector<Complex>(plant_frf.size(), Complex(0.0, 0.0)),
                           plant_frf.source)
                 : classic_tr_frf(plant_frf, cfg.learning, cfg.robustness, cfg.buffer_length,
                                  cfg.alpha);
  } else {
    const BasisRcConfig& cfg = std::get<BasisRcConfig>(*run.cfg.controller);
    const TransferFunction controller = basis_rc_transfer(cfg);
    const FrfData r_frf = freq_response(controller, plant_frf.omegas);
    std::vector<Complex> loop(plant_frf.size());
    for (std::size_t i = 0; i < plant_frf.size(); ++i) {
      loop[i] = plant_frf.values[i] * r_frf.values[i];
    }
    const FrfData loop_frf(plant_frf.omegas, std::move(loop), plant_frf.source);
    const auto [s1, winding] = nyquist_check(loop_frf);
    tr_frf = build_T_R(plant_frf, r_frf).first;
    reports.passivity = passivity_check(tr_frf);
    reports.passivity.s1_pass = s1;
    reports.passivity.s1_winding_number = winding;
    reports.small_gain = small_gain_check(tr_frf);
    reports.small_gain.s1_pass = s1;
    reports.small_gain.s1_winding_number = winding;
    reports.equidistant_pass = false;
    reports.equidistant_margin = 0.0;
  }

  json doc = reports_to_json(reports);

  // Margin sensitivity to the grid density: the region margins re-evaluated
  // on every other sample. Reported, not gated on.
  if (tr_frf.size() >= 16) {
    std::vector<double> half_w;
    std::vector<Complex> half_v;
    for (std::size_t i = 0; i < tr_frf.size(); i += 2) {
      half_w.push_back(tr_frf.omegas[i]);
      half_v.push_back(tr_frf.values[i]);
    }
    const FrfData half(std::move(half_w), std::move(half_v), tr_frf.source);
    doc["margin_grid_sensitivity"] =
        json{{"passivity",
              json_number(std::abs(passivity_check(half).s2_margin -
                                   passivity_check(tr_frf).s2_margin))},
             {"small_gain",
              json_number(std::abs(small_gain_check(half).s2_margin -
                                   small_gain_check(tr_frf).s2_margin))}};
  }

  write_text_file((run.out_dir / "verify_report.json").string(), doc.dump(2) + "\n");
  write_tr_csv((run.out_dir / "tr_frf.csv").string(), tr_frf);
  write_frf_csv((run.out_dir / "plant_frf.csv").string(), plant_frf);

  const bool passivity_pass = reports.passivity.s1_pass && reports.passivity.s2_pass;
  return passivity_pass ? 0 : 1;
}

Scenario scenario_from(const RunConfig& cfg) {
  if (!cfg.scenario.has_value()) throw ConfigError("config requires a 'scenario' section");
  if (!cfg.controller.has_value()) throw ConfigError("config requires a 'controller' section");
  Scenario scn;
  scn.plant = require_plant(cfg);
  scn.disturbance = cfg.scenario->disturbance;
  if (std::holds_alternative<RcConfig>(*cfg.controller)) {
    scn.controller = std::get<RcConfig>(*cfg.controller);
  } else {
    scn.controller = std::get<BasisRcConfig>(*cfg.controller);
  }
  scn.timestamps = cfg.scenario->timestamps;
  scn.horizon = cfg.scenario->horizon;
  scn.seed = cfg.scenario->seed;
  return scn;
}

json metrics_to_json(const Metrics& m) {
  json per = json::array();
  for (const auto& fr : m.per_frequency) {
    per.push_back(json{{"omega", json_number(fr.omega)},
                       {"initial_amplitude", json_number(fr.initial_amplitude)},
                       {"converged_amplitude", json_number(fr.converged_amplitude)},
                       {"ratio", json_number(fr.ratio)}});
  }
  return json{{"initial_rms", json_number(m.initial_rms)},
              {"converged_rms", json_number(m.converged_rms)},
              {"reduction_factor", json_number(m.reduction_factor)},
              {"max_abs_e", json_number(m.max_abs_e)},
              {"per_frequency", per},
              {"diverged", m.diverged},
              {"diverged_at", m.diverged_at}};
}

int cmd_simulate(const CliOptions& opt) {
  const LoadedRun run = prepare(opt);
  const Scenario scn = scenario_from(run.cfg);
  const SimResult result = run_closed_loop(scn);

  write_timeseries_csv((run.out_dir / "timeseries.csv").string(), result);
  write_timestamps_csv((run.out_dir / "psi.csv").string(), result.psi);
  Metrics metrics = result.metrics;
  if (run.cfg.scenario->settle_periods > 0 && !result.metrics.diverged) {
    metrics = reduction_metrics(result, run.cfg.scenario->settle_periods);
  }
  write_text_file((run.out_dir / "metrics.json").string(),
                  metrics_to_json(metrics).dump(2) + "\n");
  if (!result.metrics.diverged) {
    write_spectrum_csv((run.out_dir / "spectrum.csv").string(),
                       cumulative_amplitude_spectrum(result.e), result.sample_time);
  }
  return result.metrics.diverged ? 1 : 0;
}

int cmd_sweep(const CliOptions& opt, const std::string& axis_override) {
  const LoadedRun run = prepare(opt);
  if (!run.cfg.sweep.has_value()) throw ConfigError("config requires a 'sweep' section");
  RunConfig::SweepSection sweep = *run.cfg.sweep;
  if (!axis_override.empty()) sweep.axis = axis_override;

  std::ostringstream ss;
  ss << "axis,value,initial_rms,converged_rms,reduction_factor,max_abs_e,diverged\n";
  bool any_diverged = false;
  for (double value : sweep.values) {
    Scenario scn = scenario_from(run.cfg);
    if (sweep.axis == "seed") {
      scn.seed = static_cast<std::uint64_t>(value);
    } else if (sweep.axis == "alpha") {
      if (!std::holds_alternative<RcConfig>(scn.controller)) {
        throw ConfigError("alpha sweep requires a classic controller");
      }
      std::get<RcConfig>(scn.controller).alpha = value;
    } else if (sweep.axis == "p") {
      if (scn.timestamps.kind != GeneratorKind::kBernoulli) {
        throw ConfigError("p sweep requires a bernoulli timestamp generator");
      }
      scn.timestamps.p = value;
    } else {
      throw ConfigError("sweep axis must be one of seed|alpha|p");
    }
    const SimResult result = run_closed_loop(scn);
    any_diverged = any_diverged || result.metrics.diverged;
    ss << sweep.axis << ',' << format_double(value) << ','
       << format_double(result.metrics.initial_rms) << ','
       << format_double(result.metrics.converged_rms) << ','
       << format_double(result.metrics.reduction_factor) << ','
       << format_double(result.metrics.max_abs_e) << ','
       << (result.metrics.diverged ? 1 : 0) << '\n';
  }
  write_text_file((run.out_dir / "sweep.csv").string(), ss.str());
  return any_diverged ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"repetitive control under intermittent sampling"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string sweep_axis;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path, "path to the JSON run config")->required();
    sub->add_option("--out", opt.out_override, "output directory override");
    sub->add_option("--grid-size", opt.grid_override, "frequency grid size override");
    sub->add_option("--seed", opt.seed_override, "scenario seed override")
        ->check(CLI::NonNegativeNumber);
  };

  CLI::App* design = app.add_subcommand("design", "run the intermittent-sampling RC design");
  CLI::App* verify = app.add_subcommand("verify", "verify the stability criteria");
  CLI::App* simulate = app.add_subcommand("simulate", "run one closed-loop scenario");
  CLI::App* sweep = app.add_subcommand("sweep", "aggregate runs across an axis");
  add_common(design);
  add_common(verify);
  add_common(simulate);
  add_common(sweep);
  sweep->add_option("--axis", sweep_axis, "sweep axis override (seed|alpha|p)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }
  opt.has_seed_override = opt.seed_override >= 0;

  try {
    if (design->parsed()) return cmd_design(opt);
    if (verify->parsed()) return cmd_verify(opt);
    if (simulate->parsed()) return cmd_simulate(opt);
    if (sweep->parsed()) return cmd_sweep(opt, sweep_axis);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const UnstablePlant& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const IllPosedLoop& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const InvalidParameters& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
