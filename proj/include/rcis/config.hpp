#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "rcis/design.hpp"
#include "rcis/sim.hpp"

namespace rcis {

// One self-describing document per run; sections are validated strictly
// (unknown keys rejected) before any computation starts.
struct RunConfig {
  std::optional<TransferFunction> plant;
  std::optional<std::string> plant_frf_csv;

  struct DesignSection {
    std::int64_t buffer_length = 1;
    double q_cutoff = 1.0;
    int q_half_order = 8;
    double alpha_factor = 0.9;
    std::int64_t alpha_max_iters = 40;
    bool notch_enabled = false;
    double notch_depth = 0.5;
    double notch_width = 0.1;
  };
  std::optional<DesignSection> design;

  std::optional<std::variant<RcConfig, BasisRcConfig>> controller;

  struct ScenarioSection {
    Disturbance disturbance;
    TimestampGenerator timestamps;
    std::int64_t horizon = 0;
    std::uint64_t seed = 0;
    std::int64_t settle_periods = 2;
  };
  std::optional<ScenarioSection> scenario;

  struct SweepSection {
    std::string axis;  // "seed" | "alpha" | "p"
    std::vector<double> values;
  };
  std::optional<SweepSection> sweep;

  std::string output_dir = ".";
  std::size_t grid_size = kDefaultGridSize;
};

// Throws ConfigError with a path-qualified message on any schema violation.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

}  // namespace rcis
