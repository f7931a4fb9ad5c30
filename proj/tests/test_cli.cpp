#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "rcis/csv_io.hpp"

namespace fs = std::filesystem;

namespace {

const char* cli_path() { return RCIS_CLI_PATH; }

int run_cli(const std::string& args) {
  const std::string cmd = std::string(cli_path()) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "rcis_cli_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A complete config exercising design, verify, simulate and sweep sections.
std::string full_config(const std::string& out_dir) {
  return R"({
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
    "horizon": 2000,
    "seed": 7,
    "settle_periods": 2
  },
  "sweep": {"axis": "seed", "values": [1, 2, 3, 4]},
  "output_dir": ")" + out_dir + R"(",
  "grid_size": 2048
})";
}

}  // namespace

TEST_CASE("cli design writes outcome files and exits 0") {
  const fs::path dir = fresh_dir("design_ok");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, full_config((dir / "out").string()));
  CHECK(run_cli("design --config " + cfg.string()) == 0);
  CHECK(fs::exists(dir / "out" / "design_outcome.json"));
  CHECK(fs::exists(dir / "out" / "iterations.csv"));
  const std::string csv = slurp(dir / "out" / "iterations.csv");
  CHECK(csv.rfind("iter,alpha,passivity_margin,small_gain_margin", 0) == 0);
}

TEST_CASE("cli design with an unstable plant exits 2") {
  const fs::path dir = fresh_dir("design_unstable");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, R"({
    "plant": {"num": [0.0, 1.0], "den": [1.0, -1.5], "preview": 0, "sample_time": 1.0},
    "design": {"N": 20, "q_cutoff": 1.0, "q_half_order": 2},
    "output_dir": ")" + (dir / "out").string() + R"(",
    "grid_size": 512
  })");
  CHECK(run_cli("design --config " + cfg.string()) == 2);
}

TEST_CASE("cli design exits 1 with the full sweep log when the schedule is spent") {
  const fs::path dir = fresh_dir("design_exhausted");
  const fs::path cfg = dir / "config.json";
  // A long windowed-sinc Q overshoots unity in the passband, which pins the
  // passivity margin below zero at every learning gain.
  write_file(cfg, R"({
    "plant": {"num": [0.0, 0.5, 0.1], "den": [1.0, -0.8, 0.12], "preview": 0, "sample_time": 1.0},
    "design": {"N": 40, "q_cutoff": 0.9, "q_half_order": 12, "alpha_factor": 0.9, "alpha_max_iters": 5},
    "output_dir": ")" + (dir / "out").string() + R"(",
    "grid_size": 4096
  })");
  CHECK(run_cli("design --config " + cfg.string()) == 1);
  const std::string csv = slurp(dir / "out" / "iterations.csv");
  std::size_t rows = 0;
  for (char c : csv) rows += (c == '\n') ? 1 : 0;
  CHECK(rows == 7);  // header + initial evaluation + 5 alpha steps
  CHECK(slurp(dir / "out" / "design_outcome.json").find("exhausted") != std::string::npos);
}

TEST_CASE("cli rejects unknown config keys") {
  const fs::path dir = fresh_dir("unknown_key");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, R"({"plant": {"num": [0.0, 1.0], "den": [1.0]}, "bogus": 1})");
  CHECK(run_cli("verify --config " + cfg.string()) == 2);
}

TEST_CASE("cli verify exits 0 for a passing design and writes reports") {
  const fs::path dir = fresh_dir("verify_ok");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, full_config((dir / "out").string()));
  CHECK(run_cli("verify --config " + cfg.string()) == 0);
  CHECK(fs::exists(dir / "out" / "verify_report.json"));
  const std::string csv = slurp(dir / "out" / "tr_frf.csv");
  CHECK(csv.rfind("omega,re_TR,im_TR,abs_TR", 0) == 0);
}

TEST_CASE("cli verify rejects a malformed FRF file") {
  const fs::path dir = fresh_dir("verify_frf");
  const fs::path frf = dir / "frf.csv";
  write_file(frf, "omega,re,im\n0.5,1.0,0.0\n0.2,1.0,0.0\n");  // non-monotone
  const fs::path cfg = dir / "config.json";
  write_file(cfg, R"({
    "plant_frf_csv": ")" + frf.string() + R"(",
    "controller": {
      "type": "classic", "N": 20, "alpha": 1.0,
      "L": {"num": [1.0], "den": [1.0], "preview": 0, "sample_time": 1.0},
      "Q": {"num": [0.9], "den": [1.0], "preview": 0, "sample_time": 1.0}
    },
    "output_dir": ")" + (dir / "out").string() + R"("
  })");
  CHECK(run_cli("verify --config " + cfg.string()) == 2);
}

TEST_CASE("cli simulate writes the run files") {
  const fs::path dir = fresh_dir("simulate_ok");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, full_config((dir / "out").string()));
  CHECK(run_cli("simulate --config " + cfg.string()) == 0);
  CHECK(slurp(dir / "out" / "timeseries.csv").rfind("k,v,y,e,ebar,u,sampled", 0) == 0);
  CHECK(slurp(dir / "out" / "psi.csv").rfind("k", 0) == 0);
  CHECK(slurp(dir / "out" / "spectrum.csv").rfind("omega_hz,amplitude,cumulative", 0) == 0);
  CHECK(fs::exists(dir / "out" / "metrics.json"));
}

TEST_CASE("cli simulate with a zero disturbance yields all-zero series") {
  const fs::path dir = fresh_dir("simulate_zero");
  const fs::path cfg = dir / "config.json";
  std::string config = full_config((dir / "out").string());
  const std::string needle = R"("harmonics": [{"harmonic": 1, "amplitude": 1.0, "phase": 0.0}])";
  config.replace(config.find(needle), needle.size(), R"("harmonics": [])");
  write_file(cfg, config);
  CHECK(run_cli("simulate --config " + cfg.string()) == 0);
  std::istringstream ts(slurp(dir / "out" / "timeseries.csv"));
  std::string line;
  std::getline(ts, line);  // header
  while (std::getline(ts, line)) {
    // k,v,y,e,... all-zero signal columns
    CHECK(line.find(",0,0,0,0,") != std::string::npos);
  }
}

TEST_CASE("cli simulate flags divergence with exit 1") {
  const fs::path dir = fresh_dir("simulate_diverge");
  const fs::path cfg = dir / "config.json";
  // Destabilized: L = -2 (wrong-signed aggressive inverse), Q = 1, full sampling.
  write_file(cfg, R"({
    "plant": {"num": [0.0, 0.5, 0.1], "den": [1.0, -0.8, 0.12], "preview": 0, "sample_time": 0.01},
    "controller": {
      "type": "classic", "N": 40, "alpha": 1.0,
      "L": {"num": [-2.0], "den": [1.0], "preview": 0, "sample_time": 0.01},
      "Q": {"num": [1.0], "den": [1.0], "preview": 0, "sample_time": 0.01}
    },
    "scenario": {
      "disturbance": {"period": 40.0, "harmonics": [{"harmonic": 1, "amplitude": 1.0, "phase": 0.0}]},
      "timestamps": {"kind": "all"},
      "horizon": 4000,
      "seed": 1,
      "settle_periods": 0
    },
    "output_dir": ")" + (dir / "out").string() + R"(",
    "grid_size": 512
  })");
  CHECK(run_cli("simulate --config " + cfg.string()) == 1);
}

TEST_CASE("cli sweep aggregates one row per value") {
  const fs::path dir = fresh_dir("sweep_ok");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, full_config((dir / "out").string()));
  CHECK(run_cli("sweep --config " + cfg.string()) == 0);
  const std::string csv = slurp(dir / "out" / "sweep.csv");
  CHECK(csv.rfind("axis,value,initial_rms,converged_rms,reduction_factor,max_abs_e,diverged",
                  0) == 0);
  std::size_t rows = 0;
  for (char c : csv) rows += (c == '\n') ? 1 : 0;
  CHECK(rows == 5);  // header + 4 seeds

  // A stable design reduces the error in every seed realization.
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);
  while (std::getline(in, line)) {
    std::size_t pos = 0;
    for (int col = 0; col < 4; ++col) pos = line.find(',', pos) + 1;
    CHECK(std::stod(line.substr(pos)) >= 1.0);
  }
}

TEST_CASE("cli outputs are byte-identical across reruns") {
  const fs::path dir = fresh_dir("determinism");
  const fs::path cfg = dir / "config.json";

  write_file(cfg, full_config((dir / "a").string()));
  CHECK(run_cli("simulate --config " + cfg.string()) == 0);
  CHECK(run_cli("verify --config " + cfg.string() + " --out " + (dir / "b").string()) == 0);
  write_file(cfg, full_config((dir / "c").string()));
  CHECK(run_cli("simulate --config " + cfg.string()) == 0);
  CHECK(run_cli("verify --config " + cfg.string() + " --out " + (dir / "d").string()) == 0);

  CHECK(slurp(dir / "a" / "timeseries.csv") == slurp(dir / "c" / "timeseries.csv"));
  CHECK(slurp(dir / "a" / "metrics.json") == slurp(dir / "c" / "metrics.json"));
  CHECK(slurp(dir / "a" / "spectrum.csv") == slurp(dir / "c" / "spectrum.csv"));
  CHECK(slurp(dir / "b" / "verify_report.json") == slurp(dir / "d" / "verify_report.json"));
  CHECK(slurp(dir / "b" / "tr_frf.csv") == slurp(dir / "d" / "tr_frf.csv"));
}

TEST_CASE("cli handles basis controllers through verify and simulate") {
  const fs::path dir = fresh_dir("basis");
  const fs::path cfg = dir / "config.json";
  // Resonator matched to a disturbance whose period is not an integer number
  // of samples.
  write_file(cfg, R"({
    "plant": {"num": [0.0, 0.5, 0.1], "den": [1.0, -0.8, 0.12], "preview": 0, "sample_time": 0.01},
    "controller": {"type": "basis", "frequencies": [0.23827, 0.56], "gains": [0.2, 0.1]},
    "scenario": {
      "disturbance": {"period": 26.37, "harmonics": [{"omega": 0.23827, "amplitude": 1.0, "phase": 0.0}]},
      "timestamps": {"kind": "bernoulli", "p": 0.5, "seed": 2},
      "horizon": 6000, "seed": 2, "settle_periods": 3
    },
    "output_dir": ")" + (dir / "out").string() + R"(", "grid_size": 4096
  })");
  const int verify_exit = run_cli("verify --config " + cfg.string());
  CHECK(verify_exit != 2);  // grid margins may fail, the computation must run
  CHECK(fs::exists(dir / "out" / "verify_report.json"));
  CHECK(fs::exists(dir / "out" / "tr_frf.csv"));

  CHECK(run_cli("simulate --config " + cfg.string()) == 0);
  const std::string metrics = slurp(dir / "out" / "metrics.json");
  CHECK(metrics.find("\"diverged\": false") != std::string::npos);
}

TEST_CASE("cli grid-size override lands in the reports") {
  const fs::path dir = fresh_dir("grid_override");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, full_config((dir / "out").string()));
  CHECK(run_cli("verify --config " + cfg.string() + " --grid-size 1024") == 0);
  const std::string report = slurp(dir / "out" / "verify_report.json");
  CHECK(report.find("\"grid_size\": 1024") != std::string::npos);
}

TEST_CASE("cli sweep axis override runs alpha and p sweeps") {
  const fs::path dir = fresh_dir("sweep_axes");
  fs::path cfg = dir / "config.json";
  std::string config = full_config((dir / "alpha").string());
  const std::string needle = R"("values": [1, 2, 3, 4])";
  config.replace(config.find(needle), needle.size(), R"("values": [0.5, 1.0])");
  write_file(cfg, config);
  CHECK(run_cli("sweep --config " + cfg.string() + " --axis alpha") == 0);
  CHECK(slurp(dir / "alpha" / "sweep.csv").find("alpha,0.5,") != std::string::npos);

  config = full_config((dir / "p").string());
  config.replace(config.find(needle), needle.size(), R"("values": [0.4, 0.9])");
  write_file(cfg, config);
  CHECK(run_cli("sweep --config " + cfg.string() + " --axis p") == 0);
  CHECK(slurp(dir / "p" / "sweep.csv").find("\np,0.4") != std::string::npos);
}

TEST_CASE("cli seed override changes the realization") {
  const fs::path dir = fresh_dir("seed_override");
  const fs::path cfg = dir / "config.json";
  write_file(cfg, full_config((dir / "a").string()));
  CHECK(run_cli("simulate --config " + cfg.string()) == 0);
  write_file(cfg, full_config((dir / "b").string()));
  CHECK(run_cli("simulate --config " + cfg.string() + " --seed 99") == 0);
  CHECK(slurp(dir / "a" / "psi.csv") != slurp(dir / "b" / "psi.csv"));
}
