#include "rcis/config.hpp"

#include <set>

#include <json.hpp>

#include "rcis/csv_io.hpp"
#include "rcis/errors.hpp"

namespace rcis {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  if (!obj.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
  }
}

double get_number(const json& obj, const std::string& where, const std::string& key,
                  std::optional<double> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(where + " is missing required key '" + key + "'");
  }
  if (!obj[key].is_number()) throw ConfigError(where + "." + key + " must be a number");
  return obj[key].get<double>();
}

std::int64_t get_int(const json& obj, const std::string& where, const std::string& key,
                     std::optional<std::int64_t> fallback = std::nullopt) {
  if (!obj.contains(key)) {
    if (fallback) return *fallback;
    throw ConfigError(where + " is missing required key '" + key + "'");
  }
  if (!obj[key].is_number_integer()) {
    throw ConfigError(where + "." + key + " must be an integer");
  }
  return obj[key].get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& where, const std::string& key,
              bool fallback) {
  if (!obj.contains(key)) return fallback;
  if (!obj[key].is_boolean()) throw ConfigError(where + "." + key + " must be a boolean");
  return obj[key].get<bool>();
}

std::vector<double> get_double_list(const json& obj, const std::string& where,
                                    const std::string& key) {
  if (!obj.contains(key) || !obj[key].is_array()) {
    throw ConfigError(where + "." + key + " must be an array of numbers");
  }
  std::vector<double> out;
  for (const auto& v : obj[key]) {
    if (!v.is_number()) throw ConfigError(where + "." + key + " must contain only numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

TransferFunction parse_tf(const json& obj, const std::string& where) {
  require_keys(obj, where, {"num", "den", "preview", "sample_time"});
  const std::vector<double> num = get_double_list(obj, where, "num");
  std::vector<double> den{1.0};
  if (obj.contains("den")) den = get_double_list(obj, where, "den");
  const auto preview = static_cast<int>(get_int(obj, where, "preview", 0));
  const double ts = get_number(obj, where, "sample_time", 1.0);
  try {
    return TransferFunction(num, den, preview, ts);
  } catch (const InvalidParameters& e) {
    throw ConfigError(where + ": " + e.what());
  }
}

TimestampGenerator parse_generator(const json& obj, const std::string& where) {
  require_keys(obj, where,
               {"kind", "p", "seed", "m", "offset", "loss_len", "cycle_len", "line_spacing",
                "position_trajectory"});
  if (!obj.contains("kind") || !obj["kind"].is_string()) {
    throw ConfigError(where + ".kind must be a string");
  }
  const std::string kind = obj["kind"].get<std::string>();
  if (kind == "all") return TimestampGenerator::all();
  if (kind == "none") return TimestampGenerator::none();
  if (kind == "bernoulli") {
    return TimestampGenerator::bernoulli(
        get_number(obj, where, "p"),
        static_cast<std::uint64_t>(get_int(obj, where, "seed", 0)));
  }
  if (kind == "periodic") {
    return TimestampGenerator::periodic(get_int(obj, where, "m"),
                                        get_int(obj, where, "offset", 0));
  }
  if (kind == "burst") {
    return TimestampGenerator::burst(
        get_int(obj, where, "loss_len"), get_int(obj, where, "cycle_len"),
        static_cast<std::uint64_t>(get_int(obj, where, "seed", 0)));
  }
  if (kind == "encoder") {
    return TimestampGenerator::encoder(get_number(obj, where, "line_spacing"),
                                       get_double_list(obj, where, "position_trajectory"));
  }
  throw ConfigError(where + ".kind must be one of all|none|bernoulli|periodic|burst|encoder");
}

std::variant<RcConfig, BasisRcConfig> parse_controller(const json& obj,
                                                       const std::string& where) {
  if (!obj.contains("type") || !obj["type"].is_string()) {
    throw ConfigError(where + ".type must be a string");
  }
  const std::string type = obj["type"].get<std::string>();
  if (type == "classic") {
    require_keys(obj, where, {"type", "N", "alpha", "L", "Q"});
    RcConfig cfg;
    cfg.buffer_length = get_int(obj, where, "N");
    cfg.alpha = get_number(obj, where, "alpha", 1.0);
    if (!obj.contains("L") || !obj.contains("Q")) {
      throw ConfigError(where + " requires L and Q transfer functions");
    }
    cfg.learning = parse_tf(obj["L"], where + ".L");
    cfg.robustness = parse_tf(obj["Q"], where + ".Q");
    try {
      cfg.validate();
    } catch (const std::runtime_error& e) {
      throw ConfigError(where + ": " + e.what());
    }
    return cfg;
  }
  if (type == "basis") {
    require_keys(obj, where, {"type", "frequencies", "gains"});
    BasisRcConfig cfg;
    cfg.frequencies = get_double_list(obj, where, "frequencies");
    cfg.gains = get_double_list(obj, where, "gains");
    try {
      cfg.validate();
    } catch (const std::runtime_error& e) {
      throw ConfigError(where + ": " + e.what());
    }
    return cfg;
  }
  throw ConfigError(where + ".type must be 'classic' or 'basis'");
}

Disturbance parse_disturbance(const json& obj, const std::string& where) {
  require_keys(obj, where, {"period", "harmonics"});
  Disturbance d;
  d.period = get_number(obj, where, "period");
  if (!obj.contains("harmonics") || !obj["harmonics"].is_array()) {
    throw ConfigError(where + ".harmonics must be an array");
  }
  std::size_t idx = 0;
  for (const auto& h : obj["harmonics"]) {
    const std::string hw = where + ".harmonics[" + std::to_string(idx++) + "]";
    require_keys(h, hw, {"harmonic", "omega", "amplitude", "phase"});
    Harmonic out;
    if (h.contains("harmonic")) out.harmonic = static_cast<int>(get_int(h, hw, "harmonic"));
    if (h.contains("omega")) out.omega = get_number(h, hw, "omega");
    out.amplitude = get_number(h, hw, "amplitude", 1.0);
    out.phase = get_number(h, hw, "phase", 0.0);
    d.harmonics.push_back(out);
  }
  return d;
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  require_keys(doc, "config",
               {"plant", "plant_frf_csv", "design", "controller", "scenario", "sweep",
                "output_dir", "grid_size"});

  RunConfig cfg;
  if (doc.contains("plant")) cfg.plant = parse_tf(doc["plant"], "plant");
  if (doc.contains("plant_frf_csv")) {
    if (!doc["plant_frf_csv"].is_string()) throw ConfigError("plant_frf_csv must be a string");
    cfg.plant_frf_csv = doc["plant_frf_csv"].get<std::string>();
  }
  if (doc.contains("design")) {
    const json& d = doc["design"];
    require_keys(d, "design",
                 {"N", "q_cutoff", "q_half_order", "alpha_factor", "alpha_max_iters",
                  "notch_enabled", "notch_depth", "notch_width"});
    RunConfig::DesignSection section;
    section.buffer_length = get_int(d, "design", "N");
    section.q_cutoff = get_number(d, "design", "q_cutoff");
    section.q_half_order = static_cast<int>(get_int(d, "design", "q_half_order", 8));
    section.alpha_factor = get_number(d, "design", "alpha_factor", 0.9);
    section.alpha_max_iters = get_int(d, "design", "alpha_max_iters", 40);
    section.notch_enabled = get_bool(d, "design", "notch_enabled", false);
    section.notch_depth = get_number(d, "design", "notch_depth", 0.5);
    section.notch_width = get_number(d, "design", "notch_width", 0.1);
    cfg.design = section;
  }
  if (doc.contains("controller")) {
    cfg.controller = parse_controller(doc["controller"], "controller");
  }
  if (doc.contains("scenario")) {
    const json& s = doc["scenario"];
    require_keys(s, "scenario",
                 {"disturbance", "timestamps", "horizon", "seed", "settle_periods"});
    RunConfig::ScenarioSection section;
    if (!s.contains("disturbance")) throw ConfigError("scenario.disturbance is required");
    section.disturbance = parse_disturbance(s["disturbance"], "scenario.disturbance");
    if (!s.contains("timestamps")) throw ConfigError("scenario.timestamps is required");
    section.timestamps = parse_generator(s["timestamps"], "scenario.timestamps");
    section.horizon = get_int(s, "scenario", "horizon");
    section.seed = static_cast<std::uint64_t>(get_int(s, "scenario", "seed", 0));
    section.settle_periods = get_int(s, "scenario", "settle_periods", 2);
    cfg.scenario = section;
  }
  if (doc.contains("sweep")) {
    const json& s = doc["sweep"];
    require_keys(s, "sweep", {"axis", "values"});
    RunConfig::SweepSection section;
    if (!s.contains("axis") || !s["axis"].is_string()) {
      throw ConfigError("sweep.axis must be a string");
    }
    section.axis = s["axis"].get<std::string>();
    if (section.axis != "seed" && section.axis != "alpha" && section.axis != "p") {
      throw ConfigError("sweep.axis must be one of seed|alpha|p");
    }
    section.values = get_double_list(s, "sweep", "values");
    if (section.values.empty()) throw ConfigError("sweep.values must be non-empty");
    cfg.sweep = section;
  }
  if (doc.contains("output_dir")) {
    if (!doc["output_dir"].is_string()) throw ConfigError("output_dir must be a string");
    cfg.output_dir = doc["output_dir"].get<std::string>();
  }
  if (doc.contains("grid_size")) {
    const std::int64_t n = get_int(doc, "config", "grid_size");
    if (n < 2) throw ConfigError("grid_size must be >= 2");
    cfg.grid_size = static_cast<std::size_t>(n);
  }
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  return parse_run_config(read_text_file(path));
}

}  // namespace rcis
