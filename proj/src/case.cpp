#include "desal/case.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace desal {

namespace {

using nlohmann::json;

class Section {
public:
  Section(const json& j, std::string name) : name_(std::move(name)) {
    if (!j.is_object()) throw ConfigError("config: '" + name_ + "' must be an object");
    obj_ = &j;
  }

  template <typename T>
  void opt(const char* key, T& out) {
    seen_.push_back(key);
    const auto it = obj_->find(key);
    if (it == obj_->end()) return;
    try {
      out = it->get<T>();
    } catch (const json::exception&) {
      throw ConfigError("config: bad value type for '" + name_ + "." + key + "'");
    }
  }

  void finish() const {
    for (const auto& [key, value] : obj_->items()) {
      (void)value;
      bool known = false;
      for (const auto& k : seen_)
        if (key == k) known = true;
      if (!known)
        throw ConfigError("config: unknown key '" + name_ + "." + key + "'");
    }
  }

private:
  const json* obj_ = nullptr;
  std::string name_;
  std::vector<std::string> seen_;
};

const json* sub(const json& root, const char* key) {
  const auto it = root.find(key);
  return it == root.end() ? nullptr : &*it;
}

}  // namespace

void GridConfig::validate() const {
  if (pv_rating < 0) throw ConfigError("grid.pv_rating: must be non-negative");
  if (v_base_kv <= 0) throw ConfigError("grid.v_base_kv: must be positive");
  if (s_base_kva <= 0) throw ConfigError("grid.s_base_kva: must be positive");
  if (!(v_min_pu > 0 && v_min_pu < v_max_pu))
    throw ConfigError("grid.v_min_pu/v_max_pu: need 0 < min < max");
  if (v_sq_sub < v_min_pu * v_min_pu || v_sq_sub > v_max_pu * v_max_pu)
    throw ConfigError("grid.v_sq_sub: substation voltage outside band");
}

void ConfigBundle::validate() const {
  time.validate();
  plant.validate();
  tank.validate();
  flush.validate();
  pump_limits.validate();
  grid.validate();
  if (pump_stages < 1) throw ConfigError("pump.stages: must be at least 1");
  if (sell_price_ratio < 0 || sell_price_ratio > 1)
    throw ConfigError("market.sell_price_ratio: must be in [0, 1]");
  if (solver.gap < 0) throw ConfigError("solver.gap: must be non-negative");
  if (solver.time_limit_s <= 0)
    throw ConfigError("solver.time_limit_s: must be positive");
  auto pos = [](double v, const char* what) {
    if (v <= 0) throw ConfigError(std::string("pwl.") + what + ": must be positive");
  };
  pos(pwl.flow_step, "flow_step");
  pos(pwl.speed_step, "speed_step");
  pos(pwl.tank_volume_step, "tank_volume_step");
  pos(pwl.tank_tds_step, "tank_tds_step");
  pos(pwl.brine_tds_step, "brine_tds_step");
  pos(pwl.conc_tds_step, "conc_tds_step");
  pos(pwl.brine_flow_step, "brine_flow_step");
  pos(pwl.conc_flow_step, "conc_flow_step");
  if (pwl.tank_tds_max <= tank.initial_tds)
    throw ConfigError("pwl.tank_tds_max: must exceed the initial tank TDS");
}

ConfigBundle parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ConfigError("config: document must be an object");

  ConfigBundle cfg;
  std::vector<std::string> known_sections;

  auto section = [&](const char* key) -> const json* {
    known_sections.push_back(key);
    return sub(root, key);
  };

  if (const json* j = section("time")) {
    Section s(*j, "time");
    s.opt("horizon_steps", cfg.time.horizon_steps);
    s.opt("step_hours", cfg.time.step_hours);
    s.finish();
  }
  if (const json* j = section("plant")) {
    Section s(*j, "plant");
    s.opt("seawater_tds", cfg.plant.seawater_tds);
    s.opt("feed_pressure_min", cfg.plant.feed_pressure_min);
    s.opt("feed_pressure_max", cfg.plant.feed_pressure_max);
    s.opt("permeate_pressure_set", cfg.plant.permeate_pressure_set);
    s.opt("friction_coeff", cfg.plant.friction_coeff);
    s.opt("osmotic_coeff", cfg.plant.osmotic_coeff);
    s.opt("cp_factor", cfg.plant.cp_factor);
    s.opt("water_perm_coeff", cfg.plant.water_perm_coeff);
    s.opt("salt_perm_coeff", cfg.plant.salt_perm_coeff);
    s.opt("recovery_min", cfg.plant.recovery_min);
    s.opt("recovery_max", cfg.plant.recovery_max);
    s.opt("feed_flow_min", cfg.plant.feed_flow_min);
    s.opt("feed_flow_max", cfg.plant.feed_flow_max);
    s.opt("brine_tds_max", cfg.plant.brine_tds_max);
    s.opt("permeate_tds_max", cfg.plant.permeate_tds_max);
    s.opt("outflow_tds_max", cfg.plant.outflow_tds_max);
    s.opt("mixing_flexibility", cfg.plant.mixing_flexibility);
    s.finish();
  }
  if (const json* j = section("tank")) {
    Section s(*j, "tank");
    s.opt("capacity", cfg.tank.capacity);
    s.opt("min_level", cfg.tank.min_level);
    s.opt("initial_level", cfg.tank.initial_level);
    s.opt("initial_tds", cfg.tank.initial_tds);
    s.opt("flush_tds_estimate", cfg.tank.flush_tds_estimate);
    s.finish();
  }
  if (const json* j = section("flush")) {
    Section s(*j, "flush");
    s.opt("water_shutdown", cfg.flush.water_shutdown);
    s.opt("water_restart", cfg.flush.water_restart);
    s.opt("energy_shutdown", cfg.flush.energy_shutdown);
    s.opt("energy_restart", cfg.flush.energy_restart);
    s.opt("min_off_hours", cfg.flush.min_off_hours);
    s.finish();
  }
  if (const json* j = section("pump")) {
    Section s(*j, "pump");
    s.opt("flow_max_nominal", cfg.pump_limits.flow_max_nominal);
    s.opt("speed_min", cfg.pump_limits.speed_min);
    s.opt("speed_max", cfg.pump_limits.speed_max);
    s.opt("power_max", cfg.pump_limits.power_max);
    s.opt("motor_eff", cfg.pump_limits.motor_eff);
    s.opt("vfd_eff", cfg.pump_limits.vfd_eff);
    s.opt("q_over_p", cfg.pump_limits.q_over_p);
    s.opt("stages", cfg.pump_stages);
    s.finish();
  }
  if (const json* j = section("grid")) {
    Section s(*j, "grid");
    s.opt("pv_rating", cfg.grid.pv_rating);
    s.opt("substation", cfg.grid.substation);
    s.opt("hdp_node", cfg.grid.hdp_node);
    s.opt("v_base_kv", cfg.grid.v_base_kv);
    s.opt("s_base_kva", cfg.grid.s_base_kva);
    s.opt("v_sq_sub", cfg.grid.v_sq_sub);
    s.opt("v_min_pu", cfg.grid.v_min_pu);
    s.opt("v_max_pu", cfg.grid.v_max_pu);
    s.finish();
  }
  if (const json* j = section("pwl")) {
    Section s(*j, "pwl");
    s.opt("flow_step", cfg.pwl.flow_step);
    s.opt("speed_step", cfg.pwl.speed_step);
    s.opt("tank_volume_step", cfg.pwl.tank_volume_step);
    s.opt("tank_tds_step", cfg.pwl.tank_tds_step);
    s.opt("brine_tds_step", cfg.pwl.brine_tds_step);
    s.opt("conc_tds_step", cfg.pwl.conc_tds_step);
    s.opt("brine_flow_step", cfg.pwl.brine_flow_step);
    s.opt("conc_flow_step", cfg.pwl.conc_flow_step);
    s.opt("tank_tds_max", cfg.pwl.tank_tds_max);
    s.finish();
  }
  if (const json* j = section("solver")) {
    Section s(*j, "solver");
    s.opt("gap", cfg.solver.gap);
    s.opt("time_limit_s", cfg.solver.time_limit_s);
    s.opt("threads", cfg.solver.threads);
    s.opt("verbose", cfg.solver.verbose);
    s.finish();
  }
  if (const json* j = section("data")) {
    Section s(*j, "data");
    s.opt("pump_curve", cfg.data.pump_curve);
    s.opt("buy_price", cfg.data.buy_price);
    s.opt("pv_forecast", cfg.data.pv_forecast);
    s.opt("water_demand", cfg.data.water_demand);
    s.opt("network", cfg.data.network);
    s.opt("peak_load", cfg.data.peak_load);
    s.opt("load_profile", cfg.data.load_profile);
    s.finish();
  }
  if (const json* j = section("market")) {
    Section s(*j, "market");
    s.opt("sell_price_ratio", cfg.sell_price_ratio);
    s.finish();
  }

  for (const auto& [key, value] : root.items()) {
    (void)value;
    bool known = false;
    for (const auto& k : known_sections)
      if (key == k) known = true;
    if (!known) throw ConfigError("config: unknown section '" + key + "'");
  }

  cfg.validate();
  return cfg;
}

ConfigBundle load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const ConfigBundle& cfg) {
  json root;
  root["time"] = {{"horizon_steps", cfg.time.horizon_steps},
                  {"step_hours", cfg.time.step_hours}};
  root["plant"] = {{"seawater_tds", cfg.plant.seawater_tds},
                   {"feed_pressure_min", cfg.plant.feed_pressure_min},
                   {"feed_pressure_max", cfg.plant.feed_pressure_max},
                   {"permeate_pressure_set", cfg.plant.permeate_pressure_set},
                   {"friction_coeff", cfg.plant.friction_coeff},
                   {"osmotic_coeff", cfg.plant.osmotic_coeff},
                   {"cp_factor", cfg.plant.cp_factor},
                   {"water_perm_coeff", cfg.plant.water_perm_coeff},
                   {"salt_perm_coeff", cfg.plant.salt_perm_coeff},
                   {"recovery_min", cfg.plant.recovery_min},
                   {"recovery_max", cfg.plant.recovery_max},
                   {"feed_flow_min", cfg.plant.feed_flow_min},
                   {"feed_flow_max", cfg.plant.feed_flow_max},
                   {"brine_tds_max", cfg.plant.brine_tds_max},
                   {"permeate_tds_max", cfg.plant.permeate_tds_max},
                   {"outflow_tds_max", cfg.plant.outflow_tds_max},
                   {"mixing_flexibility", cfg.plant.mixing_flexibility}};
  root["tank"] = {{"capacity", cfg.tank.capacity},
                  {"min_level", cfg.tank.min_level},
                  {"initial_level", cfg.tank.initial_level},
                  {"initial_tds", cfg.tank.initial_tds},
                  {"flush_tds_estimate", cfg.tank.flush_tds_estimate}};
  root["flush"] = {{"water_shutdown", cfg.flush.water_shutdown},
                   {"water_restart", cfg.flush.water_restart},
                   {"energy_shutdown", cfg.flush.energy_shutdown},
                   {"energy_restart", cfg.flush.energy_restart},
                   {"min_off_hours", cfg.flush.min_off_hours}};
  root["pump"] = {{"flow_max_nominal", cfg.pump_limits.flow_max_nominal},
                  {"speed_min", cfg.pump_limits.speed_min},
                  {"speed_max", cfg.pump_limits.speed_max},
                  {"power_max", cfg.pump_limits.power_max},
                  {"motor_eff", cfg.pump_limits.motor_eff},
                  {"vfd_eff", cfg.pump_limits.vfd_eff},
                  {"q_over_p", cfg.pump_limits.q_over_p},
                  {"stages", cfg.pump_stages}};
  root["grid"] = {{"pv_rating", cfg.grid.pv_rating},
                  {"substation", cfg.grid.substation},
                  {"hdp_node", cfg.grid.hdp_node},
                  {"v_base_kv", cfg.grid.v_base_kv},
                  {"s_base_kva", cfg.grid.s_base_kva},
                  {"v_sq_sub", cfg.grid.v_sq_sub},
                  {"v_min_pu", cfg.grid.v_min_pu},
                  {"v_max_pu", cfg.grid.v_max_pu}};
  root["pwl"] = {{"flow_step", cfg.pwl.flow_step},
                 {"speed_step", cfg.pwl.speed_step},
                 {"tank_volume_step", cfg.pwl.tank_volume_step},
                 {"tank_tds_step", cfg.pwl.tank_tds_step},
                 {"brine_tds_step", cfg.pwl.brine_tds_step},
                 {"conc_tds_step", cfg.pwl.conc_tds_step},
                 {"brine_flow_step", cfg.pwl.brine_flow_step},
                 {"conc_flow_step", cfg.pwl.conc_flow_step},
                 {"tank_tds_max", cfg.pwl.tank_tds_max}};
  root["solver"] = {{"gap", cfg.solver.gap},
                    {"time_limit_s", cfg.solver.time_limit_s},
                    {"threads", cfg.solver.threads},
                    {"verbose", cfg.solver.verbose}};
  root["data"] = {{"pump_curve", cfg.data.pump_curve},
                  {"buy_price", cfg.data.buy_price},
                  {"pv_forecast", cfg.data.pv_forecast},
                  {"water_demand", cfg.data.water_demand},
                  {"network", cfg.data.network},
                  {"peak_load", cfg.data.peak_load},
                  {"load_profile", cfg.data.load_profile}};
  root["market"] = {{"sell_price_ratio", cfg.sell_price_ratio}};
  return root.dump(2) + "\n";
}

CaseData load_case(const std::string& config_path) {
  namespace fs = std::filesystem;
  CaseData data;
  data.cfg = load_config(config_path);
  const fs::path dir = fs::path(config_path).parent_path();
  auto resolve = [&](const std::string& rel) {
    const fs::path p(rel);
    return p.is_absolute() ? p.string() : (dir / p).string();
  };
  const auto& cfg = data.cfg;
  const int T = cfg.time.horizon_steps;

  const auto samples = load_pump_samples(resolve(cfg.data.pump_curve));
  data.pump = fit_pump_curves(samples, cfg.pump_stages);

  data.market.buy_price = load_timeseries(resolve(cfg.data.buy_price), T);
  data.market.pv_forecast = load_timeseries(resolve(cfg.data.pv_forecast), T);
  data.market.water_demand = load_timeseries(resolve(cfg.data.water_demand), T);
  data.market.sell_price.resize(T);
  for (int t = 0; t < T; ++t)
    data.market.sell_price[t] = cfg.sell_price_ratio * data.market.buy_price[t];
  data.market.validate(T);

  data.network = load_network(resolve(cfg.data.network), cfg.grid.substation,
                              cfg.grid.hdp_node, cfg.grid.v_base_kv,
                              cfg.grid.s_base_kva);
  data.network.v_sq_sub = cfg.grid.v_sq_sub;
  data.network.v_sq_min = cfg.grid.v_min_pu * cfg.grid.v_min_pu;
  data.network.v_sq_max = cfg.grid.v_max_pu * cfg.grid.v_max_pu;

  const auto peak = load_peak_loads(resolve(cfg.data.peak_load),
                                    data.network.n_nodes);
  const auto profile = load_timeseries(resolve(cfg.data.load_profile), T);
  data.base_load.assign(T, std::vector<NodeLoad>(data.network.n_nodes));
  for (int t = 0; t < T; ++t) {
    if (profile[t] < 0)
      throw DataError(cfg.data.load_profile + ": negative profile value at hour " +
                      std::to_string(t));
    for (int j = 0; j < data.network.n_nodes; ++j)
      data.base_load[t][j] = {peak[j].p * profile[t], peak[j].q * profile[t]};
  }
  return data;
}

}  // namespace desal
