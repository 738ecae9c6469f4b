#pragma once

#include <string>

#include "desal/domain.hpp"
#include "desal/grid.hpp"
#include "desal/milp.hpp"
#include "desal/pump.hpp"

// Configuration bundle and full case data loaded from one JSON document
// plus the CSV series it references.

namespace desal {

struct GridConfig {
  double pv_rating = 1000.0;  // kW
  int substation = 0;
  int hdp_node = 17;
  double v_base_kv = 12.66;
  double s_base_kva = 1000.0;
  double v_sq_sub = 1.0;
  double v_min_pu = 0.95;
  double v_max_pu = 1.05;

  void validate() const;
};

// Breakpoint steps of the linearized surfaces. Every run log reports
// these; the brine/concentrate steps have no counterpart in the pump/tank
// defaults and are this project's choice.
struct PwlSettings {
  double flow_step = 25.0;      // feed flow [m3/hr]
  double speed_step = 0.05;     // normalized speed
  double tank_volume_step = 180.0;  // m3
  double tank_tds_step = 0.05;      // kg/m3
  double brine_tds_step = 4.0;      // kg/m3
  double conc_tds_step = 1.0;       // kg/m3 (S_ro axis)
  double brine_flow_step = 25.0;    // m3/hr
  double conc_flow_step = 50.0;     // m3/hr (F_fd + F_br axis)
  double tank_tds_max = 0.90;       // upper end of the tank TDS axis
};

struct DataPaths {
  std::string pump_curve = "pump_curve.csv";
  std::string buy_price = "buy_price.csv";
  std::string pv_forecast = "pv_forecast.csv";
  std::string water_demand = "water_demand.csv";
  std::string network = "network.csv";
  std::string peak_load = "peak_load.csv";
  std::string load_profile = "load_profile.csv";
};

struct ConfigBundle {
  TimeGrid time;
  PlantConfig plant;
  TankConfig tank;
  FlushConfig flush;
  PumpLimits pump_limits;
  int pump_stages = 8;
  GridConfig grid;
  PwlSettings pwl;
  SolverOptions solver;
  DataPaths data;
  double sell_price_ratio = 0.5;  // sell price = ratio * buy price

  void validate() const;
};

// Parses the JSON configuration document. Missing required keys raise
// ConfigError naming the field; optional keys fall back to the defaults
// above. Unknown keys are rejected.
ConfigBundle parse_config(const std::string& json_text);
ConfigBundle load_config(const std::string& path);
std::string serialize_config(const ConfigBundle& cfg);

struct CaseData {
  ConfigBundle cfg;
  PumpCurve pump;
  MarketSeries market;
  NetworkModel network;
  std::vector<std::vector<NodeLoad>> base_load;  // [hour][node], kW/kvar
};

// Loads the config and every CSV it references (paths relative to the
// config file's directory).
CaseData load_case(const std::string& config_path);

}  // namespace desal
