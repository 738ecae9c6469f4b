#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

// Core semantic types shared by every module.
//
// Units are fixed project-wide: flows m3/hr, volumes m3, pressures kPa,
// TDS kg/m3, power kW, energy kWh, prices $/kWh, durations hours.

namespace desal {

class ConfigError : public std::runtime_error {
public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

class DataError : public std::runtime_error {
public:
  explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

struct TimeGrid {
  int horizon_steps = 24;   // T
  double step_hours = 1.0;  // dt [hr]

  void validate() const;
};

// RO plant constants. The membrane coefficients fold the temperature
// correction factor into constants for the run.
struct PlantConfig {
  double seawater_tds = 42.0;          // S_fd [kg/m3]
  double feed_pressure_min = 6000.0;   // H_fd lower bound [kPa]
  double feed_pressure_max = 6500.0;   // H_fd upper bound [kPa]
  double permeate_pressure_set = 100.0;  // H_pe when on [kPa]
  double friction_coeff = 0.97;        // brine head = k * feed head
  double osmotic_coeff = 50.0;         // kPa per kg/m3
  double cp_factor = 1.05;             // concentration polarization
  double water_perm_coeff = 0.032;     // m3/hr per kPa
  double salt_perm_coeff = 0.45;       // m3/hr
  double recovery_min = 0.30;
  double recovery_max = 0.50;
  double feed_flow_min = 100.0;        // m3/hr
  double feed_flow_max = 325.0;        // m3/hr
  double brine_tds_max = 85.0;         // kg/m3
  double permeate_tds_max = 0.35;      // kg/m3
  double outflow_tds_max = 0.35;       // kg/m3
  bool mixing_flexibility = false;     // allows permeate_tds_max > outflow_tds_max

  void validate() const;
};

struct TankConfig {
  double capacity = 1800.0;        // m3
  double min_level = 360.0;        // m3
  double initial_level = 720.0;    // m3
  double initial_tds = 0.30;       // kg/m3
  double flush_tds_estimate = 0.30;  // S_tk_ave used for flush water salt

  void validate() const;
};

struct FlushConfig {
  double water_shutdown = 15.0;   // m3 per shutdown flush
  double water_restart = 15.0;    // m3 per restart flush
  double energy_shutdown = 60.0;  // kWh per shutdown flush
  double energy_restart = 60.0;   // kWh per restart flush
  int min_off_hours = 2;          // D_shut

  void validate() const;
};

// Hourly market and demand data. Base load lives in grid::NetworkSeries;
// here we keep the single-node series.
struct MarketSeries {
  std::vector<double> buy_price;     // $/kWh
  std::vector<double> sell_price;    // $/kWh
  std::vector<double> pv_forecast;   // kW
  std::vector<double> water_demand;  // m3/hr

  void validate(int horizon) const;
};

// hour,value CSV with a strictly increasing hour column.
std::vector<double> load_timeseries(const std::string& path, int expected_len);
std::vector<double> parse_timeseries(const std::string& text, int expected_len,
                                     const std::string& source_name);

}  // namespace desal
