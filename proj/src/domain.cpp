#include "desal/domain.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace desal {

namespace {

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

}  // namespace

void TimeGrid::validate() const {
  require(horizon_steps >= 1, "time.horizon_steps must be >= 1");
  require(step_hours > 0, "time.step_hours must be > 0");
}

void PlantConfig::validate() const {
  require(seawater_tds > 0, "plant.seawater_tds must be > 0");
  require(recovery_min > 0 && recovery_min <= recovery_max && recovery_max < 1,
          "plant.recovery bounds must satisfy 0 < min <= max < 1");
  require(feed_pressure_min <= feed_pressure_max,
          "plant.feed_pressure_min exceeds feed_pressure_max");
  require(feed_flow_min >= 0 && feed_flow_min <= feed_flow_max,
          "plant.feed_flow bounds inverted");
  require(permeate_tds_max >= 0, "plant.permeate_tds_max must be >= 0");
  require(seawater_tds <= brine_tds_max,
          "plant.brine_tds_max below seawater_tds");
  require(friction_coeff > 0 && friction_coeff <= 1,
          "plant.friction_coeff must be in (0, 1]");
  require(osmotic_coeff > 0, "plant.osmotic_coeff must be > 0");
  require(cp_factor >= 1, "plant.cp_factor must be >= 1");
  require(water_perm_coeff > 0, "plant.water_perm_coeff must be > 0");
  require(salt_perm_coeff > 0, "plant.salt_perm_coeff must be > 0");
  if (!mixing_flexibility)
    require(outflow_tds_max >= permeate_tds_max,
            "plant.outflow_tds_max below permeate_tds_max requires "
            "mixing_flexibility");
}

void TankConfig::validate() const {
  require(min_level >= 0, "tank.min_level must be >= 0");
  require(min_level <= initial_level && initial_level <= capacity,
          "tank levels must satisfy min_level <= initial_level <= capacity");
  require(initial_tds >= 0, "tank.initial_tds must be >= 0");
  require(flush_tds_estimate >= 0, "tank.flush_tds_estimate must be >= 0");
}

void FlushConfig::validate() const {
  require(water_shutdown >= 0 && water_restart >= 0 && energy_shutdown >= 0 &&
              energy_restart >= 0,
          "flush consumptions must be >= 0");
  require(min_off_hours >= 1, "flush.min_off_hours must be >= 1");
}

void MarketSeries::validate(int horizon) const {
  auto len = static_cast<size_t>(horizon);
  require(buy_price.size() == len, "buy_price length != horizon");
  require(sell_price.size() == len, "sell_price length != horizon");
  require(pv_forecast.size() == len, "pv_forecast length != horizon");
  require(water_demand.size() == len, "water_demand length != horizon");
  for (int t = 0; t < horizon; ++t) {
    require(sell_price[t] <= buy_price[t] + 1e-12,
            "sell_price exceeds buy_price at hour " + std::to_string(t));
    require(water_demand[t] >= 0,
            "negative water_demand at hour " + std::to_string(t));
  }
}

std::vector<double> parse_timeseries(const std::string& text, int expected_len,
                                     const std::string& source_name) {
  std::istringstream in(text);
  std::string line;
  std::vector<double> values;
  double prev_hour = -std::numeric_limits<double>::infinity();
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string hour_tok, value_tok;
    if (!std::getline(ls, hour_tok, ',') || !std::getline(ls, value_tok, ','))
      throw DataError(source_name + ": malformed row '" + line + "'");
    if (first) {
      first = false;
      // optional header
      try {
        (void)std::stod(hour_tok);
      } catch (const std::exception&) {
        continue;
      }
    }
    double hour, value;
    try {
      size_t p1 = 0, p2 = 0;
      hour = std::stod(hour_tok, &p1);
      value = std::stod(value_tok, &p2);
    } catch (const std::exception&) {
      throw DataError(source_name + ": non-numeric cell in row '" + line + "'");
    }
    if (hour <= prev_hour)
      throw DataError(source_name + ": non-monotone timestamp at hour " +
                      hour_tok);
    prev_hour = hour;
    values.push_back(value);
  }
  if (static_cast<int>(values.size()) != expected_len)
    throw DataError(source_name + ": expected " + std::to_string(expected_len) +
                    " rows, found " + std::to_string(values.size()));
  return values;
}

std::vector<double> load_timeseries(const std::string& path, int expected_len) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open time series file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_timeseries(buf.str(), expected_len, path);
}

}  // namespace desal
