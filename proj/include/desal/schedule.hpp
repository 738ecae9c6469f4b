#pragma once

#include <string>
#include <vector>

#include "desal/milp.hpp"

// Decision trajectory produced by the scheduler and consumed by the
// verifier and the CLI reports.

namespace desal {

enum class FlexibilityMode { NoMix, MixIni, MixFlex, MixFlexIni };

FlexibilityMode parse_mode(const std::string& name);
std::string mode_name(FlexibilityMode mode);

// Mode switches fixed by the case definitions: tank-mixing constraints,
// end-of-horizon TDS closure, and the permeate TDS cap.
bool mode_mixing(FlexibilityMode mode);
bool mode_end_closure(FlexibilityMode mode);

struct HourPlan {
  bool on = false;
  bool shut = false;
  bool start = false;
  double speed = 0;
  double feed_flow = 0, permeate_flow = 0, brine_flow = 0;  // m3/hr
  double feed_head = 0;        // kPa
  double brine_tds = 0;        // kg/m3 (implied when on)
  double conc_tds = 0;         // kg/m3
  double permeate_salt_rate = 0;  // kg/hr
  double tank_volume = 0;      // m3 at end of hour
  double tank_tds = 0;         // kg/m3 (0 when mixing not modeled)
  double outflow_tds = 0;      // kg/m3
  double flush_water = 0;      // m3
  double flush_energy = 0;     // kWh
  double p_hpp = 0, p_hps = 0, q_hps = 0;  // kW / kvar
  double p_pv = 0, q_pv = 0;
  double p_hdp = 0, p_buy = 0, p_sell = 0;  // kW
  double cost = 0;  // $
};

struct Schedule {
  FlexibilityMode mode = FlexibilityMode::MixIni;
  std::vector<HourPlan> hours;
  double total_cost = 0;        // $
  double total_production = 0;  // m3 scheduled permeate
  SolveStatus status = SolveStatus::NoSolution;
  double gap = 0;
  double solve_seconds = 0;
};

}  // namespace desal
