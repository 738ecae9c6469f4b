#pragma once

#include <vector>

#include "desal/case.hpp"
#include "desal/ro.hpp"
#include "desal/schedule.hpp"
#include "desal/tank.hpp"

// Verification oracle: executes a schedule's (feed flow, speed) controls
// through the full nonlinear plant model and the exact tank dynamics, then
// recomputes power, grid flows, and cost.

namespace desal {

struct VerifiedReport {
  std::vector<ROState> plant;      // per hour
  std::vector<TankState> tank;     // per hour, end of hour
  std::vector<double> outflow_tds;
  std::vector<double> p_hdp;       // kW, verified net HDP power
  std::vector<double> hourly_cost; // $
  double verified_cost = 0;        // $
  double prorated_cost = 0;        // $ scaled to the daily demand
  double verified_production = 0;  // m3
  double scheduled_production = 0; // m3
  double end_tds = 0;              // kg/m3
  std::vector<Violation> violations;
  bool demand_met = true;
};

VerifiedReport verify(const Schedule& sched, const CaseData& data);

struct ErrorMapPoint {
  double flow = 0;
  double speed = 0;
  double d_fpe = 0;  // simplified - full permeate flow [m3/hr]
  double d_spe = 0;  // simplified - full permeate TDS [kg/m3]
  double full_spe = 0;
  bool feasible = false;
  bool converged = false;
};

// Simplified-vs-full error map over a (flow, speed) grid. The feasibility
// mask applies pump limits and RO bounds with the given permeate TDS cap.
std::vector<ErrorMapPoint> model_error_sweep(const ConfigBundle& cfg,
                                             const PumpCurve& pump,
                                             const std::vector<double>& flow_grid,
                                             const std::vector<double>& speed_grid,
                                             double spe_cap);

std::string verified_report_to_json(const VerifiedReport& report,
                                    const Schedule& sched);

}  // namespace desal
