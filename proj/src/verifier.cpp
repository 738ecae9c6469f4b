#include "desal/verifier.hpp"

#include <algorithm>
#include <cmath>

#include "desal/builder.hpp"
#include "json.hpp"

namespace desal {

namespace {

void tag_hour(std::vector<Violation>& out, std::vector<Violation> add, int t) {
  for (auto& v : add) {
    v.what += " (hour " + std::to_string(t) + ")";
    out.push_back(std::move(v));
  }
}

}  // namespace

VerifiedReport verify(const Schedule& sched, const CaseData& data) {
  const auto& cfg = data.cfg;
  const int T = cfg.time.horizon_steps;
  if (static_cast<int>(sched.hours.size()) != T)
    throw DataError("verify: schedule horizon does not match the case");
  const double dt = cfg.time.step_hours;

  // Mode-dependent permeate cap for the bound checks.
  PlantConfig plant = cfg.plant;
  plant.permeate_tds_max = spe_cap_for(sched.mode, cfg.plant);

  VerifiedReport rep;
  rep.plant.reserve(T);
  rep.tank.reserve(T);
  TankState tank = make_tank_state(cfg.tank.initial_level, cfg.tank.initial_tds);

  double daily_demand = 0;
  for (int t = 0; t < T; ++t) {
    const HourPlan& hp = sched.hours[t];
    const double demand = data.market.water_demand[t];
    daily_demand += demand * dt;

    // Re-derive the plant state from the authoritative (F_fd, omega) pair.
    ROState state = off_state();
    if (hp.on) {
      try {
        state = full_solve(hp.feed_flow, hp.speed, data.pump, plant);
      } catch (const SolveError& e) {
        rep.violations.push_back({std::string("full model failed at hour ") +
                                      std::to_string(t) + ": " + e.what(),
                                  0, 0});
        // Keep the trajectory going on the scheduled quantities.
        state.on = true;
        state.feed_flow = hp.feed_flow;
        state.permeate_flow = hp.permeate_flow;
        state.brine_flow = hp.brine_flow;
        state.permeate_salt_rate = hp.permeate_salt_rate;
      }
      const PumpPoint point{hp.feed_flow, state.feed_head,
                            eval_power(data.pump, hp.feed_flow, hp.speed),
                            hp.speed};
      tag_hour(rep.violations,
               check_operating_point(data.pump, cfg.pump_limits, point, true,
                                     plant.feed_pressure_min,
                                     plant.feed_pressure_max),
               t);
    }
    tag_hour(rep.violations, check_ro_bounds(state, plant), t);
    rep.plant.push_back(state);
    rep.verified_production += state.permeate_flow * dt;

    // Tank propagation with the verified permeate stream.
    double out_tds = tank.tds;
    try {
      const TankStepResult step =
          tank_step(tank, state.permeate_flow, state.permeate_salt_rate, demand,
                    hp.flush_water, cfg.tank.flush_tds_estimate, dt);
      tank = step.state;
      out_tds = step.outflow_tds;
    } catch (const SolveError& e) {
      rep.violations.push_back({std::string("tank step failed at hour ") +
                                    std::to_string(t) + ": " + e.what(),
                                0, 0});
      rep.demand_met = false;
    }
    rep.tank.push_back(tank);
    rep.outflow_tds.push_back(out_tds);

    // Verified electrical side and grid flows.
    const double p_hpp =
        hp.on ? eval_power(data.pump, hp.feed_flow, hp.speed) : 0.0;
    const HpsPower hps = hps_power(p_hpp, cfg.pump_limits);
    const double p_hdp = hps.p - hp.p_pv + hp.flush_energy / dt;
    const double q_hdp = hps.q - hp.q_pv;
    rep.p_hdp.push_back(p_hdp);

    tag_hour(rep.violations,
             pv_check(hp.p_pv, hp.q_pv, data.market.pv_forecast[t],
                      cfg.grid.pv_rating),
             t);

    std::vector<NodeLoad> inj = data.base_load[t];
    inj[data.network.hdp_node].p += p_hdp;
    inj[data.network.hdp_node].q += q_hdp;
    const PowerFlow flow = lindistflow_solve(data.network, inj);
    tag_hour(rep.violations, check_network_limits(flow, data.network), t);

    const double cost =
        dt * (data.market.buy_price[t] * std::max(p_hdp, 0.0) -
              data.market.sell_price[t] * std::max(-p_hdp, 0.0));
    rep.hourly_cost.push_back(cost);
    rep.verified_cost += cost;
    rep.scheduled_production += hp.permeate_flow * dt;
  }

  tag_hour(rep.violations,
           check_tank_bounds(rep.tank, cfg.tank, rep.outflow_tds,
                             cfg.plant.outflow_tds_max,
                             mode_end_closure(sched.mode)
                                 ? EndTdsClosure::Required
                                 : EndTdsClosure::None),
           T - 1);

  rep.end_tds = rep.tank.back().tds;
  rep.prorated_cost = rep.verified_production > 0
                          ? rep.verified_cost * daily_demand /
                                rep.verified_production
                          : rep.verified_cost;
  return rep;
}

std::vector<ErrorMapPoint> model_error_sweep(
    const ConfigBundle& cfg, const PumpCurve& pump,
    const std::vector<double>& flow_grid, const std::vector<double>& speed_grid,
    double spe_cap) {
  PlantConfig plant = cfg.plant;
  plant.permeate_tds_max = spe_cap;

  std::vector<ErrorMapPoint> map;
  map.reserve(flow_grid.size() * speed_grid.size());
  for (double flow : flow_grid) {
    for (double speed : speed_grid) {
      ErrorMapPoint pt;
      pt.flow = flow;
      pt.speed = speed;
      try {
        const ROState full = full_solve(flow, speed, pump, plant);
        pt.converged = true;
        pt.full_spe = full.permeate_tds;
        const ROState simp = simplified_solve_at(flow, speed, pump, plant);
        pt.d_fpe = simp.permeate_flow - full.permeate_flow;
        pt.d_spe = simp.permeate_tds - full.permeate_tds;

        const PumpPoint point{flow, full.feed_head,
                              eval_power(pump, flow, speed), speed};
        const bool pump_ok =
            check_operating_point(pump, cfg.pump_limits, point, true,
                                  plant.feed_pressure_min,
                                  plant.feed_pressure_max)
                .empty();
        pt.feasible = pump_ok && check_ro_bounds(full, plant).empty();
      } catch (const SolveError&) {
        pt.converged = false;
        pt.feasible = false;
      }
      map.push_back(pt);
    }
  }
  return map;
}

std::string verified_report_to_json(const VerifiedReport& report,
                                    const Schedule& sched) {
  nlohmann::json j;
  j["mode"] = mode_name(sched.mode);
  j["scheduled_cost"] = sched.total_cost;
  j["scheduled_production_m3"] = report.scheduled_production;
  j["verified_cost"] = report.verified_cost;
  j["prorated_cost"] = report.prorated_cost;
  j["verified_production_m3"] = report.verified_production;
  j["end_tds_kg_m3"] = report.end_tds;
  j["demand_met"] = report.demand_met;
  j["mip_gap"] = sched.gap;

  nlohmann::json hours = nlohmann::json::array();
  for (size_t t = 0; t < report.plant.size(); ++t) {
    const auto& s = report.plant[t];
    const auto& hp = sched.hours[t];
    hours.push_back({{"hour", t},
                     {"on", hp.on},
                     {"feed_flow", s.feed_flow},
                     {"speed", hp.speed},
                     {"permeate_flow", s.permeate_flow},
                     {"permeate_tds", s.permeate_tds},
                     {"brine_tds", s.brine_tds},
                     {"feed_head", s.feed_head},
                     {"tank_volume", report.tank[t].volume},
                     {"tank_tds", report.tank[t].tds},
                     {"outflow_tds", report.outflow_tds[t]},
                     {"p_hdp", report.p_hdp[t]},
                     {"cost", report.hourly_cost[t]}});
  }
  j["hours"] = std::move(hours);

  nlohmann::json viols = nlohmann::json::array();
  for (const auto& v : report.violations)
    viols.push_back({{"what", v.what}, {"value", v.value}, {"bound", v.bound}});
  j["violations"] = std::move(viols);
  return j.dump(2) + "\n";
}

}  // namespace desal
