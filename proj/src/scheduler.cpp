#include "desal/scheduler.hpp"

#include <chrono>
#include <cmath>

namespace desal {

DeterministicResult schedule_deterministic(const CaseData& data,
                                           FlexibilityMode mode,
                                           const SolverOptions& solver) {
  const SurfaceSet surfaces = tabulate_surfaces(data.cfg, data.pump);
  BuildOptions opts;
  opts.mode = mode;
  BuiltModel built = build(data, surfaces, opts);
  HighsSolver backend;
  DeterministicResult res;
  res.schedule = solve_schedule(built, backend, solver);
  res.report = verify(res.schedule, data);
  return res;
}

TdcsoResult tdcso(const CaseData& data, const std::vector<Scenario>& scenarios,
                  const SolverOptions& solver, FlexibilityMode step1_mode) {
  double prob = 0;
  for (const auto& sc : scenarios) prob += sc.probability;
  if (std::abs(prob - 1.0) > 1e-9)
    throw DataError("tdcso: scenario probabilities must sum to 1");

  const SurfaceSet surfaces = tabulate_surfaces(data.cfg, data.pump);
  HighsSolver backend;
  TdcsoResult res;

  // Step 1: one model, scenario-indexed grid side, shared plant variables,
  // mixing flexibility disabled; yields the commitment and flushing scheme.
  {
    const auto t0 = std::chrono::steady_clock::now();
    BuildOptions opts;
    opts.mode = step1_mode;
    opts.grid_scenarios = &scenarios;
    BuiltModel built = build(data, surfaces, opts);
    const Schedule step1 = solve_schedule(built, backend, solver);
    res.step1_expected_cost = step1.total_cost;
    res.commitment.resize(step1.hours.size());
    res.flush.water.resize(step1.hours.size());
    res.flush.energy.resize(step1.hours.size());
    for (size_t t = 0; t < step1.hours.size(); ++t) {
      res.commitment[t] = step1.hours[t].on ? 1 : 0;
      res.flush.water[t] = step1.hours[t].flush_water;
      res.flush.energy[t] = step1.hours[t].flush_energy;
    }
    res.step1_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }

  // Step 2: per-scenario re-dispatch under the fixed commitment with mixing
  // flexibility enabled and flush consumption entered as constants.
  const FlexibilityMode step2_mode = mode_end_closure(step1_mode)
                                         ? FlexibilityMode::MixFlexIni
                                         : FlexibilityMode::MixFlex;
  const auto t0 = std::chrono::steady_clock::now();
  for (const auto& sc : scenarios) {
    BuildOptions opts;
    opts.mode = step2_mode;
    opts.fixed_commitment = res.commitment;
    opts.fixed_flush = res.flush;
    opts.series_override = &sc;
    BuiltModel built = build(data, surfaces, opts);
    Schedule sched = solve_schedule(built, backend, solver);
    res.expected_cost += sc.probability * sched.total_cost;
    res.scenario_schedules.push_back(std::move(sched));
  }
  res.step2_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return res;
}

std::vector<FopPoint> fop_enumerate(const ConfigBundle& cfg,
                                    const PumpCurve& pump, double flow_step,
                                    double speed_step, double spe_cap,
                                    bool use_full) {
  if (flow_step <= 0 || speed_step <= 0)
    throw ConfigError("fop_enumerate: steps must be positive");
  PlantConfig plant = cfg.plant;
  plant.permeate_tds_max = spe_cap;

  std::vector<FopPoint> out;
  for (double flow = plant.feed_flow_min; flow <= plant.feed_flow_max + 1e-9;
       flow += flow_step) {
    for (double speed = cfg.pump_limits.speed_min;
         speed <= cfg.pump_limits.speed_max + 1e-9; speed += speed_step) {
      ROState s;
      try {
        s = use_full ? full_solve(flow, speed, pump, plant)
                     : simplified_solve_at(flow, speed, pump, plant);
      } catch (const SolveError&) {
        continue;
      }
      const double power = eval_power(pump, flow, speed);
      const PumpPoint point{flow, s.feed_head, power, speed};
      if (!check_operating_point(pump, cfg.pump_limits, point, true,
                                 plant.feed_pressure_min,
                                 plant.feed_pressure_max)
               .empty())
        continue;
      if (!check_ro_bounds(s, plant).empty()) continue;
      out.push_back({flow, speed, s.feed_head, power, s.permeate_flow,
                     s.brine_flow, s.brine_tds, s.permeate_salt_rate});
    }
  }
  return out;
}

Schedule fop_schedule(const CaseData& data, FlexibilityMode mode,
                      const std::vector<FopPoint>& fops,
                      const SolverOptions& solver) {
  if (fops.empty()) throw ConfigError("fop_schedule: empty operating-point set");
  const SurfaceSet surfaces = tabulate_surfaces(data.cfg, data.pump);
  BuildOptions opts;
  opts.mode = mode;
  opts.fop_points = &fops;
  BuiltModel built = build(data, surfaces, opts);
  HighsSolver backend;
  return solve_schedule(built, backend, solver);
}

}  // namespace desal
