#include "desal/tank.hpp"

#include <cmath>

#include "desal/ro.hpp"

namespace desal {

TankState make_tank_state(double volume, double tds) {
  return {volume, tds, tds * volume};
}

TankStepResult tank_step(const TankState& state, double permeate_flow,
                         double permeate_salt_rate, double outflow,
                         double flush_water, double flush_tds, double dt) {
  if (permeate_flow < 0 || permeate_salt_rate < 0 || outflow < 0 ||
      flush_water < 0 || flush_tds < 0 || dt <= 0)
    throw SolveError("tank_step: negative input");

  const double volume = state.volume + permeate_flow * dt - outflow * dt - flush_water;
  if (volume <= 0) throw SolveError("tank_step: tank emptied");

  // Outflow TDS couples to the unknown new TDS: S_out = (S_prev + S_new)/2
  // and M_new = S_new * volume; solve the 2x2 linear system exactly.
  const double rhs = state.salt_mass + permeate_salt_rate * dt -
                     state.tds * outflow * dt / 2.0 - flush_tds * flush_water;
  const double tds = rhs / (volume + outflow * dt / 2.0);
  const double salt_mass = tds * volume;
  if (salt_mass < -1e-9 * std::max(1.0, state.salt_mass))
    throw SolveError("tank_step: negative salt mass (salt over-withdrawal)");

  TankStepResult out;
  out.state = {volume, tds, salt_mass};
  out.outflow_tds = (state.tds + tds) / 2.0;
  return out;
}

std::vector<Violation> check_tank_bounds(const std::vector<TankState>& traj,
                                         const TankConfig& cfg,
                                         const std::vector<double>& outflow_tds,
                                         double outflow_tds_max,
                                         EndTdsClosure closure, double tol) {
  std::vector<Violation> v;
  auto bad = [&](const std::string& what, double value, double bound) {
    v.push_back({what, value, bound});
  };
  for (size_t t = 0; t < traj.size(); ++t) {
    const auto& s = traj[t];
    const std::string at = " at hour " + std::to_string(t);
    if (s.volume < cfg.min_level - tol) bad("tank below minimum level" + at, s.volume, cfg.min_level);
    if (s.volume > cfg.capacity + tol) bad("tank above capacity" + at, s.volume, cfg.capacity);
    if (s.tds > outflow_tds_max + tol) bad("tank TDS above limit" + at, s.tds, outflow_tds_max);
    if (s.tds < -tol) bad("negative tank TDS" + at, s.tds, 0);
  }
  for (size_t t = 0; t < outflow_tds.size(); ++t)
    if (outflow_tds[t] > outflow_tds_max + tol)
      bad("outflow TDS above limit at hour " + std::to_string(t),
          outflow_tds[t], outflow_tds_max);
  if (!traj.empty()) {
    const auto& last = traj.back();
    if (last.volume < cfg.initial_level - tol)
      bad("terminal storage below initial level", last.volume, cfg.initial_level);
    if (closure == EndTdsClosure::Required && last.tds > cfg.initial_tds + tol)
      bad("terminal tank TDS above initial", last.tds, cfg.initial_tds);
  }
  return v;
}

}  // namespace desal
