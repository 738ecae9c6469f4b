#pragma once

#include <vector>

#include "desal/domain.hpp"
#include "desal/pump.hpp"

// Storage-tank coupled water/salt dynamics.

namespace desal {

struct TankState {
  double volume = 0;     // m3
  double tds = 0;        // kg/m3
  double salt_mass = 0;  // kg (= tds * volume)
};

TankState make_tank_state(double volume, double tds);

struct TankStepResult {
  TankState state;
  double outflow_tds = 0;  // average of the boundary tank TDS values
};

// One balance step. The outflow TDS couples to the unknown end-of-step
// tank TDS through S_out = (S_prev + S_new)/2; the resulting 2x2 linear
// system is solved exactly. Throws SolveError if the tank empties or the
// salt mass goes negative beyond tolerance.
TankStepResult tank_step(const TankState& state, double permeate_flow,
                         double permeate_salt_rate, double outflow,
                         double flush_water, double flush_tds, double dt);

enum class EndTdsClosure { None, Required };

std::vector<Violation> check_tank_bounds(
    const std::vector<TankState>& traj, const TankConfig& cfg,
    const std::vector<double>& outflow_tds, double outflow_tds_max,
    EndTdsClosure closure, double tol = 1e-6);

}  // namespace desal
