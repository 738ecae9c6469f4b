#pragma once

#include <vector>

#include "desal/domain.hpp"
#include "desal/pump.hpp"

// Steady-state RO train physics at a single time step: the full coupled
// model and the simplified closed-form model used by the scheduler.

namespace desal {

struct ROState {
  bool on = false;
  double feed_flow = 0, permeate_flow = 0, brine_flow = 0;  // m3/hr
  double feed_head = 0, brine_head = 0, permeate_head = 0;  // kPa
  double dp_membrane = 0;  // average transmembrane pressure [kPa]
  double dosmotic = 0;     // osmotic pressure difference [kPa]
  double feed_osm = 0, brine_osm = 0, permeate_osm = 0;  // kPa
  double brine_tds = 0, permeate_tds = 0;  // kg/m3
  double conc_side_tds = 0;                // S_ro [kg/m3]
  double permeate_salt_rate = 0;           // kg/hr
};

class SolveError : public std::runtime_error {
public:
  explicit SolveError(const std::string& what) : std::runtime_error(what) {}
};

// Full model: damped Newton on the coupled flow/pressure/salt system with
// unknowns (F_pe, F_br, S_br, S_pe, dpi), warm-started from the simplified
// model. Throws SolveError on non-convergence or a negative net driving
// pressure at the solution.
ROState full_solve(double feed_flow, double speed, const PumpCurve& curve,
                   const PlantConfig& cfg);

// Simplified model: permeate salt terms dropped from the salt balance, the
// brine TDS follows in closed form. Returns the implied permeate TDS
// (permeate_salt_rate / permeate_flow).
ROState simplified_solve(double feed_flow, double brine_flow, double speed,
                         const PumpCurve& curve, const PlantConfig& cfg);

// Simplified model with the brine split chosen so that both models can be
// compared at matched (feed_flow, speed): brine flow taken from the full
// permeate-production relation evaluated with the simplified TDS chain.
ROState simplified_solve_at(double feed_flow, double speed,
                            const PumpCurve& curve, const PlantConfig& cfg);

ROState off_state();

std::vector<Violation> check_ro_bounds(const ROState& s, const PlantConfig& cfg,
                                       double tol = 1e-6);

// Residuals of every full-model equation at a state; used by the
// conservation oracle in tests and by the solver's convergence check.
struct ROResiduals {
  double water_balance = 0;
  double permeate_production = 0;
  double osmotic = 0;
  double salt_balance = 0;
  double salt_transport = 0;
  double max_rel() const;
};
ROResiduals ro_residuals(const ROState& s, const PlantConfig& cfg);

}  // namespace desal
