#pragma once

#include <memory>
#include <optional>

#include "desal/case.hpp"
#include "desal/pwl.hpp"
#include "desal/commitment.hpp"
#include "desal/scenario.hpp"
#include "desal/schedule.hpp"

// Assembles the scheduling MILP: plant physics through PWL blocks,
// commitment logic, tank dynamics, PV envelope, LinDistFlow network, and
// the buy/sell objective.

namespace desal {

// The five linearized surfaces. head/power share the (feed flow, speed)
// grid; the brine and concentrate blocks carry bilinear salt products; the
// tank block carries the stored salt mass.
struct SurfaceSet {
  PwlSurface head;        // (F_fd, omega) -> H_fd
  PwlSurface power;       // (F_fd, omega) -> P_hpp
  PwlSurface brine_prod;  // (S_br, F_br) -> S_br * F_br
  PwlSurface conc_prod;   // (S_ro, F_fd + F_br) -> S_ro * (F_fd + F_br)
  PwlSurface tank_prod;   // (S_tk, W_tk) -> S_tk * W_tk

  // Physics-consistent permeate flow and salt rate re-expressed over the
  // pump (F_fd, omega) grid: each vertex value solves the salt-product
  // surfaces by bisection at that vertex's tabulated head. The bands bound
  // the deviation of any operating point that satisfies the full linearized
  // constraint system from the vertex interpolation; they are measured on a
  // dense sample of the reachable region, so the derived rows are redundant
  // for every integer-feasible solution while tightening the relaxation.
  PwlSurface fpe_flux;    // (F_fd, omega) -> F_pe
  PwlSurface mspe_flux;   // (F_fd, omega) -> M_Spe
  double fpe_band = kInf;
  double mspe_band = kInf;
};

SurfaceSet tabulate_surfaces(const ConfigBundle& cfg, const PumpCurve& pump);

// A feasible operating point of the plant, used by the enumeration-based
// reference model.
struct FopPoint {
  double feed_flow = 0;
  double speed = 0;
  double head = 0;   // kPa
  double power = 0;  // kW shaft power of the pump
  double permeate_flow = 0;
  double brine_flow = 0;
  double brine_tds = 0;
  double permeate_salt_rate = 0;  // kg/hr
};

struct HourVars {
  VarId on, shut, start;
  PwlBlock pump_block;   // x = F_fd, y = omega, z = {H_fd, P_hpp}
  PwlBlock brine_block;  // x = S_br, y = F_br, z = {S_br * F_br}
  PwlBlock conc_block;   // x = S_ro, y = F_sum, z = {S_ro * F_sum}
  PwlBlock tank_block;   // x = S_tk, y = W_tk, z = {M_Stk}; absent in NoMix
  // FOP-mode replacements for the plant PWL blocks.
  std::vector<VarId> fop_sel;
  VarId fop_f_fd, fop_omega, fop_head, fop_power;
  VarId f_pe, f_br, f_sum;
  VarId m_spe;
  VarId w_tk;
  VarId s_out;          // invalid in NoMix
  VarId w_flush, e_flush;
  VarId p_hps, q_hps, p_pv, q_pv;
  VarId p_hdp, p_buy, p_sell;
  std::vector<VarId> line_p, line_q, v_sq;
};

struct BuildOptions {
  FlexibilityMode mode = FlexibilityMode::MixIni;
  // Step-2 style build: commitment fixed and flush consumption entered as
  // constants; the flush-logic constraints are dropped.
  std::optional<std::vector<uint8_t>> fixed_commitment;
  std::optional<FlushSeries> fixed_flush;
  // Step-1 style build: grid/PV side replicated per scenario with shared
  // plant variables; the objective becomes the probability-weighted cost.
  const std::vector<Scenario>* grid_scenarios = nullptr;
  // Overrides for a single-scenario solve (Step 2 per scenario).
  const Scenario* series_override = nullptr;
  // Enumeration-based plant physics: one selection binary per (hour, point)
  // instead of the PWL blocks. Tank/grid/commitment constraints unchanged.
  const std::vector<FopPoint>* fop_points = nullptr;
};

struct BuiltModel {
  MilpModel model;
  BuildOptions options;
  double spe_cap = 0;  // permeate TDS cap in effect
  VarId one;           // constant-one variable
  // Scenarios priced into the objective; a single forecast scenario unless
  // grid_scenarios was given.
  std::vector<Scenario> scenarios;
  std::vector<HourVars> hours;
  // Scenario-indexed grid variables (Step 1); hours[t] then holds the
  // first scenario's grid handles.
  std::vector<std::vector<HourVars>> scenario_grid;
  const CaseData* data = nullptr;
  const SurfaceSet* surfaces = nullptr;
};

BuiltModel build(const CaseData& data, const SurfaceSet& surfaces,
                 const BuildOptions& options);

Schedule solve_schedule(BuiltModel& built, SolverInterface& solver,
                        const SolverOptions& options);

Schedule extract_schedule(const BuiltModel& built, const MilpSolution& sol);

// Permeate TDS cap for a mode: outflow cap unless mixing flexibility is
// enabled, then the plant's permeate cap.
double spe_cap_for(FlexibilityMode mode, const PlantConfig& plant);

// Builds a feasible starting point for the MILP: a single linearized
// operating point repeated over the committed hours, propagated through
// the tank recursion and the network equations. Returns an empty vector
// when no such point passes every constraint.
std::vector<double> construct_warm_start(const BuiltModel& built);

}  // namespace desal
