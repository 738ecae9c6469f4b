#pragma once

#include "desal/builder.hpp"
#include "desal/scenario.hpp"
#include "desal/verifier.hpp"

// Orchestration: deterministic runs, the two-step decomposed stochastic
// algorithm, and the feasible-operating-point optimality cross-check.

namespace desal {

struct DeterministicResult {
  Schedule schedule;
  VerifiedReport report;
};

DeterministicResult schedule_deterministic(const CaseData& data,
                                           FlexibilityMode mode,
                                           const SolverOptions& solver);

struct TdcsoResult {
  std::vector<uint8_t> commitment;
  FlushSeries flush;
  double step1_expected_cost = 0;
  std::vector<Schedule> scenario_schedules;
  double expected_cost = 0;
  double step1_seconds = 0;
  double step2_seconds = 0;
};

// Step 1 solves one model with scenario-indexed grid/PV variables, shared
// plant variables, and mixing flexibility disabled, fixing the commitment
// and flushing scheme. Step 2 re-solves each scenario independently with
// the commitment fixed, flush consumption as constants, and mixing
// flexibility enabled.
TdcsoResult tdcso(const CaseData& data, const std::vector<Scenario>& scenarios,
                  const SolverOptions& solver,
                  FlexibilityMode step1_mode = FlexibilityMode::MixIni);

// FopPoint lives in builder.hpp so the enumeration-based reference model
// can share the tank/grid/commitment assembly.

// Enumerates the (flow, speed) grid through the simplified model (or the
// full model when use_full) and keeps points passing every bound check at
// the given permeate TDS cap.
std::vector<FopPoint> fop_enumerate(const ConfigBundle& cfg,
                                    const PumpCurve& pump, double flow_step,
                                    double speed_step, double spe_cap,
                                    bool use_full = false);

// Reference MILP: one selection binary per (hour, point) plus the
// commitment/tank/grid constraints.
Schedule fop_schedule(const CaseData& data, FlexibilityMode mode,
                      const std::vector<FopPoint>& fops,
                      const SolverOptions& solver);

}  // namespace desal
