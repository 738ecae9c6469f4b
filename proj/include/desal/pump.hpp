#pragma once

#include <string>
#include <vector>

// Variable-speed multistage high-pressure pump model.
//
// At nominal speed (omega = 1) the per-stage head and power are quadratic
// in flow; off-nominal operation follows the affinity laws, which gives
//   head(F, w)  = N * (a2 F^2 + a1 F w + a0 w^2)
//   power(F, w) = N * (b2 F^2 w + b1 F w^2 + b0 w^3)

namespace desal {

struct PumpCurve {
  double a2 = 0, a1 = 0, a0 = 0;  // per-stage head coefficients [kPa]
  double b2 = 0, b1 = 0, b0 = 0;  // per-stage power coefficients [kW]
  int n_stages = 1;
  double fit_flow_min = 0;  // flow range covered by the fit [m3/hr]
  double fit_flow_max = 0;
  double max_rel_residual = 0;  // reported by the fitter
};

struct PumpLimits {
  double flow_max_nominal = 250.0;  // F_hpp_max at omega = 1 [m3/hr]
  double speed_min = 0.7;
  double speed_max = 1.3;
  double power_max = 600.0;  // motor rating [kW]
  double motor_eff = 0.95;
  double vfd_eff = 0.97;
  double q_over_p = 0.33;  // reactive/active ratio of the HPS

  void validate() const;
};

struct PumpPoint {
  double flow = 0;   // m3/hr
  double head = 0;   // kPa
  double power = 0;  // kW
  double speed = 0;  // normalized omega
};

struct PumpSample {
  double flow = 0;   // m3/hr
  double head = 0;   // kPa, total across stages
  double power = 0;  // kW, total across stages
};

// Least-squares fit of the nominal-speed characteristic curves.
// Throws DataError on fewer than 4 distinct flows, a rank-deficient
// sample set, or a residual above residual_threshold.
PumpCurve fit_pump_curves(const std::vector<PumpSample>& nominal_points,
                          int n_stages, double residual_threshold = 0.05);

std::vector<PumpSample> load_pump_samples(const std::string& path);

PumpPoint affinity_scale(const PumpPoint& p, double target_speed);

double eval_head(const PumpCurve& curve, double flow, double speed);
double eval_power(const PumpCurve& curve, double flow, double speed);

struct Violation {
  std::string what;
  double value = 0;
  double bound = 0;
};

std::vector<Violation> check_operating_point(const PumpCurve& curve,
                                             const PumpLimits& limits,
                                             const PumpPoint& p, bool on,
                                             double feed_pressure_min,
                                             double feed_pressure_max,
                                             double tol = 1e-6);

// Electrical power of the pump system (VFD + motor + HPP).
struct HpsPower {
  double p = 0;  // kW
  double q = 0;  // kvar
};
HpsPower hps_power(double p_hpp, const PumpLimits& limits);

// Hydraulic power [kW] = F [m3/hr] * H [kPa] / 3600.
double hydraulic_power(double flow, double head);

// Shaft efficiency at an operating point; 0 at zero flow.
double efficiency(const PumpCurve& curve, double flow, double speed);

}  // namespace desal
