#include "desal/pump.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "desal/domain.hpp"

namespace desal {

void PumpLimits::validate() const {
  if (!(0 < speed_min && speed_min < speed_max))
    throw ConfigError("pump_limits: need 0 < speed_min < speed_max");
  if (!(motor_eff > 0 && motor_eff <= 1 && vfd_eff > 0 && vfd_eff <= 1))
    throw ConfigError("pump_limits: efficiencies must be in (0, 1]");
  if (flow_max_nominal <= 0) throw ConfigError("pump_limits: flow_max_nominal must be > 0");
  if (power_max <= 0) throw ConfigError("pump_limits: power_max must be > 0");
  if (q_over_p < 0) throw ConfigError("pump_limits: q_over_p must be >= 0");
}

PumpCurve fit_pump_curves(const std::vector<PumpSample>& nominal_points,
                          int n_stages, double residual_threshold) {
  if (n_stages < 1) throw DataError("fit_pump_curves: n_stages must be >= 1");
  std::set<double> flows;
  for (const auto& s : nominal_points) {
    if (s.flow < 0) throw DataError("fit_pump_curves: negative flow sample");
    flows.insert(s.flow);
  }
  if (flows.size() < 4)
    throw DataError("fit_pump_curves: need at least 4 distinct flow samples");

  const int n = static_cast<int>(nominal_points.size());
  Eigen::MatrixXd A(n, 3);
  Eigen::VectorXd h(n), p(n);
  for (int i = 0; i < n; ++i) {
    const double f = nominal_points[i].flow;
    A(i, 0) = f * f;
    A(i, 1) = f;
    A(i, 2) = 1.0;
    h(i) = nominal_points[i].head / n_stages;
    p(i) = nominal_points[i].power / n_stages;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.rank() < 3) throw DataError("fit_pump_curves: rank-deficient sample set");
  Eigen::Vector3d ch = svd.solve(h);
  Eigen::Vector3d cp = svd.solve(p);

  PumpCurve curve;
  curve.a2 = ch(0);
  curve.a1 = ch(1);
  curve.a0 = ch(2);
  curve.b2 = cp(0);
  curve.b1 = cp(1);
  curve.b0 = cp(2);
  curve.n_stages = n_stages;
  curve.fit_flow_min = *flows.begin();
  curve.fit_flow_max = *flows.rbegin();

  double max_rel = 0;
  for (const auto& s : nominal_points) {
    const double hh = eval_head(curve, s.flow, 1.0);
    const double pp = eval_power(curve, s.flow, 1.0);
    if (s.head > 0) max_rel = std::max(max_rel, std::abs(hh - s.head) / s.head);
    if (s.power > 0) max_rel = std::max(max_rel, std::abs(pp - s.power) / s.power);
  }
  curve.max_rel_residual = max_rel;
  if (max_rel > residual_threshold)
    throw DataError("fit_pump_curves: max relative residual " +
                    std::to_string(max_rel) + " exceeds threshold " +
                    std::to_string(residual_threshold));

  if (curve.a2 >= 0) throw DataError("fit_pump_curves: fitted head does not fall with flow (a2 >= 0)");
  for (double f = curve.fit_flow_min; f <= curve.fit_flow_max; f += 1.0)
    if (eval_head(curve, f, 1.0) <= 0)
      throw DataError("fit_pump_curves: fitted head non-positive inside the flow range");
  return curve;
}

std::vector<PumpSample> load_pump_samples(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open pump curve file: " + path);
  std::vector<PumpSample> samples;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::string f, h, p;
    if (!std::getline(ls, f, ',') || !std::getline(ls, h, ',') ||
        !std::getline(ls, p, ','))
      throw DataError(path + ": malformed row '" + line + "'");
    if (first) {
      first = false;
      try {
        (void)std::stod(f);
      } catch (const std::exception&) {
        continue;  // header
      }
    }
    try {
      samples.push_back({std::stod(f), std::stod(h), std::stod(p)});
    } catch (const std::exception&) {
      throw DataError(path + ": non-numeric cell in row '" + line + "'");
    }
  }
  return samples;
}

PumpPoint affinity_scale(const PumpPoint& p, double target_speed) {
  if (p.speed <= 0 || target_speed <= 0)
    throw DataError("affinity_scale: speeds must be positive");
  const double r = target_speed / p.speed;
  return {p.flow * r, p.head * r * r, p.power * r * r * r, target_speed};
}

double eval_head(const PumpCurve& c, double flow, double speed) {
  return c.n_stages * (c.a2 * flow * flow + c.a1 * flow * speed + c.a0 * speed * speed);
}

double eval_power(const PumpCurve& c, double flow, double speed) {
  return c.n_stages *
         (c.b2 * flow * flow * speed + c.b1 * flow * speed * speed +
          c.b0 * speed * speed * speed);
}

std::vector<Violation> check_operating_point(const PumpCurve& curve,
                                             const PumpLimits& limits,
                                             const PumpPoint& p, bool on,
                                             double feed_pressure_min,
                                             double feed_pressure_max,
                                             double tol) {
  std::vector<Violation> v;
  auto bad = [&](const std::string& what, double value, double bound) {
    v.push_back({what, value, bound});
  };
  if (!on) {
    if (std::abs(p.flow) > tol) bad("off-state flow nonzero", p.flow, 0);
    if (std::abs(p.head) > tol) bad("off-state head nonzero", p.head, 0);
    if (std::abs(p.power) > tol) bad("off-state power nonzero", p.power, 0);
    if (std::abs(p.speed) > tol) bad("off-state speed nonzero", p.speed, 0);
    return v;
  }
  if (p.speed < limits.speed_min - tol) bad("speed below minimum", p.speed, limits.speed_min);
  if (p.speed > limits.speed_max + tol) bad("speed above maximum", p.speed, limits.speed_max);
  if (p.flow < -tol) bad("negative flow", p.flow, 0);
  const double flow_cap = limits.flow_max_nominal * p.speed;
  if (p.flow > flow_cap + tol) bad("flow above affinity-scaled maximum", p.flow, flow_cap);
  if (p.head < feed_pressure_min - tol) bad("head below minimum", p.head, feed_pressure_min);
  if (p.head > feed_pressure_max + tol) bad("head above maximum", p.head, feed_pressure_max);
  if (p.power < -tol) bad("negative power", p.power, 0);
  const double electrical = p.power / (limits.motor_eff * limits.vfd_eff);
  if (electrical > limits.power_max + tol)
    bad("pump system electrical power above rating", electrical, limits.power_max);
  return v;
}

HpsPower hps_power(double p_hpp, const PumpLimits& limits) {
  if (p_hpp < 0) throw DataError("hps_power: negative pump power");
  HpsPower hps;
  hps.p = p_hpp / (limits.motor_eff * limits.vfd_eff);
  hps.q = limits.q_over_p * hps.p;
  return hps;
}

double hydraulic_power(double flow, double head) { return flow * head / 3600.0; }

double efficiency(const PumpCurve& curve, double flow, double speed) {
  if (flow <= 0) return 0;
  const double shaft = eval_power(curve, flow, speed);
  if (shaft <= 0) throw DataError("efficiency: non-positive shaft power");
  return hydraulic_power(flow, eval_head(curve, flow, speed)) / shaft;
}

}  // namespace desal
