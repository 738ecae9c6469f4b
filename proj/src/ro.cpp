#include "desal/ro.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace desal {

namespace {

constexpr double kBrineFlowEps = 1e-6;  // m3/hr clamp before division

struct Heads {
  double feed, brine, permeate, dp;
};

Heads head_stack(double feed_flow, double speed, const PumpCurve& curve,
                 const PlantConfig& cfg) {
  Heads h;
  h.feed = eval_head(curve, feed_flow, speed);
  h.brine = cfg.friction_coeff * h.feed;
  h.permeate = cfg.permeate_pressure_set;
  h.dp = (h.feed + h.brine) / 2.0 - h.permeate;
  return h;
}

void fill_common(ROState& s, double feed_flow, const Heads& h,
                 const PlantConfig& cfg) {
  s.on = true;
  s.feed_flow = feed_flow;
  s.feed_head = h.feed;
  s.brine_head = h.brine;
  s.permeate_head = h.permeate;
  s.dp_membrane = h.dp;
  s.feed_osm = cfg.osmotic_coeff * cfg.seawater_tds;
}

}  // namespace

ROState off_state() { return ROState{}; }

ROState simplified_solve(double feed_flow, double brine_flow, double speed,
                         const PumpCurve& curve, const PlantConfig& cfg) {
  if (feed_flow <= 0) throw SolveError("simplified_solve: feed flow must be positive");
  const bool clamped = brine_flow < kBrineFlowEps;
  if (clamped) brine_flow = kBrineFlowEps;

  const Heads h = head_stack(feed_flow, speed, curve, cfg);
  ROState s;
  fill_common(s, feed_flow, h, cfg);
  s.brine_flow = brine_flow;

  // Salt balance without the permeate term: S_br F_br = S_fd F_fd.
  s.brine_tds = cfg.seawater_tds * feed_flow / brine_flow;
  s.brine_osm = cfg.osmotic_coeff * s.brine_tds;
  s.dosmotic = cfg.cp_factor * cfg.osmotic_coeff *
               (cfg.seawater_tds + s.brine_tds) / 2.0;
  if (h.dp < s.dosmotic)
    throw SolveError("simplified_solve: negative net driving pressure");
  s.permeate_flow = cfg.water_perm_coeff * (h.dp - s.dosmotic);
  s.conc_side_tds =
      2.0 * cfg.seawater_tds * feed_flow / (feed_flow + brine_flow);
  s.permeate_salt_rate = cfg.salt_perm_coeff * cfg.cp_factor * s.conc_side_tds;
  s.permeate_tds = s.permeate_flow > 0
                       ? s.permeate_salt_rate / s.permeate_flow
                       : 0.0;
  s.permeate_osm = cfg.osmotic_coeff * s.permeate_tds;
  return s;
}

ROState simplified_solve_at(double feed_flow, double speed,
                            const PumpCurve& curve, const PlantConfig& cfg) {
  const Heads h = head_stack(feed_flow, speed, curve, cfg);
  const double kw = cfg.water_perm_coeff;
  const double half_os = cfg.cp_factor * cfg.osmotic_coeff * cfg.seawater_tds / 2.0;
  const double a = h.dp - half_os;       // driving pressure at S_br = S_fd/ratio term removed
  const double b = half_os * feed_flow;  // brine-concentration term numerator

  // F_pe solves F_pe = kw (a - b / (F_fd - F_pe)); one root lies in (0, F_fd).
  const double sum = feed_flow + kw * a;
  const double prod = kw * (a * feed_flow - b);
  const double disc = sum * sum - 4.0 * prod;
  if (disc < 0 || kw * (a - b / feed_flow) <= 0)
    throw SolveError("simplified_solve_at: negative net driving pressure");
  const double root = (sum - std::sqrt(disc)) / 2.0;
  if (!(root > 0 && root < feed_flow))
    throw SolveError("simplified_solve_at: no physical permeate flow root");
  return simplified_solve(feed_flow, feed_flow - root, speed, curve, cfg);
}

ROState full_solve(double feed_flow, double speed, const PumpCurve& curve,
                   const PlantConfig& cfg) {
  if (feed_flow <= 0) throw SolveError("full_solve: feed flow must be positive");
  const Heads h = head_stack(feed_flow, speed, curve, cfg);
  const double sfd = cfg.seawater_tds;
  const double kw = cfg.water_perm_coeff;
  const double ks = cfg.salt_perm_coeff;
  const double kos = cfg.osmotic_coeff;
  const double cp = cfg.cp_factor;

  // Unknowns: F_pe, F_br, S_br, S_pe, dpi.
  Eigen::VectorXd x(5);
  try {
    const ROState warm = simplified_solve_at(feed_flow, speed, curve, cfg);
    x << warm.permeate_flow, warm.brine_flow, warm.brine_tds,
        warm.permeate_tds, warm.dosmotic;
  } catch (const SolveError&) {
    x << 0.4 * feed_flow, 0.6 * feed_flow, sfd / 0.6, 0.3,
        std::max(h.dp - 1.0, 0.5 * h.dp);
  }

  const double scale_flow = std::max(1.0, feed_flow);
  const double scale_salt = std::max(1.0, sfd * feed_flow);
  const double scale_press = std::max(1.0, h.dp);

  auto residual = [&](const Eigen::VectorXd& v) {
    const double fpe = v(0), fbr = v(1), sbr = v(2), spe = v(3), dpi = v(4);
    const double fsum = feed_flow + fbr;
    const double sro = (sfd * feed_flow + sbr * fbr) / fsum;
    Eigen::VectorXd r(5);
    r(0) = feed_flow - fbr - fpe;
    r(1) = fpe - kw * (h.dp - dpi);
    r(2) = dpi - (cp * kos * (sfd + sbr) / 2.0 - kos * spe);
    r(3) = sfd * feed_flow - sbr * fbr - spe * fpe;
    r(4) = spe * fpe - ks * (cp * sro - spe);
    return r;
  };
  auto scaled_norm = [&](const Eigen::VectorXd& r) {
    double n = 0;
    n = std::max(n, std::abs(r(0)) / scale_flow);
    n = std::max(n, std::abs(r(1)) / scale_flow);
    n = std::max(n, std::abs(r(2)) / scale_press);
    n = std::max(n, std::abs(r(3)) / scale_salt);
    n = std::max(n, std::abs(r(4)) / std::max(1.0, ks * cp * sfd));
    return n;
  };

  const double tol = 1e-12;
  const int max_iter = 100;
  Eigen::VectorXd r = residual(x);
  double best = scaled_norm(r);
  bool converged = best < tol;
  for (int it = 0; it < max_iter && !converged; ++it) {
    const double fpe = x(0), fbr = x(1), sbr = x(2), spe = x(3);
    const double fsum = feed_flow + fbr;
    const double dsro_dsbr = fbr / fsum;
    const double dsro_dfbr = feed_flow * (sbr - sfd) / (fsum * fsum);

    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(5, 5);
    J(0, 0) = -1;
    J(0, 1) = -1;
    J(1, 0) = 1;
    J(1, 4) = kw;
    J(2, 2) = -cp * kos / 2.0;
    J(2, 3) = kos;
    J(2, 4) = 1;
    J(3, 0) = -spe;
    J(3, 1) = -sbr;
    J(3, 2) = -fbr;
    J(3, 3) = -fpe;
    J(4, 0) = spe;
    J(4, 1) = -ks * cp * dsro_dfbr;
    J(4, 2) = -ks * cp * dsro_dsbr;
    J(4, 3) = fpe + ks;

    const Eigen::VectorXd step = J.fullPivLu().solve(-r);
    double alpha = 1.0;
    bool accepted = false;
    for (int ls = 0; ls < 40; ++ls) {
      Eigen::VectorXd cand = x + alpha * step;
      if (cand(1) > 0 && feed_flow + cand(1) > 0) {
        const Eigen::VectorXd rc = residual(cand);
        const double nc = scaled_norm(rc);
        if (nc < best) {
          x = cand;
          r = rc;
          best = nc;
          accepted = true;
          break;
        }
      }
      alpha *= 0.5;
    }
    if (!accepted) break;
    converged = best < tol;
  }
  if (!converged && best > 1e-10)
    throw SolveError("full_solve: Newton did not converge (residual " +
                     std::to_string(best) + ")");

  if (x(4) > h.dp + 1e-9 || x(0) < -1e-9)
    throw SolveError("full_solve: infeasible point (osmotic pressure exceeds "
                     "transmembrane pressure)");

  ROState s;
  fill_common(s, feed_flow, h, cfg);
  s.permeate_flow = x(0);
  s.brine_flow = x(1);
  s.brine_tds = x(2);
  s.permeate_tds = x(3);
  s.dosmotic = x(4);
  s.brine_osm = kos * s.brine_tds;
  s.permeate_osm = kos * s.permeate_tds;
  s.conc_side_tds = (sfd * feed_flow + s.brine_tds * s.brine_flow) /
                    (feed_flow + s.brine_flow);
  s.permeate_salt_rate = s.permeate_tds * s.permeate_flow;
  return s;
}

double ROResiduals::max_rel() const {
  return std::max({std::abs(water_balance), std::abs(permeate_production),
                   std::abs(osmotic), std::abs(salt_balance),
                   std::abs(salt_transport)});
}

ROResiduals ro_residuals(const ROState& s, const PlantConfig& cfg) {
  ROResiduals r;
  if (!s.on) return r;
  const double sfd = cfg.seawater_tds;
  const double feed_salt = sfd * s.feed_flow;
  r.water_balance =
      (s.feed_flow - s.brine_flow - s.permeate_flow) / std::max(1.0, s.feed_flow);
  r.permeate_production =
      (s.permeate_flow - cfg.water_perm_coeff * (s.dp_membrane - s.dosmotic)) /
      std::max(1.0, s.permeate_flow);
  r.osmotic = (s.dosmotic - (cfg.cp_factor * (s.feed_osm + s.brine_osm) / 2.0 -
                             s.permeate_osm)) /
              std::max(1.0, s.dosmotic);
  r.salt_balance = (feed_salt - s.brine_tds * s.brine_flow -
                    s.permeate_tds * s.permeate_flow) /
                   std::max(1.0, feed_salt);
  const double sro = (feed_salt + s.brine_tds * s.brine_flow) /
                     (s.feed_flow + s.brine_flow);
  r.salt_transport =
      (s.permeate_tds * s.permeate_flow -
       cfg.salt_perm_coeff * (cfg.cp_factor * sro - s.permeate_tds)) /
      std::max(1.0, cfg.salt_perm_coeff * cfg.cp_factor * sro);
  return r;
}

std::vector<Violation> check_ro_bounds(const ROState& s, const PlantConfig& cfg,
                                       double tol) {
  std::vector<Violation> v;
  auto bad = [&](const std::string& what, double value, double bound) {
    v.push_back({what, value, bound});
  };
  const double on = s.on ? 1.0 : 0.0;
  if (!s.on) {
    if (std::abs(s.feed_flow) > tol || std::abs(s.permeate_flow) > tol ||
        std::abs(s.brine_flow) > tol)
      bad("off-state flow nonzero", s.feed_flow + s.permeate_flow + s.brine_flow, 0);
    if (std::abs(s.brine_tds) > tol || std::abs(s.permeate_tds) > tol)
      bad("off-state TDS nonzero", s.brine_tds + s.permeate_tds, 0);
    return v;
  }
  const double recovery = s.feed_flow > 0 ? s.permeate_flow / s.feed_flow : 0;
  if (recovery < cfg.recovery_min - tol)
    bad("recovery below minimum", recovery, cfg.recovery_min);
  if (recovery > cfg.recovery_max + tol)
    bad("recovery above maximum", recovery, cfg.recovery_max);
  if (s.feed_flow < cfg.feed_flow_min * on - tol)
    bad("feed flow below minimum", s.feed_flow, cfg.feed_flow_min);
  if (s.feed_flow > cfg.feed_flow_max * on + tol)
    bad("feed flow above maximum", s.feed_flow, cfg.feed_flow_max);
  if (s.brine_tds < cfg.seawater_tds * on - tol)
    bad("brine TDS below seawater TDS", s.brine_tds, cfg.seawater_tds);
  if (s.brine_tds > cfg.brine_tds_max * on + tol)
    bad("brine TDS above maximum", s.brine_tds, cfg.brine_tds_max);
  if (s.permeate_tds < -tol) bad("negative permeate TDS", s.permeate_tds, 0);
  if (s.permeate_tds > cfg.permeate_tds_max * on + tol)
    bad("permeate TDS above maximum", s.permeate_tds, cfg.permeate_tds_max);
  if (s.permeate_head > s.brine_head + tol)
    bad("permeate head above brine head", s.permeate_head, s.brine_head);
  if (s.brine_flow < -tol) bad("negative brine flow", s.brine_flow, 0);
  if (s.brine_flow > s.feed_flow + tol)
    bad("brine flow above feed flow", s.brine_flow, s.feed_flow);
  return v;
}

}  // namespace desal
