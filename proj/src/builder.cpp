#include "desal/builder.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <cmath>

namespace desal {

double spe_cap_for(FlexibilityMode mode, const PlantConfig& plant) {
  if (mode == FlexibilityMode::MixFlex || mode == FlexibilityMode::MixFlexIni)
    return plant.permeate_tds_max;
  return plant.outflow_tds_max;
}

namespace {

// Headroom [m3/hr] subtracted from the scheduled recovery ceiling: the
// simplified model understates permeate production by up to about this
// much, so schedules pinned at the cap would overshoot it when executed in
// the full model.
constexpr double kRecoveryErrorMargin = 1.0;

// Root of an increasing function by bisection; false when no sign change.
bool bisect_root(const std::function<double(double)>& g, double lo, double hi,
                 double& out) {
  if (g(lo) > 0 || g(hi) < 0) return false;
  for (int it = 0; it < 100; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (g(mid) <= 0)
      lo = mid;
    else
      hi = mid;
  }
  out = 0.5 * (lo + hi);
  return true;
}

}  // namespace

SurfaceSet tabulate_surfaces(const ConfigBundle& cfg, const PumpCurve& pump) {
  const auto& p = cfg.plant;
  const auto& w = cfg.pwl;
  SurfaceSet s;

  const auto flow = make_breaks(p.feed_flow_min, p.feed_flow_max, w.flow_step);
  const auto speed = make_breaks(cfg.pump_limits.speed_min,
                                 cfg.pump_limits.speed_max, w.speed_step);
  s.head = tabulate(
      [&](double f, double o) { return eval_head(pump, f, o); }, flow, speed);
  s.power = tabulate(
      [&](double f, double o) { return eval_power(pump, f, o); }, flow, speed);

  const double sbr_lo = p.seawater_tds / (1.0 - p.recovery_min);
  const double sbr_hi =
      std::min(p.brine_tds_max, p.seawater_tds / (1.0 - p.recovery_max));
  const double fbr_lo = p.feed_flow_min * (1.0 - p.recovery_max);
  const double fbr_hi = p.feed_flow_max * (1.0 - p.recovery_min);
  s.brine_prod = tabulate([](double sbr, double fbr) { return sbr * fbr; },
                          make_breaks(sbr_lo, sbr_hi, w.brine_tds_step),
                          make_breaks(fbr_lo, fbr_hi, w.brine_flow_step));

  const double sro_lo = 2.0 * p.seawater_tds / (2.0 - p.recovery_min);
  const double sro_hi = 2.0 * p.seawater_tds / (2.0 - p.recovery_max);
  const double fsum_lo = p.feed_flow_min * (2.0 - p.recovery_max);
  const double fsum_hi = p.feed_flow_max * (2.0 - p.recovery_min);
  s.conc_prod = tabulate([](double sro, double fsum) { return sro * fsum; },
                         make_breaks(sro_lo, sro_hi, w.conc_tds_step),
                         make_breaks(fsum_lo, fsum_hi, w.conc_flow_step));

  s.tank_prod = tabulate([](double stk, double wtk) { return stk * wtk; },
                         make_breaks(0.0, w.tank_tds_max, w.tank_tds_step),
                         make_breaks(cfg.tank.min_level, cfg.tank.capacity,
                                     w.tank_volume_step));

  // Flux tables over the pump grid (see SurfaceSet). The clamped variant
  // always returns a value so every vertex gets a finite entry; the strict
  // variant rejects points whose completion leaves the salt-surface hulls
  // and is used for the band measurement, because such points cannot
  // satisfy the linearized constraint system anyway.
  const double kw = p.water_perm_coeff;
  const double half_cpos = p.cp_factor * p.osmotic_coeff / 2.0;
  const auto& brx = s.brine_prod.x_breaks;
  const auto& bry = s.brine_prod.y_breaks;
  const auto& ccx = s.conc_prod.x_breaks;
  const auto& ccy = s.conc_prod.y_breaks;
  auto flux = [&](double H, double sbr) {
    return kw * ((1.0 + p.friction_coeff) / 2.0 * H -
                 p.permeate_pressure_set -
                 half_cpos * (p.seawater_tds + sbr));
  };
  auto clamp = [](double v, double lo, double hi) {
    return std::min(std::max(v, lo), hi);
  };
  auto solve_point = [&](double F, double H, bool strict, double& fpe,
                         double& mspe) {
    auto g_br = [&](double S) {
      const double fbr = clamp(F - flux(H, S), bry.front(), bry.back());
      return interpolate(s.brine_prod, S, fbr) - p.seawater_tds * F;
    };
    double sbr;
    if (!bisect_root(g_br, brx.front(), brx.back(), sbr)) {
      if (strict) return false;
      sbr = g_br(brx.front()) > 0 ? brx.front() : brx.back();
    }
    fpe = flux(H, sbr);
    if (strict && (F - fpe < bry.front() || F - fpe > bry.back())) return false;
    const double fsum = clamp(2.0 * F - fpe, ccy.front(), ccy.back());
    if (strict && (2.0 * F - fpe < ccy.front() || 2.0 * F - fpe > ccy.back()))
      return false;
    auto g_cc = [&](double S) {
      return interpolate(s.conc_prod, S, fsum) - 2.0 * p.seawater_tds * F;
    };
    double sro;
    if (!bisect_root(g_cc, ccx.front(), ccx.back(), sro)) {
      if (strict) return false;
      sro = g_cc(ccx.front()) > 0 ? ccx.front() : ccx.back();
    }
    mspe = p.salt_perm_coeff * p.cp_factor * sro;
    return true;
  };

  s.fpe_flux.x_breaks = flow;
  s.fpe_flux.y_breaks = speed;
  s.mspe_flux.x_breaks = flow;
  s.mspe_flux.y_breaks = speed;
  const int M = s.head.m_count(), N = s.head.n_count();
  s.fpe_flux.z.assign(M, std::vector<double>(N, 0.0));
  s.mspe_flux.z.assign(M, std::vector<double>(N, 0.0));
  for (int mi = 0; mi < M; ++mi)
    for (int ni = 0; ni < N; ++ni) {
      double fpe = 0, mspe = 0;
      solve_point(flow[mi], s.head.z[mi][ni], false, fpe, mspe);
      s.fpe_flux.z[mi][ni] = fpe;
      s.mspe_flux.z[mi][ni] = mspe;
    }

  // Band: largest deviation of the physics-consistent values from the
  // vertex interpolation over a dense sample of the reachable region
  // (head window, motor rating, affinity cap, recovery window), padded for
  // in-patch curvature between samples.
  const double eta = cfg.pump_limits.motor_eff * cfg.pump_limits.vfd_eff;
  double dev_fpe = 0, dev_mspe = 0;
  bool any = false;
  constexpr int kSub = 8;
  for (int a = 0; a + 1 < M; ++a)
    for (int b = 0; b + 1 < N; ++b)
      for (int i = 0; i <= kSub; ++i)
        for (int j = 0; j <= kSub; ++j) {
          const double F = flow[a] + (flow[a + 1] - flow[a]) * i / kSub;
          const double om = speed[b] + (speed[b + 1] - speed[b]) * j / kSub;
          const double H = interpolate(s.head, F, om);
          if (H < p.feed_pressure_min || H > p.feed_pressure_max) continue;
          if (interpolate(s.power, F, om) / eta > cfg.pump_limits.power_max)
            continue;
          if (F > cfg.pump_limits.flow_max_nominal * om) continue;
          double fpe = 0, mspe = 0;
          if (!solve_point(F, H, true, fpe, mspe)) continue;
          if (fpe < p.recovery_min * F || fpe > p.recovery_max * F) continue;
          any = true;
          dev_fpe = std::max(dev_fpe,
                             std::abs(fpe - interpolate(s.fpe_flux, F, om)));
          dev_mspe = std::max(
              dev_mspe, std::abs(mspe - interpolate(s.mspe_flux, F, om)));
        }
  if (any) {
    s.fpe_band = 1.25 * dev_fpe + 0.05;
    s.mspe_band = 1.25 * dev_mspe + 0.02;
  }
  return s;
}

namespace {

std::string hv(const char* base, int t) {
  return std::string(base) + "_" + std::to_string(t);
}
std::string hv(const char* base, int t, int extra) {
  return std::string(base) + "_" + std::to_string(t) + "_" +
         std::to_string(extra);
}

// Per-scenario grid variables and constraints for one hour.
void emit_grid_hour(MilpModel& m, const CaseData& data, HourVars& h,
                    const Scenario& sc, int t, int s_index, VarId p_hps,
                    VarId q_hps, VarId e_flush,
                    const std::optional<FlushSeries>& fixed_flush) {
  const auto& net = data.network;
  const auto& g = data.cfg.grid;
  const double dt = data.cfg.time.step_hours;
  const double sqrt2 = std::sqrt(2.0);
  const std::string tag = "s" + std::to_string(s_index);

  h.p_pv = m.add_var(0.0, sc.pv[t], VarType::Continuous, tag + hv("_ppv", t));
  h.q_pv = m.add_var(0.0, g.pv_rating, VarType::Continuous, tag + hv("_qpv", t));
  m.add_le({{h.p_pv, 1.0}, {h.q_pv, 1.0}}, sqrt2 * g.pv_rating);
  m.add_le({{h.p_pv, 1.0}, {h.q_pv, -1.0}}, sqrt2 * g.pv_rating);

  h.p_hdp = m.add_var(-kInf, kInf, VarType::Continuous, tag + hv("_phdp", t));
  h.p_buy = m.add_var(0.0, kInf, VarType::Continuous, tag + hv("_pbuy", t));
  h.p_sell = m.add_var(0.0, kInf, VarType::Continuous, tag + hv("_psell", t));
  // P_hdp = P_hps - P_pv + E_flush / dt
  if (fixed_flush) {
    m.add_eq({{h.p_hdp, 1.0}, {p_hps, -1.0}, {h.p_pv, 1.0}},
             fixed_flush->energy[t] / dt, tag + hv("_hdp", t));
  } else {
    m.add_eq({{h.p_hdp, 1.0}, {p_hps, -1.0}, {h.p_pv, 1.0}, {e_flush, -1.0 / dt}},
             0.0, tag + hv("_hdp", t));
  }
  m.add_eq({{h.p_buy, 1.0}, {h.p_sell, -1.0}, {h.p_hdp, -1.0}}, 0.0,
           tag + hv("_split", t));

  const int n_lines = static_cast<int>(net.lines.size());
  h.line_p.resize(n_lines);
  h.line_q.resize(n_lines);
  h.v_sq.resize(net.n_nodes);
  for (int li = 0; li < n_lines; ++li) {
    const double s_max = net.lines[li].s_max * net.s_base_kva;  // kVA
    h.line_p[li] = m.add_var(-s_max, s_max, VarType::Continuous,
                             tag + hv("_lp", t, li));
    h.line_q[li] = m.add_var(-s_max, s_max, VarType::Continuous,
                             tag + hv("_lq", t, li));
    m.add_row(-sqrt2 * s_max, {{h.line_p[li], 1.0}, {h.line_q[li], 1.0}},
              sqrt2 * s_max);
    m.add_row(-sqrt2 * s_max, {{h.line_p[li], 1.0}, {h.line_q[li], -1.0}},
              sqrt2 * s_max);
  }
  for (int j = 0; j < net.n_nodes; ++j) {
    h.v_sq[j] = m.add_var(net.v_sq_min, net.v_sq_max, VarType::Continuous,
                          tag + hv("_v", t, j));
  }
  m.fix_var(h.v_sq[net.substation], net.v_sq_sub);

  // Nodal balance: inflow - outflow = load (+ HDP net power at its node).
  for (int j = 0; j < net.n_nodes; ++j) {
    if (j == net.substation) continue;
    std::vector<LinTerm> bp, bq;
    for (int li = 0; li < n_lines; ++li) {
      if (net.lines[li].to == j) {
        bp.push_back({h.line_p[li], 1.0});
        bq.push_back({h.line_q[li], 1.0});
      } else if (net.lines[li].from == j) {
        bp.push_back({h.line_p[li], -1.0});
        bq.push_back({h.line_q[li], -1.0});
      }
    }
    if (j == net.hdp_node) {
      bp.push_back({h.p_hdp, -1.0});
      bq.push_back({q_hps, -1.0});
      bq.push_back({h.q_pv, 1.0});
    }
    m.add_eq(bp, data.base_load[t][j].p, tag + hv("_balp", t, j));
    m.add_eq(bq, data.base_load[t][j].q, tag + hv("_balq", t, j));
  }

  // Voltage drop: v_from - v_to = 2 (r P + x Q) in per-unit.
  for (int li = 0; li < n_lines; ++li) {
    const auto& l = net.lines[li];
    m.add_eq({{h.v_sq[l.from], 1.0},
              {h.v_sq[l.to], -1.0},
              {h.line_p[li], -2.0 * l.r / net.s_base_kva},
              {h.line_q[li], -2.0 * l.x / net.s_base_kva}},
             0.0, tag + hv("_drop", t, li));
  }
}

// Triangle interpolation stays within the vertex extremes of a patch, so a
// patch whose vertex range cannot meet a window that must hold while the
// plant is on can be excluded up front without cutting any feasible point.
void patch_range(const PwlSurface& s, int a, int b, double& lo, double& hi) {
  lo = kInf;
  hi = -kInf;
  for (int dm = 0; dm <= 1; ++dm)
    for (int dn = 0; dn <= 1; ++dn) {
      lo = std::min(lo, s.z[a + dm][b + dn]);
      hi = std::max(hi, s.z[a + dm][b + dn]);
    }
}

void prune_pump_patches(MilpModel& m, const PwlBlock& block,
                        const SurfaceSet& surfaces, const ConfigBundle& cfg) {
  const auto& head = surfaces.head;
  const auto& power = surfaces.power;
  const auto& p = cfg.plant;
  const auto& pl = cfg.pump_limits;
  const double eta = pl.motor_eff * pl.vfd_eff;
  for (int a = 0; a < head.m_count() - 1; ++a)
    for (int b = 0; b < head.n_count() - 1; ++b) {
      double h_lo, h_hi, p_lo, p_hi;
      patch_range(head, a, b, h_lo, h_hi);
      patch_range(power, a, b, p_lo, p_hi);
      const bool dead =
          h_hi < p.feed_pressure_min || h_lo > p.feed_pressure_max ||
          p_lo / eta > pl.power_max ||
          head.x_breaks[a] > pl.flow_max_nominal * head.y_breaks[b + 1];
      if (dead) {
        m.fix_var(block.u_up[a][b], 0.0);
        m.fix_var(block.u_lo[a][b], 0.0);
      }
    }
}

// Product blocks must meet z = c * F_fd for a feed flow inside its bounds;
// patches whose product range misses [c F_min, c F_max] are dead.
void prune_product_patches(MilpModel& m, const PwlBlock& block,
                           const PwlSurface& s, double z_min, double z_max) {
  for (int a = 0; a < s.m_count() - 1; ++a)
    for (int b = 0; b < s.n_count() - 1; ++b) {
      double lo, hi;
      patch_range(s, a, b, lo, hi);
      if (hi < z_min || lo > z_max) {
        m.fix_var(block.u_up[a][b], 0.0);
        m.fix_var(block.u_lo[a][b], 0.0);
      }
    }
}

// McCormick envelope of z = x y over the block's box. Each inequality
// holds at every grid vertex, so it holds for any convex combination of
// vertices — it tightens the LP relaxation without excluding any lambda
// assignment. The upper envelopes carry the on-indicator so the off state
// (x = y = z = 0) stays feasible.
void add_product_envelope(MilpModel& m, const PwlBlock& block,
                          const PwlSurface& s, VarId on) {
  const double xl = s.x_breaks.front(), xh = s.x_breaks.back();
  const double yl = s.y_breaks.front(), yh = s.y_breaks.back();
  const VarId x = block.x, y = block.y, z = block.z[0];
  m.add_ge({{z, 1.0}, {x, -yl}, {y, -xl}, {on, xl * yl}}, 0.0);
  m.add_ge({{z, 1.0}, {x, -yh}, {y, -xh}, {on, xh * yh}}, 0.0);
  m.add_le({{z, 1.0}, {x, -yl}, {y, -xh}, {on, xh * yl}}, 0.0);
  m.add_le({{z, 1.0}, {x, -yh}, {y, -xl}, {on, xl * yh}}, 0.0);
}

}  // namespace

BuiltModel build(const CaseData& data, const SurfaceSet& surfaces,
                 const BuildOptions& options) {
  const auto& cfg = data.cfg;
  const auto& p = cfg.plant;
  const auto& pl = cfg.pump_limits;
  const int T = cfg.time.horizon_steps;
  const double dt = cfg.time.step_hours;
  const bool mixing = mode_mixing(options.mode);
  const bool closure = mode_end_closure(options.mode);
  const bool fixed_commit = options.fixed_commitment.has_value();

  // Quick feasibility screen before assembling thousands of rows.
  double total_demand = 0;
  for (double d : data.market.water_demand) total_demand += d * dt;
  const double max_production = T * dt * p.feed_flow_max * p.recovery_max;
  if (total_demand > max_production)
    throw ConfigError("build: water demand " + std::to_string(total_demand) +
                      " m3 exceeds maximum producible " +
                      std::to_string(max_production) + " m3");

  BuiltModel built;
  built.options = options;
  built.data = &data;
  built.surfaces = &surfaces;
  built.spe_cap = spe_cap_for(options.mode, p);

  if (options.grid_scenarios) {
    built.scenarios = *options.grid_scenarios;
  } else {
    Scenario sc;
    if (options.series_override) {
      sc = *options.series_override;
    } else {
      sc.pv = data.market.pv_forecast;
      sc.buy_price = data.market.buy_price;
      sc.sell_price = data.market.sell_price;
    }
    sc.probability = 1.0;
    built.scenarios.push_back(std::move(sc));
  }
  for (const auto& sc : built.scenarios) {
    if (static_cast<int>(sc.pv.size()) != T ||
        static_cast<int>(sc.buy_price.size()) != T ||
        static_cast<int>(sc.sell_price.size()) != T)
      throw DataError("build: scenario series length mismatch");
  }
  const int S = static_cast<int>(built.scenarios.size());

  MilpModel& m = built.model;
  const VarId one = m.add_var(1.0, 1.0, VarType::Continuous, "one");
  built.one = one;
  const double spe_cap = built.spe_cap;
  const double fpe_max = p.feed_flow_max * p.recovery_max;
  const double eta = pl.motor_eff * pl.vfd_eff;
  const double flush_w_max = cfg.flush.water_shutdown + cfg.flush.water_restart;
  const double flush_e_max = cfg.flush.energy_shutdown + cfg.flush.energy_restart;

  built.hours.resize(T);
  CommitmentPlan fixed_plan;
  if (fixed_commit)
    fixed_plan = derive_indicators(*options.fixed_commitment,
                                   options.fixed_commitment->front() != 0);

  for (int t = 0; t < T; ++t) {
    HourVars& h = built.hours[t];
    h.on = m.add_var(0.0, 1.0, VarType::Binary, hv("on", t));
    h.shut = m.add_var(0.0, 1.0, VarType::Binary, hv("shut", t));
    h.start = m.add_var(0.0, 1.0, VarType::Binary, hv("start", t));
    if (fixed_commit) {
      m.fix_var(h.on, fixed_plan.on[t]);
      m.fix_var(h.shut, fixed_plan.shut[t]);
      m.fix_var(h.start, fixed_plan.start[t]);
    }
  }

  for (int t = 0; t < T; ++t) {
    HourVars& h = built.hours[t];

    // Commitment indicator logic (plant on before the horizon).
    if (!fixed_commit) {
      if (t == 0) {
        // Transitions across the horizon boundary carry no flush cost.
        m.fix_var(h.shut, 0.0);
        m.fix_var(h.start, 0.0);
      } else {
        const VarId prev = built.hours[t - 1].on;
        m.add_ge({{h.shut, 1.0}, {prev, -1.0}, {h.on, 1.0}}, 0.0);
        m.add_le({{h.shut, 1.0}, {prev, -1.0}}, 0.0);
        m.add_le({{h.shut, 1.0}, {h.on, 1.0}}, 1.0);
        m.add_ge({{h.start, 1.0}, {h.on, -1.0}, {prev, 1.0}}, 0.0);
        m.add_le({{h.start, 1.0}, {h.on, -1.0}}, 0.0);
        m.add_le({{h.start, 1.0}, {prev, 1.0}}, 1.0);
      }
      // Minimum off duration, truncated at the horizon end.
      for (int z = t; z < std::min(T, t + cfg.flush.min_off_hours); ++z)
        m.add_le({{built.hours[z].on, 1.0}, {h.shut, 1.0}}, 1.0);
    }

    // Flushing consumption; restart flush booked the hour before the start.
    h.w_flush = m.add_var(0.0, flush_w_max, VarType::Continuous, hv("wfl", t));
    h.e_flush = m.add_var(0.0, flush_e_max, VarType::Continuous, hv("efl", t));
    if (options.fixed_flush) {
      m.fix_var(h.w_flush, options.fixed_flush->water[t]);
      m.fix_var(h.e_flush, options.fixed_flush->energy[t]);
    } else {
      std::vector<LinTerm> fw{{h.w_flush, 1.0},
                              {h.shut, -cfg.flush.water_shutdown}};
      std::vector<LinTerm> fe{{h.e_flush, 1.0},
                              {h.shut, -cfg.flush.energy_shutdown}};
      if (t + 1 < T) {
        fw.push_back({built.hours[t + 1].start, -cfg.flush.water_restart});
        fe.push_back({built.hours[t + 1].start, -cfg.flush.energy_restart});
      }
      m.add_eq(fw, 0.0, hv("wfl_def", t));
      m.add_eq(fe, 0.0, hv("efl_def", t));
    }

    // Plant physics: either the PWL linearization or the enumerated
    // operating-point selection.
    VarId pump_power;  // shaft power feeding the electrical side
    if (options.fop_points) {
      const auto& pts = *options.fop_points;
      if (pts.empty()) throw ConfigError("build: empty operating-point set");
      h.fop_f_fd = m.add_var(0.0, p.feed_flow_max, VarType::Continuous,
                             hv("ffd", t));
      h.fop_omega = m.add_var(0.0, pl.speed_max, VarType::Continuous,
                              hv("omega", t));
      h.fop_head = m.add_var(0.0, p.feed_pressure_max, VarType::Continuous,
                             hv("hfd", t));
      h.fop_power = m.add_var(0.0, kInf, VarType::Continuous, hv("php", t));
      h.f_pe = m.add_var(0.0, fpe_max, VarType::Continuous, hv("fpe", t));
      h.f_br = m.add_var(0.0, p.feed_flow_max, VarType::Continuous,
                         hv("fbr", t));
      h.m_spe = m.add_var(0.0, kInf, VarType::Continuous, hv("mspe", t));

      h.fop_sel.resize(pts.size());
      std::vector<LinTerm> sel_sum{{h.on, -1.0}};
      std::vector<LinTerm> def_f{{h.fop_f_fd, -1.0}};
      std::vector<LinTerm> def_o{{h.fop_omega, -1.0}};
      std::vector<LinTerm> def_h{{h.fop_head, -1.0}};
      std::vector<LinTerm> def_p{{h.fop_power, -1.0}};
      std::vector<LinTerm> def_pe{{h.f_pe, -1.0}};
      std::vector<LinTerm> def_br{{h.f_br, -1.0}};
      std::vector<LinTerm> def_ms{{h.m_spe, -1.0}};
      for (size_t i = 0; i < pts.size(); ++i) {
        h.fop_sel[i] = m.add_var(0.0, 1.0, VarType::Binary,
                                 hv("sel", t, static_cast<int>(i)));
        const VarId s = h.fop_sel[i];
        sel_sum.push_back({s, 1.0});
        def_f.push_back({s, pts[i].feed_flow});
        def_o.push_back({s, pts[i].speed});
        def_h.push_back({s, pts[i].head});
        def_p.push_back({s, pts[i].power});
        def_pe.push_back({s, pts[i].permeate_flow});
        def_br.push_back({s, pts[i].brine_flow});
        def_ms.push_back({s, pts[i].permeate_salt_rate});
      }
      m.add_eq(sel_sum, 0.0, hv("sel_sum", t));
      m.add_eq(def_f, 0.0);
      m.add_eq(def_o, 0.0);
      m.add_eq(def_h, 0.0);
      m.add_eq(def_p, 0.0);
      m.add_eq(def_pe, 0.0);
      m.add_eq(def_br, 0.0);
      m.add_eq(def_ms, 0.0);
      pump_power = h.fop_power;
    } else {
      h.pump_block = emit_milp_block({&surfaces.head, &surfaces.power}, h.on,
                                     m, hv("pump", t));
      h.brine_block = emit_milp_block({&surfaces.brine_prod}, h.on, m,
                                      hv("brine", t));
      h.conc_block = emit_milp_block({&surfaces.conc_prod}, h.on, m,
                                     hv("conc", t));
      prune_pump_patches(m, h.pump_block, surfaces, cfg);
      prune_product_patches(m, h.brine_block, surfaces.brine_prod,
                            p.seawater_tds * p.feed_flow_min,
                            p.seawater_tds * p.feed_flow_max);
      prune_product_patches(m, h.conc_block, surfaces.conc_prod,
                            2.0 * p.seawater_tds * p.feed_flow_min,
                            2.0 * p.seawater_tds * p.feed_flow_max);
      add_product_envelope(m, h.brine_block, surfaces.brine_prod, h.on);
      add_product_envelope(m, h.conc_block, surfaces.conc_prod, h.on);
      const VarId f_fd = h.pump_block.x;
      const VarId omega = h.pump_block.y;
      const VarId z_head = h.pump_block.z[0];
      h.f_br = h.brine_block.y;
      h.f_sum = h.conc_block.y;
      h.f_pe = m.add_var(0.0, fpe_max, VarType::Continuous, hv("fpe", t));
      h.m_spe = m.add_var(0.0, kInf, VarType::Continuous, hv("mspe", t));

      // Pump envelope: affinity flow cap and feed-head window while on.
      m.add_le({{f_fd, 1.0}, {omega, -pl.flow_max_nominal}}, 0.0);
      m.add_ge({{z_head, 1.0}, {h.on, -p.feed_pressure_min}}, 0.0);
      m.add_le({{z_head, 1.0}, {h.on, -p.feed_pressure_max}}, 0.0);

      // Water balance and recovery window.
      m.add_eq({{f_fd, 1.0}, {h.f_pe, -1.0}, {h.f_br, -1.0}}, 0.0,
               hv("water_bal", t));
      m.add_ge({{h.f_pe, 1.0}, {f_fd, -p.recovery_min}}, 0.0);
      // The upper recovery bound keeps headroom equal to the simplified
      // model's documented production-error band (the full model yields up
      // to ~1 m3/hr more permeate), so executing the schedule in the full
      // model cannot overshoot the membrane recovery limit.
      m.add_le({{h.f_pe, 1.0}, {f_fd, -p.recovery_max},
                {h.on, kRecoveryErrorMargin}},
               0.0);

      // Permeate production: F_pe = kW (dH - dpi) with
      // dH = (1 + k_fr)/2 H_fd - H_pe on, dpi = C kos (S_fd on + S_br)/2.
      const double kw = p.water_perm_coeff;
      const double half_cpos = p.cp_factor * p.osmotic_coeff / 2.0;
      m.add_eq(
          {{h.f_pe, 1.0},
           {z_head, -kw * (1.0 + p.friction_coeff) / 2.0},
           {h.on, kw * (p.permeate_pressure_set + half_cpos * p.seawater_tds)},
           {h.brine_block.x, kw * half_cpos}},
          0.0, hv("prod", t));

      // Simplified salt balance: S_br F_br = S_fd F_fd.
      m.add_eq({{h.brine_block.z[0], 1.0}, {f_fd, -p.seawater_tds}}, 0.0,
               hv("salt_bal", t));

      // Concentrate-side TDS: F_sum = F_fd + F_br and
      // S_ro F_sum = S_fd F_fd + S_br F_br = 2 S_fd F_fd.
      m.add_eq({{h.f_sum, 1.0}, {f_fd, -1.0}, {h.f_br, -1.0}}, 0.0,
               hv("fsum", t));
      m.add_eq({{h.conc_block.z[0], 1.0}, {f_fd, -2.0 * p.seawater_tds}}, 0.0,
               hv("conc_def", t));

      // Salt transport and permeate-quality caps:
      // M_Spe = kS C S_ro; M_Spe <= S_pe_max F_pe; M_Spe <= S_pe_max F_pe_max on.
      m.add_eq({{h.m_spe, 1.0},
                {h.conc_block.x, -p.salt_perm_coeff * p.cp_factor}},
               0.0, hv("mspe_def", t));
      m.add_le({{h.m_spe, 1.0}, {h.f_pe, -spe_cap}}, 0.0);
      m.add_le({{h.m_spe, 1.0}, {h.on, -spe_cap * fpe_max}}, 0.0);

      // Redundant physics bands: F_pe and M_Spe stay within a measured band
      // of their physics-consistent values interpolated over the shared
      // pump lambda-block. Valid for every integer-feasible point, cuts off
      // relaxation solutions whose salt variables cheat the flux equation.
      if (std::isfinite(surfaces.fpe_band)) {
        std::vector<LinTerm> tf{{h.f_pe, 1.0}};
        std::vector<LinTerm> tm{{h.m_spe, 1.0}};
        for (int mi = 0; mi < surfaces.fpe_flux.m_count(); ++mi)
          for (int ni = 0; ni < surfaces.fpe_flux.n_count(); ++ni) {
            const VarId lam = h.pump_block.lambda[mi][ni];
            tf.push_back({lam, -surfaces.fpe_flux.z[mi][ni]});
            tm.push_back({lam, -surfaces.mspe_flux.z[mi][ni]});
          }
        m.add_row(-surfaces.fpe_band, tf, surfaces.fpe_band,
                  hv("fpe_band", t));
        m.add_row(-surfaces.mspe_band, tm, surfaces.mspe_band,
                  hv("mspe_band", t));
      }
      pump_power = h.pump_block.z[1];
    }

    // Electrical side of the pump system.
    h.p_hps = m.add_var(0.0, pl.power_max, VarType::Continuous, hv("phps", t));
    h.q_hps = m.add_var(0.0, kInf, VarType::Continuous, hv("qhps", t));
    m.add_eq({{h.p_hps, eta}, {pump_power, -1.0}}, 0.0, hv("phps_def", t));
    m.add_eq({{h.q_hps, 1.0}, {h.p_hps, -pl.q_over_p}}, 0.0, hv("qhps_def", t));

    // Tank dynamics.
    if (mixing) {
      h.tank_block = emit_milp_block({&surfaces.tank_prod}, one, m,
                                     hv("tank", t));
      add_product_envelope(m, h.tank_block, surfaces.tank_prod, one);
      h.w_tk = h.tank_block.y;
      h.s_out = m.add_var(0.0, p.outflow_tds_max, VarType::Continuous,
                          hv("sout", t));
    } else {
      h.w_tk = m.add_var(cfg.tank.min_level, cfg.tank.capacity,
                         VarType::Continuous, hv("wtk", t));
    }

    const double demand = data.market.water_demand[t];
    {
      std::vector<LinTerm> wb{{h.w_tk, 1.0},
                              {h.f_pe, -dt},
                              {h.w_flush, 1.0}};
      double rhs = -demand * dt;
      if (t == 0)
        rhs += cfg.tank.initial_level;
      else
        wb.push_back({built.hours[t - 1].w_tk, -1.0});
      m.add_eq(wb, rhs, hv("tank_w", t));
    }
    if (mixing) {
      // S_out = (S_tk_{t-1} + S_tk_t)/2.
      std::vector<LinTerm> so{{h.s_out, 1.0}, {h.tank_block.x, -0.5}};
      double so_rhs = 0.0;
      if (t == 0)
        so_rhs = 0.5 * cfg.tank.initial_tds;
      else
        so.push_back({built.hours[t - 1].tank_block.x, -0.5});
      m.add_eq(so, so_rhs, hv("sout_def", t));

      // Salt balance with the M_Stk = S_tk W_tk product from the PWL block.
      std::vector<LinTerm> sb{{h.tank_block.z[0], 1.0},
                              {h.m_spe, -dt},
                              {h.s_out, demand * dt},
                              {h.w_flush, cfg.tank.flush_tds_estimate}};
      double sb_rhs = 0.0;
      if (t == 0)
        sb_rhs = cfg.tank.initial_tds * cfg.tank.initial_level;
      else
        sb.push_back({built.hours[t - 1].tank_block.z[0], -1.0});
      m.add_eq(sb, sb_rhs, hv("tank_s", t));
    }
  }

  // Terminal storage and optional end-of-horizon TDS closure.
  m.add_ge({{built.hours[T - 1].w_tk, 1.0}}, cfg.tank.initial_level,
           "terminal_volume");
  if (mixing && closure)
    m.add_le({{built.hours[T - 1].tank_block.x, 1.0}}, cfg.tank.initial_tds,
             "terminal_tds");

  // Grid side, replicated per scenario; objective is probability-weighted.
  built.scenario_grid.assign(S, built.hours);
  for (int s = 0; s < S; ++s) {
    const Scenario& sc = built.scenarios[s];
    for (int t = 0; t < T; ++t) {
      HourVars& g = built.scenario_grid[s][t];
      emit_grid_hour(m, data, g, sc, t, s, g.p_hps, g.q_hps, g.e_flush,
                     options.fixed_flush);
      m.add_objective_term(g.p_buy, sc.probability * dt * sc.buy_price[t]);
      m.add_objective_term(g.p_sell, -sc.probability * dt * sc.sell_price[t]);
    }
  }
  for (int t = 0; t < T; ++t) {
    // hours[t] keeps the first scenario's grid handles for extraction.
    built.hours[t] = built.scenario_grid[0][t];
  }
  return built;
}

Schedule extract_schedule(const BuiltModel& built, const MilpSolution& sol) {
  if (!sol.has_solution())
    throw DataError("extract_schedule: no incumbent solution");
  const CaseData& data = *built.data;
  const int T = data.cfg.time.horizon_steps;
  const double dt = data.cfg.time.step_hours;
  const bool mixing = mode_mixing(built.options.mode);
  const double check_tol = 1e-4;

  Schedule sched;
  sched.mode = built.options.mode;
  sched.status = sol.status;
  sched.gap = sol.gap;
  sched.total_cost = sol.objective;
  sched.hours.resize(T);

  for (int t = 0; t < T; ++t) {
    const HourVars& h = built.hours[t];
    HourPlan& hp = sched.hours[t];

    auto check = [&](const PwlBlock& block,
                     const std::vector<const PwlSurface*>& surf,
                     const char* what) {
      const auto issues = check_block_solution(block, surf, sol, check_tol);
      if (!issues.empty())
        throw DataError(std::string("extract_schedule: ") + what + " block at hour " +
                        std::to_string(t) + ": " + issues.front());
    };
    hp.on = sol.value(h.on) > 0.5;
    hp.shut = sol.value(h.shut) > 0.5;
    hp.start = sol.value(h.start) > 0.5;
    if (built.options.fop_points) {
      hp.feed_flow = sol.value(h.fop_f_fd);
      hp.speed = sol.value(h.fop_omega);
      hp.feed_head = sol.value(h.fop_head);
      hp.p_hpp = sol.value(h.fop_power);
      hp.permeate_flow = sol.value(h.f_pe);
      hp.brine_flow = sol.value(h.f_br);
      if (hp.on && hp.brine_flow > 1e-9)
        hp.brine_tds = data.cfg.plant.seawater_tds * hp.feed_flow / hp.brine_flow;
    } else {
      check(h.pump_block, {&built.surfaces->head, &built.surfaces->power},
            "pump");
      check(h.brine_block, {&built.surfaces->brine_prod}, "brine");
      check(h.conc_block, {&built.surfaces->conc_prod}, "concentrate");
      hp.feed_flow = sol.value(h.pump_block.x);
      hp.speed = sol.value(h.pump_block.y);
      hp.feed_head = sol.value(h.pump_block.z[0]);
      hp.p_hpp = sol.value(h.pump_block.z[1]);
      hp.permeate_flow = sol.value(h.f_pe);
      hp.brine_flow = sol.value(h.f_br);
      hp.brine_tds = sol.value(h.brine_block.x);
      hp.conc_tds = sol.value(h.conc_block.x);
    }
    if (mixing) check(h.tank_block, {&built.surfaces->tank_prod}, "tank");
    hp.permeate_salt_rate = sol.value(h.m_spe);
    hp.flush_water = sol.value(h.w_flush);
    hp.flush_energy = sol.value(h.e_flush);
    hp.tank_volume = sol.value(h.w_tk);
    if (mixing) {
      hp.tank_tds = sol.value(h.tank_block.x);
      hp.outflow_tds = sol.value(h.s_out);
    }
    hp.p_hps = sol.value(h.p_hps);
    hp.q_hps = sol.value(h.q_hps);

    // Grid quantities and cost: expectation over scenarios.
    for (size_t s = 0; s < built.scenarios.size(); ++s) {
      const Scenario& sc = built.scenarios[s];
      const HourVars& g = built.scenario_grid[s][t];
      const double w = sc.probability;
      hp.p_pv += w * sol.value(g.p_pv);
      hp.q_pv += w * sol.value(g.q_pv);
      hp.p_hdp += w * sol.value(g.p_hdp);
      hp.p_buy += w * sol.value(g.p_buy);
      hp.p_sell += w * sol.value(g.p_sell);
      hp.cost += w * dt *
                 (sc.buy_price[t] * sol.value(g.p_buy) -
                  sc.sell_price[t] * sol.value(g.p_sell));
    }
    sched.total_production += hp.permeate_flow * dt;
  }
  return sched;
}

namespace {

struct WsPoint {
  double F = 0, w = 0, H = 0, P = 0;
  double fpe = 0, fbr = 0, sbr = 0, sro = 0, fsum = 0, mspe = 0;
};

// Write the three lambda weights and the triangle binary of a located
// point into a start vector.
void fill_block_point(std::vector<double>& vals, const PwlBlock& block,
                      const TrianglePoint& tp) {
  vals[block.lambda[tp.a][tp.b].index] = tp.w0;
  if (tp.upper) {
    vals[block.lambda[tp.a][tp.b + 1].index] = tp.w1;
    vals[block.u_up[tp.a][tp.b].index] = 1.0;
  } else {
    vals[block.lambda[tp.a + 1][tp.b].index] = tp.w1;
    vals[block.u_lo[tp.a][tp.b].index] = 1.0;
  }
  vals[block.lambda[tp.a + 1][tp.b + 1].index] = tp.w2;
}

}  // namespace

std::vector<double> construct_warm_start(const BuiltModel& built) {
  try {
    if (built.options.fop_points) return {};
    const CaseData& data = *built.data;
    const ConfigBundle& cfg = data.cfg;
    const auto& p = cfg.plant;
    const auto& pl = cfg.pump_limits;
    const SurfaceSet& sf = *built.surfaces;
    const int T = cfg.time.horizon_steps;
    const double dt = cfg.time.step_hours;
    const bool mixing = mode_mixing(built.options.mode);
    const bool closure = mode_end_closure(built.options.mode);
    const double eta = pl.motor_eff * pl.vfd_eff;
    const double spe_cap = built.spe_cap;
    const double fpe_max = p.feed_flow_max * p.recovery_max;
    const double tol = 1e-9;

    // Sample (flow, speed) points of the linearized pump surface. Any
    // point works as a start because the lambda weights reproduce the PWL
    // head/power values exactly; sampling finer than the grid lets the
    // start match the required average production closely.
    std::vector<WsPoint> cands;
    const auto& brx = sf.brine_prod.x_breaks;
    const auto& bry = sf.brine_prod.y_breaks;
    const auto& ccx = sf.conc_prod.x_breaks;
    const auto& ccy = sf.conc_prod.y_breaks;
    const double kw = p.water_perm_coeff;
    const double half_cpos = p.cp_factor * p.osmotic_coeff / 2.0;
    const double f_lo = sf.head.x_breaks.front();
    const double f_hi = sf.head.x_breaks.back();
    const double w_lo = sf.head.y_breaks.front();
    const double w_hi = sf.head.y_breaks.back();
    constexpr int kFlowSamples = 46, kSpeedSamples = 61;
    for (int mi = 0; mi < kFlowSamples; ++mi)
      for (int ni = 0; ni < kSpeedSamples; ++ni) {
        WsPoint c;
        c.F = f_lo + (f_hi - f_lo) * mi / (kFlowSamples - 1);
        c.w = w_lo + (w_hi - w_lo) * ni / (kSpeedSamples - 1);
        c.H = interpolate(sf.head, c.F, c.w);
        c.P = interpolate(sf.power, c.F, c.w);
        if (c.H < p.feed_pressure_min - tol || c.H > p.feed_pressure_max + tol)
          continue;
        if (c.F > pl.flow_max_nominal * c.w + tol) continue;
        if (c.P / eta > pl.power_max + tol) continue;
        auto fpe_of = [&](double S) {
          return kw * ((1.0 + p.friction_coeff) / 2.0 * c.H -
                       p.permeate_pressure_set -
                       half_cpos * (p.seawater_tds + S));
        };
        auto g_br = [&](double S) {
          const double fbr = c.F - fpe_of(S);
          if (fbr < bry.front()) return -kInf;
          if (fbr > bry.back()) return kInf;
          return interpolate(sf.brine_prod, S, fbr) - p.seawater_tds * c.F;
        };
        if (!bisect_root(g_br, brx.front(), brx.back(), c.sbr)) continue;
        c.fpe = fpe_of(c.sbr);
        c.fbr = c.F - c.fpe;
        if (c.fpe < p.recovery_min * c.F - tol ||
            c.fpe > p.recovery_max * c.F - kRecoveryErrorMargin + tol)
          continue;
        if (c.fpe <= 0 || c.fpe > fpe_max + tol) continue;
        c.fsum = c.F + c.fbr;
        if (c.fsum < ccy.front() - tol || c.fsum > ccy.back() + tol) continue;
        auto g_cc = [&](double S) {
          return interpolate(sf.conc_prod, S, c.fsum) -
                 2.0 * p.seawater_tds * c.F;
        };
        if (!bisect_root(g_cc, ccx.front(), ccx.back(), c.sro)) continue;
        c.mspe = p.salt_perm_coeff * p.cp_factor * c.sro;
        if (c.mspe > spe_cap * c.fpe + tol) continue;
        cands.push_back(c);
      }
    // Cheapest power first: for a fixed commitment the start's cost is
    // dominated by the pump energy.
    std::sort(cands.begin(), cands.end(),
              [](const WsPoint& a, const WsPoint& b) { return a.P < b.P; });

    // Candidate commitments: the fixed one when given, otherwise contiguous
    // on-windows starting at hour 0 (the plant enters the day running), so
    // the expensive tail of the day can be skipped.
    std::vector<std::vector<uint8_t>> commitments;
    if (built.options.fixed_commitment) {
      commitments.push_back(*built.options.fixed_commitment);
    } else {
      for (int k = 1; k <= T; ++k) {
        std::vector<uint8_t> seq(T, 0);
        std::fill(seq.begin(), seq.begin() + k, uint8_t{1});
        commitments.push_back(std::move(seq));
      }
    }

    const NetworkModel& net = data.network;
    double best_cost = kInf;
    std::vector<double> best;
    for (const auto& on_seq : commitments) {
    const CommitmentPlan plan = derive_indicators(
        on_seq, built.options.fixed_commitment ? on_seq.front() != 0 : true);
    FlushSeries flush;
    if (built.options.fixed_flush)
      flush = *built.options.fixed_flush;
    else
      flush = flush_consumption(plan, cfg.flush);
    int n_on = 0;
    for (uint8_t u : on_seq) n_on += u != 0;
    if (n_on == 0) continue;
    double need = 0;
    for (int t = 0; t < T; ++t)
      need += data.market.water_demand[t] * dt + flush.water[t];
    const double req = need / (n_on * dt);

    // Validates a per-hour candidate assignment (pts[t] = index into cands,
    // -1 when the plant is off) and records it when it beats the best start
    // found so far. Returns whether the assignment is feasible.
    auto try_assignment = [&](const std::vector<int>& pts) -> bool {
      // Tank recursion under the linearized salt product.
      std::vector<double> w_tk(T), s_tk(T, 0.0), m_tk(T, 0.0), s_out(T, 0.0);
      double wprev = cfg.tank.initial_level;
      double sprev = cfg.tank.initial_tds;
      double mprev = cfg.tank.initial_tds * cfg.tank.initial_level;
      for (int t = 0; t < T; ++t) {
        const double fpe = pts[t] >= 0 ? cands[pts[t]].fpe : 0.0;
        const double mspe = pts[t] >= 0 ? cands[pts[t]].mspe : 0.0;
        const double d = data.market.water_demand[t];
        const double w = wprev + (fpe - d) * dt - flush.water[t];
        if (w < cfg.tank.min_level - tol || w > cfg.tank.capacity + tol)
          return false;
        w_tk[t] = w;
        if (mixing) {
          const double rhs = mprev + mspe * dt - sprev * d * dt / 2.0 -
                             cfg.tank.flush_tds_estimate * flush.water[t];
          auto g_tk = [&](double s) {
            return interpolate(sf.tank_prod, s, w) + d * dt * s / 2.0 - rhs;
          };
          double s;
          if (!bisect_root(g_tk, sf.tank_prod.x_breaks.front(),
                           sf.tank_prod.x_breaks.back(), s))
            return false;
          s_tk[t] = s;
          s_out[t] = (sprev + s) / 2.0;
          if (s_out[t] > p.outflow_tds_max + tol) return false;
          m_tk[t] = interpolate(sf.tank_prod, s, w);
          sprev = s;
          mprev = m_tk[t];
        }
        wprev = w;
      }
      if (w_tk[T - 1] < cfg.tank.initial_level - tol) return false;
      if (mixing && closure && s_tk[T - 1] > cfg.tank.initial_tds + tol)
        return false;

      // Network feasibility for every scenario hour; PV is curtailed
      // entirely when full output violates a limit.
      const int S = static_cast<int>(built.scenarios.size());
      std::vector<std::vector<double>> ppv(S, std::vector<double>(T, 0.0));
      std::vector<std::vector<double>> phdp(S, std::vector<double>(T, 0.0));
      std::vector<std::vector<PowerFlow>> flows(S, std::vector<PowerFlow>(T));
      for (int s = 0; s < S; ++s) {
        const Scenario& sc = built.scenarios[s];
        for (int t = 0; t < T; ++t) {
          const double p_hps = pts[t] >= 0 ? cands[pts[t]].P / eta : 0.0;
          const double q_hps = pl.q_over_p * p_hps;
          bool hour_ok = false;
          for (double pv : {sc.pv[t], 0.0}) {
            const double net_p = p_hps - pv + flush.energy[t] / dt;
            auto inj = data.base_load[t];
            inj[net.hdp_node].p += net_p;
            inj[net.hdp_node].q += q_hps;
            PowerFlow flow = lindistflow_solve(net, inj);
            if (check_network_limits(flow, net, 0.0).empty()) {
              ppv[s][t] = pv;
              phdp[s][t] = net_p;
              flows[s][t] = std::move(flow);
              hour_ok = true;
              break;
            }
          }
          if (!hour_ok) return false;
        }
      }

      // Exact objective of this start.
      double cost = 0;
      for (int s = 0; s < S; ++s) {
        const Scenario& sc = built.scenarios[s];
        for (int t = 0; t < T; ++t)
          cost += sc.probability *
                  (sc.buy_price[t] * std::max(phdp[s][t], 0.0) -
                   sc.sell_price[t] * std::max(-phdp[s][t], 0.0)) *
                  dt;
      }
      if (cost >= best_cost) return true;

      // Assemble the start vector.
      std::vector<double> vals(built.model.num_vars(), 0.0);
      vals[built.one.index] = 1.0;
      for (int t = 0; t < T; ++t) {
        const HourVars& h = built.hours[t];
        vals[h.on.index] = plan.on[t];
        vals[h.shut.index] = plan.shut[t];
        vals[h.start.index] = plan.start[t];
        vals[h.w_flush.index] = flush.water[t];
        vals[h.e_flush.index] = flush.energy[t];
        if (pts[t] >= 0) {
          const WsPoint& c = cands[pts[t]];
          fill_block_point(vals, h.pump_block,
                           locate_point(sf.head, c.F, c.w));
          vals[h.pump_block.x.index] = c.F;
          vals[h.pump_block.y.index] = c.w;
          vals[h.pump_block.z[0].index] = c.H;
          vals[h.pump_block.z[1].index] = c.P;
          fill_block_point(vals, h.brine_block,
                           locate_point(sf.brine_prod, c.sbr, c.fbr));
          vals[h.brine_block.x.index] = c.sbr;
          vals[h.brine_block.y.index] = c.fbr;
          vals[h.brine_block.z[0].index] = p.seawater_tds * c.F;
          fill_block_point(vals, h.conc_block,
                           locate_point(sf.conc_prod, c.sro, c.fsum));
          vals[h.conc_block.x.index] = c.sro;
          vals[h.conc_block.y.index] = c.fsum;
          vals[h.conc_block.z[0].index] = 2.0 * p.seawater_tds * c.F;
          vals[h.f_pe.index] = c.fpe;
          vals[h.m_spe.index] = c.mspe;
          vals[h.p_hps.index] = c.P / eta;
          vals[h.q_hps.index] = pl.q_over_p * c.P / eta;
        }
        if (mixing) {
          fill_block_point(vals, h.tank_block,
                           locate_point(sf.tank_prod, s_tk[t], w_tk[t]));
          vals[h.tank_block.x.index] = s_tk[t];
          vals[h.tank_block.y.index] = w_tk[t];
          vals[h.tank_block.z[0].index] = m_tk[t];
          vals[h.s_out.index] = s_out[t];
        } else {
          vals[h.w_tk.index] = w_tk[t];
        }
      }
      for (size_t s = 0; s < built.scenario_grid.size(); ++s)
        for (int t = 0; t < T; ++t) {
          const HourVars& g = built.scenario_grid[s][t];
          vals[g.p_pv.index] = ppv[s][t];
          vals[g.q_pv.index] = 0.0;
          vals[g.p_hdp.index] = phdp[s][t];
          vals[g.p_buy.index] = std::max(phdp[s][t], 0.0);
          vals[g.p_sell.index] = std::max(-phdp[s][t], 0.0);
          const PowerFlow& fl = flows[s][t];
          for (size_t li = 0; li < net.lines.size(); ++li) {
            vals[g.line_p[li].index] = fl.line_p[li];
            vals[g.line_q[li].index] = fl.line_q[li];
          }
          for (int j = 0; j < net.n_nodes; ++j)
            vals[g.v_sq[j].index] = fl.v_sq[j];
        }
      best_cost = cost;
      best = std::move(vals);
      return true;
    };

    // Constant-point starts: smallest production surplus first.
    int feasible_tried = 0;
    for (size_t ci = 0; ci < cands.size(); ++ci) {
      if (cands[ci].fpe < req - 1e-12) continue;
      if (feasible_tried >= 3) break;
      std::vector<int> pts(T, -1);
      for (int t = 0; t < T; ++t)
        if (on_seq[t]) pts[t] = static_cast<int>(ci);
      if (try_assignment(pts)) ++feasible_tried;
    }

    // Price-aware per-hour allocation. Each committed hour starts at its
    // cheapest operating point; production is then bought along the
    // per-hour convex cost frontiers at the globally lowest marginal cost
    // until the day's requirement (and the tank floor) is covered.
    auto hour_cost = [&](const WsPoint& c, int t) {
      double cost = 0;
      for (const Scenario& sc : built.scenarios) {
        const double ph = c.P / eta - sc.pv[t] + flush.energy[t] / dt;
        cost += sc.probability * dt *
                (sc.buy_price[t] * std::max(ph, 0.0) -
                 sc.sell_price[t] * std::max(-ph, 0.0));
      }
      return cost;
    };
    struct HullPt {
      int idx;
      double fpe, cost;
    };
    auto allocate = [&](const std::vector<int>& allowed,
                        std::vector<int>& pts) -> bool {
      std::vector<std::vector<HullPt>> hull(T);
      std::vector<int> pos(T, 0);
      pts.assign(T, -1);
      for (int t = 0; t < T; ++t) {
        if (!on_seq[t]) continue;
        std::vector<HullPt> v;
        v.reserve(allowed.size());
        for (int ci : allowed)
          v.push_back({ci, cands[ci].fpe, hour_cost(cands[ci], t)});
        std::sort(v.begin(), v.end(), [](const HullPt& a, const HullPt& b) {
          return a.fpe != b.fpe ? a.fpe < b.fpe : a.cost < b.cost;
        });
        size_t base = 0;
        for (size_t i = 1; i < v.size(); ++i)
          if (v[i].cost < v[base].cost) base = i;
        auto& h = hull[t];
        h.push_back(v[base]);
        auto cross = [](const HullPt& o, const HullPt& a, const HullPt& b) {
          return (a.fpe - o.fpe) * (b.cost - o.cost) -
                 (a.cost - o.cost) * (b.fpe - o.fpe);
        };
        for (size_t i = base + 1; i < v.size(); ++i) {
          if (v[i].fpe <= h.back().fpe + 1e-9) continue;
          while (h.size() >= 2 && cross(h[h.size() - 2], h.back(), v[i]) <= 0)
            h.pop_back();
          h.push_back(v[i]);
        }
        pts[t] = h[0].idx;
      }
      double total = 0;
      for (int t = 0; t < T; ++t)
        if (pts[t] >= 0) total += cands[pts[t]].fpe * dt;
      // Applies the cheapest available marginal upgrade among hours <=
      // last_t; the hull ordering makes per-hour marginal costs increasing.
      auto upgrade_in = [&](int last_t) -> bool {
        int bt = -1;
        double bm = kInf;
        for (int t = 0; t <= last_t; ++t) {
          if (pts[t] < 0 || pos[t] + 1 >= static_cast<int>(hull[t].size()))
            continue;
          const auto& h = hull[t];
          const double m = (h[pos[t] + 1].cost - h[pos[t]].cost) /
                           (h[pos[t] + 1].fpe - h[pos[t]].fpe);
          if (m < bm) {
            bm = m;
            bt = t;
          }
        }
        if (bt < 0) return false;
        ++pos[bt];
        total += (hull[bt][pos[bt]].fpe - hull[bt][pos[bt] - 1].fpe) * dt;
        pts[bt] = hull[bt][pos[bt]].idx;
        return true;
      };
      while (total < need - 1e-9)
        if (!upgrade_in(T - 1)) return false;
      // Tank floor repair: raise production before the earliest hour whose
      // volume dips under the minimum.
      for (int guard = 0; guard < 16 * T; ++guard) {
        double w = cfg.tank.initial_level;
        int bad = -1;
        for (int t = 0; t < T; ++t) {
          const double fpe = pts[t] >= 0 ? cands[pts[t]].fpe : 0.0;
          w += (fpe - data.market.water_demand[t]) * dt - flush.water[t];
          if (w > cfg.tank.capacity + tol) return false;
          if (w < cfg.tank.min_level - tol) {
            bad = t;
            break;
          }
        }
        if (bad < 0) return true;
        if (!upgrade_in(bad)) return false;
      }
      return false;
    };
    for (int pass = 0; pass < 2; ++pass) {
      // The second pass restricts candidates to conservative permeate TDS
      // so the tank-quality checks cannot fail.
      const double spe_limit =
          pass == 0 ? kInf
                    : (closure ? cfg.tank.initial_tds : p.outflow_tds_max);
      std::vector<int> allowed;
      for (size_t ci = 0; ci < cands.size(); ++ci)
        if (cands[ci].mspe <= spe_limit * cands[ci].fpe + tol)
          allowed.push_back(static_cast<int>(ci));
      if (allowed.empty()) continue;
      std::vector<int> pts;
      if (allocate(allowed, pts) && try_assignment(pts)) break;
    }
    }
    return best;
  } catch (const std::exception&) {
    return {};
  }
}

Schedule solve_schedule(BuiltModel& built, SolverInterface& solver,
                        const SolverOptions& options) {
  const auto t0 = std::chrono::steady_clock::now();
  SolverOptions local = options;
  if (local.mip_start.empty()) local.mip_start = construct_warm_start(built);
  const MilpSolution sol = solver.solve(built.model, local);
  const auto t1 = std::chrono::steady_clock::now();
  if (sol.status == SolveStatus::Infeasible)
    throw DataError("solve_schedule: model infeasible (mode " +
                    mode_name(built.options.mode) + ")");
  if (!sol.has_solution())
    throw DataError("solve_schedule: no incumbent (status not feasible)");
  Schedule sched = extract_schedule(built, sol);
  sched.solve_seconds = std::chrono::duration<double>(t1 - t0).count();
  return sched;
}

}  // namespace desal
