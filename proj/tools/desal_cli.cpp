// Command-line front end: schedules, verification, error maps, scenario
// tooling, the two-step stochastic pipeline, the enumeration cross-check,
// and the demand/head sensitivity sweep.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "desal/builder.hpp"
#include "desal/scheduler.hpp"
#include "desal/verifier.hpp"

using namespace desal;
using nlohmann::json;

namespace {

constexpr int kExitError = 2;
constexpr int kExitStrictViolation = 3;

// FNV-1a 64-bit content hash, hex-encoded; stable across platforms.
std::string content_hash(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open input for hashing: " + path);
  uint64_t h = 14695981039346656037ull;
  char buf[4096];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 1099511628211ull;
    }
    if (!in) break;
  }
  char out[17];
  std::snprintf(out, sizeof(out), "%016llx",
                static_cast<unsigned long long>(h));
  return out;
}

struct CommonArgs {
  std::string config = "config.json";
  std::string out_dir = ".";
  std::string mode = "MixIni";
  uint64_t seed = 0;
  double gap = -1;         // <0: keep config value
  double time_limit = -1;  // <0: keep config value
  bool strict = false;
  bool dump_lp = false;
};

void add_common(CLI::App* cmd, CommonArgs& a, bool with_mode = true) {
  cmd->add_option("--config", a.config, "case configuration JSON")
      ->capture_default_str();
  cmd->add_option("--out-dir", a.out_dir, "output directory")
      ->capture_default_str();
  if (with_mode)
    cmd->add_option("--mode", a.mode,
                    "flexibility mode (NoMix, MixIni, MixFlex, MixFlexIni)")
        ->capture_default_str();
  cmd->add_option("--seed", a.seed, "random seed")->capture_default_str();
  cmd->add_option("--gap", a.gap, "relative MIP gap override");
  cmd->add_option("--time-limit", a.time_limit, "solver time limit [s]");
  cmd->add_flag("--strict", a.strict,
                "exit nonzero on any verification violation");
  cmd->add_flag("--dump-lp", a.dump_lp, "write the LP file of each model");
}

void check_solver_env() {
  const char* env = std::getenv("DESAL_SOLVER");
  if (env && std::string(env) != "highs")
    throw ConfigError(std::string("DESAL_SOLVER: unknown back-end '") + env +
                      "' (available: highs)");
}

CaseData load_with_overrides(const CommonArgs& a) {
  CaseData data = load_case(a.config);
  if (a.gap >= 0) data.cfg.solver.gap = a.gap;
  if (a.time_limit > 0) data.cfg.solver.time_limit_s = a.time_limit;
  return data;
}

std::filesystem::path out_path(const CommonArgs& a, const std::string& name) {
  std::filesystem::create_directories(a.out_dir);
  return std::filesystem::path(a.out_dir) / name;
}

json make_manifest(const std::string& command, const CommonArgs& a,
                   const CaseData& data, double seconds) {
  json inputs;
  inputs[a.config] = content_hash(a.config);
  const auto dir = std::filesystem::path(a.config).parent_path();
  auto add = [&](const std::string& rel) {
    const std::filesystem::path p(rel);
    const std::string full = p.is_absolute() ? p.string() : (dir / p).string();
    inputs[rel] = content_hash(full);
  };
  add(data.cfg.data.pump_curve);
  add(data.cfg.data.buy_price);
  add(data.cfg.data.pv_forecast);
  add(data.cfg.data.water_demand);
  add(data.cfg.data.network);
  add(data.cfg.data.peak_load);
  add(data.cfg.data.load_profile);
  json m;
  m["command"] = command;
  m["config"] = a.config;
  m["mode"] = a.mode;
  m["seed"] = a.seed;
  m["solver"] = {{"backend", "highs"},
                 {"gap", data.cfg.solver.gap},
                 {"time_limit_s", data.cfg.solver.time_limit_s}};
  m["input_hashes"] = inputs;
  m["timing_seconds"] = seconds;  // timing: excluded from reproducibility
  return m;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot write output file: " + path.string());
  out << text;
}

// 6 significant digits, as fixed by the output contract.
std::string fmt6(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

const char* kScheduleHeader =
    "hour,on,shut,start,feed_flow,speed,feed_head,permeate_flow,brine_flow,"
    "brine_tds,conc_tds,permeate_salt_rate,tank_volume,tank_tds,outflow_tds,"
    "flush_water,flush_energy,p_hpp,p_hps,q_hps,p_pv,q_pv,p_hdp,p_buy,p_sell,"
    "cost";

std::string schedule_to_csv(const Schedule& s) {
  std::ostringstream out;
  out << kScheduleHeader << "\n";
  for (size_t t = 0; t < s.hours.size(); ++t) {
    const HourPlan& h = s.hours[t];
    out << t << ',' << (h.on ? 1 : 0) << ',' << (h.shut ? 1 : 0) << ','
        << (h.start ? 1 : 0);
    for (double v : {h.feed_flow, h.speed, h.feed_head, h.permeate_flow,
                     h.brine_flow, h.brine_tds, h.conc_tds,
                     h.permeate_salt_rate, h.tank_volume, h.tank_tds,
                     h.outflow_tds, h.flush_water, h.flush_energy, h.p_hpp,
                     h.p_hps, h.q_hps, h.p_pv, h.q_pv, h.p_hdp, h.p_buy,
                     h.p_sell, h.cost})
      out << ',' << fmt6(v);
    out << "\n";
  }
  return out.str();
}

Schedule schedule_from_csv(const std::string& path, FlexibilityMode mode) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot open schedule file: " + path);
  Schedule s;
  s.mode = mode;
  s.status = SolveStatus::Feasible;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line != kScheduleHeader)
        throw DataError(path + ": unexpected schedule header");
      continue;
    }
    std::istringstream ls(line);
    std::vector<double> cells;
    std::string tok;
    while (std::getline(ls, tok, ',')) {
      try {
        cells.push_back(std::stod(tok));
      } catch (const std::exception&) {
        throw DataError(path + ": non-numeric cell in row '" + line + "'");
      }
    }
    if (cells.size() != 26)
      throw DataError(path + ": expected 26 columns in row '" + line + "'");
    HourPlan h;
    int i = 1;
    h.on = cells[i++] != 0;
    h.shut = cells[i++] != 0;
    h.start = cells[i++] != 0;
    h.feed_flow = cells[i++];
    h.speed = cells[i++];
    h.feed_head = cells[i++];
    h.permeate_flow = cells[i++];
    h.brine_flow = cells[i++];
    h.brine_tds = cells[i++];
    h.conc_tds = cells[i++];
    h.permeate_salt_rate = cells[i++];
    h.tank_volume = cells[i++];
    h.tank_tds = cells[i++];
    h.outflow_tds = cells[i++];
    h.flush_water = cells[i++];
    h.flush_energy = cells[i++];
    h.p_hpp = cells[i++];
    h.p_hps = cells[i++];
    h.q_hps = cells[i++];
    h.p_pv = cells[i++];
    h.q_pv = cells[i++];
    h.p_hdp = cells[i++];
    h.p_buy = cells[i++];
    h.p_sell = cells[i++];
    h.cost = cells[i++];
    s.hours.push_back(h);
    s.total_cost += h.cost;
    s.total_production += h.permeate_flow;
  }
  if (s.hours.empty()) throw DataError(path + ": no schedule rows");
  return s;
}

// Summary table mirroring the comparison-table row labels.
void print_summary(const Schedule& sched, const VerifiedReport& rep,
                   const CaseData& data) {
  double demand = 0;
  for (double d : data.market.water_demand)
    demand += d * data.cfg.time.step_hours;
  std::printf("%-34s %s\n", "Mode", mode_name(sched.mode).c_str());
  std::printf("%-34s %s\n", "Scheduled cost [$]", fmt6(sched.total_cost).c_str());
  std::printf("%-34s %s\n", "Verified cost [$]", fmt6(rep.verified_cost).c_str());
  std::printf("%-34s %s\n", "Prorated cost [$]", fmt6(rep.prorated_cost).c_str());
  std::printf("%-34s %s\n", "Scheduled production [m3]",
              fmt6(rep.scheduled_production).c_str());
  std::printf("%-34s %s\n", "Verified production [m3]",
              fmt6(rep.verified_production).c_str());
  std::printf("%-34s %s\n", "Daily water demand [m3]", fmt6(demand).c_str());
  std::printf("%-34s %s\n", "End-of-horizon tank TDS [kg/m3]",
              fmt6(rep.end_tds).c_str());
  std::printf("%-34s %s\n", "Solver gap", fmt6(sched.gap).c_str());
  std::printf("%-34s %zu\n", "Violations", rep.violations.size());
  std::printf("%-34s %s\n", "Demand met", rep.demand_met ? "yes" : "no");
}

int strict_exit(const CommonArgs& a, const VerifiedReport& rep) {
  if (!a.strict) return 0;
  if (rep.violations.empty() && rep.demand_met) return 0;
  std::cerr << "strict: verification reported " << rep.violations.size()
            << " violation(s)\n";
  return kExitStrictViolation;
}

int cmd_schedule(const CommonArgs& a) {
  const auto t0 = std::chrono::steady_clock::now();
  CaseData data = load_with_overrides(a);
  const FlexibilityMode mode = parse_mode(a.mode);
  const auto surfaces = tabulate_surfaces(data.cfg, data.pump);
  BuildOptions opts;
  opts.mode = mode;
  auto built = build(data, surfaces, opts);
  if (a.dump_lp) built.model.write_lp(out_path(a, "model.lp").string());
  HighsSolver solver;
  Schedule sched = solve_schedule(built, solver, data.cfg.solver);
  const VerifiedReport rep = verify(sched, data);

  write_text(out_path(a, "schedule.csv"), schedule_to_csv(sched));
  write_text(out_path(a, "verified_report.json"),
             verified_report_to_json(rep, sched));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_text(out_path(a, "manifest.json"),
             make_manifest("schedule", a, data, secs).dump(2) + "\n");
  print_summary(sched, rep, data);
  return strict_exit(a, rep);
}

int cmd_verify(const CommonArgs& a, const std::string& schedule_path) {
  const auto t0 = std::chrono::steady_clock::now();
  CaseData data = load_with_overrides(a);
  const FlexibilityMode mode = parse_mode(a.mode);
  const Schedule sched = schedule_from_csv(schedule_path, mode);
  const VerifiedReport rep = verify(sched, data);
  write_text(out_path(a, "verified_report.json"),
             verified_report_to_json(rep, sched));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  json m = make_manifest("verify", a, data, secs);
  m["input_hashes"][schedule_path] = content_hash(schedule_path);
  write_text(out_path(a, "manifest.json"), m.dump(2) + "\n");
  print_summary(sched, rep, data);
  return strict_exit(a, rep);
}

int cmd_error_map(const CommonArgs& a, double flow_step, double speed_step,
                  double cap) {
  const auto t0 = std::chrono::steady_clock::now();
  CaseData data = load_with_overrides(a);
  const auto& p = data.cfg.plant;
  if (cap <= 0) cap = p.outflow_tds_max;
  auto grid = [](double lo, double hi, double step) {
    std::vector<double> g;
    for (double v = lo; v <= hi + 1e-9; v += step) g.push_back(v);
    return g;
  };
  const auto points = model_error_sweep(
      data.cfg, data.pump,
      grid(p.feed_flow_min, p.feed_flow_max, flow_step),
      grid(data.cfg.pump_limits.speed_min, data.cfg.pump_limits.speed_max,
           speed_step),
      cap);
  std::ostringstream out;
  out << "flow,speed,d_fpe,d_spe,full_spe,feasible,converged\n";
  for (const auto& q : points)
    out << fmt6(q.flow) << ',' << fmt6(q.speed) << ',' << fmt6(q.d_fpe) << ','
        << fmt6(q.d_spe) << ',' << fmt6(q.full_spe) << ','
        << (q.feasible ? 1 : 0) << ',' << (q.converged ? 1 : 0) << "\n";
  write_text(out_path(a, "error_map.csv"), out.str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_text(out_path(a, "manifest.json"),
             make_manifest("error-map", a, data, secs).dump(2) + "\n");
  std::printf("error map: %zu points written\n", points.size());
  return 0;
}

int cmd_scenarios(const CommonArgs& a, int count, int reduce) {
  const auto t0 = std::chrono::steady_clock::now();
  CaseData data = load_with_overrides(a);
  DeviationRanges ranges;
  CorrelationSpec corr;
  auto scen = generate_scenarios(data.market, data.cfg.grid.pv_rating,
                                 data.cfg.sell_price_ratio, ranges, corr,
                                 count, a.seed);
  if (reduce > 0 && reduce < count) scen = reduce_scenarios(scen, reduce, a.seed);
  write_text(out_path(a, "scenarios.json"), scenarios_to_json(scen));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_text(out_path(a, "manifest.json"),
             make_manifest("scenarios", a, data, secs).dump(2) + "\n");
  std::printf("scenarios: %d generated, %zu written\n", count, scen.size());
  return 0;
}

int cmd_tdcso(const CommonArgs& a, int count, int reduce) {
  const auto t0 = std::chrono::steady_clock::now();
  CaseData data = load_with_overrides(a);
  DeviationRanges ranges;
  CorrelationSpec corr;
  auto scen = generate_scenarios(data.market, data.cfg.grid.pv_rating,
                                 data.cfg.sell_price_ratio, ranges, corr,
                                 count, a.seed);
  if (reduce > 0 && reduce < count) scen = reduce_scenarios(scen, reduce, a.seed);
  const TdcsoResult res = tdcso(data, scen, data.cfg.solver);

  json out;
  out["commitment"] = res.commitment;
  out["flush_water"] = res.flush.water;
  out["flush_energy"] = res.flush.energy;
  out["step1_expected_cost"] = res.step1_expected_cost;
  out["expected_cost"] = res.expected_cost;
  out["step1_seconds"] = res.step1_seconds;  // timing fields
  out["step2_seconds"] = res.step2_seconds;
  json runs = json::array();
  bool any_violation = false;
  for (size_t s = 0; s < res.scenario_schedules.size(); ++s) {
    const Schedule& sched = res.scenario_schedules[s];
    CaseData sc_data = data;
    sc_data.market.pv_forecast = scen[s].pv;
    sc_data.market.buy_price = scen[s].buy_price;
    sc_data.market.sell_price = scen[s].sell_price;
    const VerifiedReport rep = verify(sched, sc_data);
    any_violation = any_violation || !rep.violations.empty() || !rep.demand_met;
    runs.push_back({{"probability", scen[s].probability},
                    {"scheduled_cost", sched.total_cost},
                    {"verified_cost", rep.verified_cost},
                    {"prorated_cost", rep.prorated_cost},
                    {"production", rep.verified_production},
                    {"end_tds", rep.end_tds},
                    {"violations", rep.violations.size()},
                    {"demand_met", rep.demand_met}});
  }
  out["scenario_runs"] = runs;
  write_text(out_path(a, "tdcso_result.json"), out.dump(2) + "\n");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_text(out_path(a, "manifest.json"),
             make_manifest("tdcso", a, data, secs).dump(2) + "\n");
  std::printf("tdcso: step-1 cost %s, step-2 expected cost %s over %zu scenarios\n",
              fmt6(res.step1_expected_cost).c_str(),
              fmt6(res.expected_cost).c_str(), res.scenario_schedules.size());
  if (a.strict && any_violation) {
    std::cerr << "strict: scenario verification reported violations\n";
    return kExitStrictViolation;
  }
  return 0;
}

int cmd_fop(const CommonArgs& a, double flow_step, double speed_step,
            int horizon, bool use_full) {
  const auto t0 = std::chrono::steady_clock::now();
  CaseData data = load_with_overrides(a);
  if (horizon > 0 && horizon < data.cfg.time.horizon_steps) {
    data.cfg.time.horizon_steps = horizon;
    data.market.buy_price.resize(horizon);
    data.market.sell_price.resize(horizon);
    data.market.pv_forecast.resize(horizon);
    data.market.water_demand.resize(horizon);
    data.base_load.resize(horizon);
  }
  const FlexibilityMode mode = parse_mode(a.mode);
  const double cap = spe_cap_for(mode, data.cfg.plant);
  const auto points =
      fop_enumerate(data.cfg, data.pump, flow_step, speed_step, cap, use_full);
  if (points.empty()) throw DataError("fop: no feasible operating points");

  std::ostringstream csv;
  csv << "feed_flow,speed,head,power,permeate_flow,brine_flow,brine_tds,"
         "permeate_salt_rate\n";
  for (const auto& q : points)
    csv << fmt6(q.feed_flow) << ',' << fmt6(q.speed) << ',' << fmt6(q.head)
        << ',' << fmt6(q.power) << ',' << fmt6(q.permeate_flow) << ','
        << fmt6(q.brine_flow) << ',' << fmt6(q.brine_tds) << ','
        << fmt6(q.permeate_salt_rate) << "\n";
  write_text(out_path(a, "fop_points.csv"), csv.str());

  const DeterministicResult spln =
      schedule_deterministic(data, mode, data.cfg.solver);
  const Schedule fop = fop_schedule(data, mode, points, data.cfg.solver);
  const double delta =
      std::abs(spln.schedule.total_cost - fop.total_cost) /
      std::abs(fop.total_cost);
  json out;
  out["mode"] = mode_name(mode);
  out["points"] = points.size();
  out["cost_spln"] = spln.schedule.total_cost;
  out["cost_fop"] = fop.total_cost;
  out["rel_delta"] = delta;
  write_text(out_path(a, "fop_result.json"), out.dump(2) + "\n");
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_text(out_path(a, "manifest.json"),
             make_manifest("fop", a, data, secs).dump(2) + "\n");
  std::printf("fop: %zu points, cost_spln %s, cost_fop %s, rel delta %s\n",
              points.size(), fmt6(spln.schedule.total_cost).c_str(),
              fmt6(fop.total_cost).c_str(), fmt6(delta).c_str());
  return 0;
}

int cmd_sweep(const CommonArgs& a, const std::vector<double>& demand_factors,
              const std::vector<double>& head_factors) {
  const auto t0 = std::chrono::steady_clock::now();
  if (demand_factors.empty() || head_factors.empty())
    throw ConfigError("sweep: demand and head factor lists must be non-empty");
  CaseData base = load_with_overrides(a);

  std::ostringstream out;
  out << "demand_factor,head_factor,prorated_mixini,prorated_mixflexini,"
         "prorated_delta,production_delta,end_tds_delta\n";
  for (double df : demand_factors)
    for (double hf : head_factors) {
      out << fmt6(df) << ',' << fmt6(hf);
      try {
        CaseData data = base;
        for (double& d : data.market.water_demand) d *= df;
        // Nominal head scaling: the head curve scales; power follows the
        // same factor so the hydraulic efficiency surface is preserved.
        data.pump.a2 *= hf;
        data.pump.a1 *= hf;
        data.pump.a0 *= hf;
        data.pump.b2 *= hf;
        data.pump.b1 *= hf;
        data.pump.b0 *= hf;
        const auto ini = schedule_deterministic(data, FlexibilityMode::MixIni,
                                                data.cfg.solver);
        const auto flex = schedule_deterministic(
            data, FlexibilityMode::MixFlexIni, data.cfg.solver);
        out << ',' << fmt6(ini.report.prorated_cost) << ','
            << fmt6(flex.report.prorated_cost) << ','
            << fmt6(flex.report.prorated_cost - ini.report.prorated_cost)
            << ','
            << fmt6(flex.report.verified_production -
                    ini.report.verified_production)
            << ',' << fmt6(flex.report.end_tds - ini.report.end_tds);
      } catch (const std::exception& e) {
        // Infeasible or failed cells stay blank; the sweep continues.
        std::fprintf(stderr, "sweep cell (%g, %g): %s\n", df, hf, e.what());
        out << ",,,,,";
      }
      out << "\n";
    }
  write_text(out_path(a, "sweep.csv"), out.str());
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  write_text(out_path(a, "manifest.json"),
             make_manifest("sweep", a, base, secs).dump(2) + "\n");
  std::printf("sweep: %zu cells written\n",
              demand_factors.size() * head_factors.size());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coordinated desalination-plant / distribution-grid scheduler"};
  app.require_subcommand(1);

  CommonArgs a;
  std::string schedule_path = "schedule.csv";
  double flow_step = 5.0, speed_step = 0.01, cap = -1;
  int count = 2000, reduce = 10, horizon = 0;
  bool use_full = false;
  std::vector<double> demand_factors{0.8, 1.0, 1.2};
  std::vector<double> head_factors{0.95, 1.0, 1.05};

  auto* sched = app.add_subcommand("schedule", "solve and verify one case");
  add_common(sched, a);

  auto* verify_cmd = app.add_subcommand("verify", "re-verify a schedule CSV");
  add_common(verify_cmd, a);
  verify_cmd->add_option("--schedule", schedule_path, "schedule CSV to verify")
      ->capture_default_str();

  auto* errmap = app.add_subcommand("error-map",
                                    "simplified-vs-full model error sweep");
  add_common(errmap, a, false);
  errmap->add_option("--flow-step", flow_step)->capture_default_str();
  errmap->add_option("--speed-step", speed_step)->capture_default_str();
  errmap->add_option("--cap", cap, "permeate TDS cap (default: outflow cap)");

  auto* scen = app.add_subcommand("scenarios",
                                  "generate and reduce PV/price scenarios");
  add_common(scen, a, false);
  scen->add_option("--count", count)->capture_default_str();
  scen->add_option("--reduce", reduce)->capture_default_str();

  auto* td = app.add_subcommand("tdcso", "two-step stochastic pipeline");
  add_common(td, a, false);
  td->add_option("--scenarios", count)->capture_default_str();
  td->add_option("--reduce", reduce)->capture_default_str();

  auto* fop = app.add_subcommand("fop", "enumeration optimality cross-check");
  add_common(fop, a);
  fop->add_option("--flow-step", flow_step)->capture_default_str();
  fop->add_option("--speed-step", speed_step)->capture_default_str();
  fop->add_option("--horizon", horizon, "truncate the horizon to N hours");
  fop->add_flag("--full", use_full, "enumerate with the full RO model");

  auto* sweep = app.add_subcommand("sweep", "demand x nominal-head sensitivity");
  add_common(sweep, a, false);
  sweep->add_option("--demands", demand_factors, "demand scale factors")
      ->delimiter(',')
      ->capture_default_str();
  sweep->add_option("--heads", head_factors, "nominal-head scale factors")
      ->delimiter(',')
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    check_solver_env();
    if (sched->parsed()) return cmd_schedule(a);
    if (verify_cmd->parsed()) return cmd_verify(a, schedule_path);
    if (errmap->parsed()) return cmd_error_map(a, flow_step, speed_step, cap);
    if (scen->parsed()) return cmd_scenarios(a, count, reduce);
    if (td->parsed()) return cmd_tdcso(a, count, reduce);
    if (fop->parsed()) return cmd_fop(a, flow_step, speed_step, horizon, use_full);
    if (sweep->parsed()) return cmd_sweep(a, demand_factors, head_factors);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
