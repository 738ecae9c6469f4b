#include <doctest.h>

#include <cmath>
#include <string>

#include "desal/domain.hpp"
#include "desal/pump.hpp"

using namespace desal;

namespace {
const std::string kFixture = DESAL_FIXTURE_DIR;
PumpCurve fixture_curve() {
  const auto samples = load_pump_samples(kFixture + "/pump_curve.csv");
  return fit_pump_curves(samples, 8);
}
}  // namespace

TEST_CASE("fit residual below threshold on the fixture curve") {
  const auto curve = fixture_curve();
  CHECK(curve.max_rel_residual < 0.02);
  CHECK(curve.n_stages == 8);
}

TEST_CASE("eval_head/eval_power match the direct polynomial at F=200, w=1") {
  const auto c = fixture_curve();
  const double F = 200.0;
  const double head = c.n_stages * (c.a2 * F * F + c.a1 * F + c.a0);
  const double power = c.n_stages * (c.b2 * F * F + c.b1 * F + c.b0);
  CHECK(eval_head(c, F, 1.0) == doctest::Approx(head).epsilon(1e-12));
  CHECK(eval_power(c, F, 1.0) == doctest::Approx(power).epsilon(1e-12));
}

TEST_CASE("affinity laws relate off-nominal to nominal evaluation") {
  const auto c = fixture_curve();
  // head(F, w) = w^2 * head(F/w, 1); power(F, w) = w^3 * power(F/w, 1).
  for (double w : {0.8, 0.9, 1.1, 1.25}) {
    const double F = 180.0;
    CHECK(eval_head(c, F, w) ==
          doctest::Approx(w * w * eval_head(c, F / w, 1.0)).epsilon(1e-10));
    CHECK(eval_power(c, F, w) ==
          doctest::Approx(w * w * w * eval_power(c, F / w, 1.0)).epsilon(1e-10));
  }
}

TEST_CASE("affinity_scale maps a point along its affinity parabola") {
  const auto c = fixture_curve();
  PumpPoint p;
  p.flow = 200.0;
  p.speed = 1.0;
  p.head = eval_head(c, p.flow, p.speed);
  p.power = eval_power(c, p.flow, p.speed);
  const auto q = affinity_scale(p, 1.2);
  CHECK(q.flow == doctest::Approx(240.0));
  CHECK(q.head == doctest::Approx(1.44 * p.head));
  CHECK(q.power == doctest::Approx(1.728 * p.power));
  CHECK(q.head == doctest::Approx(eval_head(c, q.flow, 1.2)).epsilon(1e-10));
}

TEST_CASE("fixture table power lookup within 2% at a tabulated point") {
  const auto samples = load_pump_samples(kFixture + "/pump_curve.csv");
  const auto c = fit_pump_curves(samples, 8);
  for (const auto& s : samples) {
    if (s.flow < 100 || s.flow > 250) continue;
    CHECK(std::abs(eval_power(c, s.flow, 1.0) - s.power) <=
          0.02 * s.power + 1e-9);
  }
}

TEST_CASE("efficiency is hydraulic over shaft power and zero at zero flow") {
  const auto c = fixture_curve();
  CHECK(efficiency(c, 0.0, 1.0) == 0.0);
  const double F = 220.0, w = 1.0;
  const double expect =
      hydraulic_power(F, eval_head(c, F, w)) / eval_power(c, F, w);
  CHECK(efficiency(c, F, w) == doctest::Approx(expect).epsilon(1e-12));
  CHECK(efficiency(c, F, w) > 0.3);
  CHECK(efficiency(c, F, w) < 1.0);
}

TEST_CASE("hydraulic power unit conversion") {
  // 3600 m3/hr at 1 kPa is exactly 1 kW.
  CHECK(hydraulic_power(3600.0, 1.0) == doctest::Approx(1.0));
}

TEST_CASE("hps_power applies drive efficiencies and the q/p ratio") {
  PumpLimits pl;
  const auto hp = hps_power(100.0, pl);
  CHECK(hp.p == doctest::Approx(100.0 / (pl.motor_eff * pl.vfd_eff)));
  CHECK(hp.q == doctest::Approx(pl.q_over_p * hp.p));
}

TEST_CASE("check_operating_point flags limit violations") {
  const auto c = fixture_curve();
  PumpLimits pl;
  PumpPoint ok;
  ok.flow = 200.0;
  ok.speed = 1.0;
  ok.head = eval_head(c, ok.flow, ok.speed);
  ok.power = eval_power(c, ok.flow, ok.speed);
  CHECK(check_operating_point(c, pl, ok, true, 0.0, 1e9).empty());

  PumpPoint fast = ok;
  fast.speed = 1.5;  // above speed_max
  CHECK(!check_operating_point(c, pl, fast, true, 0.0, 1e9).empty());

  PumpPoint overflow = ok;
  overflow.flow = 300.0;  // above flow_max_nominal * speed
  overflow.head = eval_head(c, overflow.flow, 1.0);
  overflow.power = eval_power(c, overflow.flow, 1.0);
  CHECK(!check_operating_point(c, pl, overflow, true, 0.0, 1e9).empty());

  // Off state must be exactly idle.
  PumpPoint offp;
  CHECK(check_operating_point(c, pl, offp, false, 0.0, 1e9).empty());
  offp.flow = 1.0;
  CHECK(!check_operating_point(c, pl, offp, false, 0.0, 1e9).empty());
}

TEST_CASE("fit rejects degenerate sample sets") {
  std::vector<PumpSample> few = {{0, 100, 10}, {10, 90, 12}, {20, 70, 15}};
  CHECK_THROWS_AS(fit_pump_curves(few, 1), DataError);
}
