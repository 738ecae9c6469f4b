#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "desal/domain.hpp"
#include "desal/ro.hpp"
#include "desal/tank.hpp"

using namespace desal;

TEST_CASE("hand mass-balance arithmetic oracle") {
  // 720 m3 at 0.30 kg/m3, inflow 100 m3 at 0.80 kg/m3 (salt rate 80 kg/hr),
  // no outflow or flush, dt = 1:
  //   W' = 820, M' = 216 + 80 = 296, S' = 296/820 = 0.36098.
  const auto start = make_tank_state(720.0, 0.30);
  const auto r = tank_step(start, 100.0, 80.0, 0.0, 0.0, 0.0, 1.0);
  CHECK(r.state.volume == doctest::Approx(820.0).epsilon(1e-12));
  CHECK(r.state.salt_mass == doctest::Approx(296.0).epsilon(1e-12));
  CHECK(r.state.tds == doctest::Approx(0.36098).epsilon(1e-4));
}

TEST_CASE("outflow TDS couples to the end-of-step TDS") {
  // With outflow, S_out = (S_prev + S_new)/2 and the salt balance closes
  // exactly: M' = M + Mspe dt - S_out * outflow * dt.
  const auto start = make_tank_state(720.0, 0.30);
  const auto r = tank_step(start, 100.0, 40.0, 60.0, 0.0, 0.0, 1.0);
  CHECK(r.state.volume == doctest::Approx(760.0).epsilon(1e-12));
  CHECK(r.outflow_tds == doctest::Approx((0.30 + r.state.tds) / 2.0));
  const double salt_out = r.outflow_tds * 60.0;
  CHECK(r.state.salt_mass ==
        doctest::Approx(216.0 + 40.0 - salt_out).epsilon(1e-12));
  CHECK(r.state.tds == doctest::Approx(r.state.salt_mass / r.state.volume));
}

TEST_CASE("conservation over 100 randomized trajectories to 1e-9 relative") {
  std::mt19937_64 rng(777);
  std::uniform_real_distribution<double> uin(0.0, 160.0);
  std::uniform_real_distribution<double> uout(0.0, 80.0);
  std::uniform_real_distribution<double> utds(0.0, 0.8);
  for (int traj = 0; traj < 100; ++traj) {
    TankState s = make_tank_state(900.0, 0.3);
    double water = s.volume, salt = s.salt_mass;
    for (int t = 0; t < 24; ++t) {
      const double fpe = uin(rng);
      const double mspe = fpe * utds(rng);
      // Keep the tank inside a safe band so the step never throws.
      const double out = std::min(uout(rng), (water - 100.0) + fpe);
      const double flush = (t % 7 == 0) ? 15.0 : 0.0;
      const auto r = tank_step(s, fpe, mspe, out, flush, 0.3, 1.0);
      water += fpe - out - flush;
      salt += mspe - r.outflow_tds * out - 0.3 * flush;
      CHECK(std::abs(r.state.volume - water) <= 1e-9 * std::max(1.0, water));
      CHECK(std::abs(r.state.salt_mass - salt) <=
            1e-9 * std::max(1.0, std::abs(salt)));
      s = r.state;
    }
  }
}

TEST_CASE("tank_step rejects emptying the tank") {
  const auto start = make_tank_state(100.0, 0.3);
  CHECK_THROWS_AS(tank_step(start, 0.0, 0.0, 200.0, 0.0, 0.0, 1.0),
                  SolveError);
}

TEST_CASE("check_tank_bounds enforces band, outflow cap, and closure") {
  TankConfig cfg;
  std::vector<TankState> traj = {make_tank_state(800.0, 0.29),
                                 make_tank_state(900.0, 0.31)};
  std::vector<double> s_out = {0.30, 0.30};
  CHECK(!check_tank_bounds(traj, cfg, s_out, 0.35, EndTdsClosure::Required)
             .empty());  // end TDS 0.31 > 0.30
  CHECK(check_tank_bounds(traj, cfg, s_out, 0.35, EndTdsClosure::None)
            .empty());

  traj[1].volume = 2000.0;  // above capacity
  CHECK(!check_tank_bounds(traj, cfg, s_out, 0.35, EndTdsClosure::None)
             .empty());
  traj[1].volume = 900.0;
  s_out[0] = 0.40;  // outflow cap violated
  CHECK(!check_tank_bounds(traj, cfg, s_out, 0.35, EndTdsClosure::None)
             .empty());
}
