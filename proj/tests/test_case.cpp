#include <doctest.h>

#include <string>

#include "desal/case.hpp"
#include "desal/domain.hpp"

using namespace desal;

namespace {
const std::string kFixture = DESAL_FIXTURE_DIR;
}

TEST_CASE("fixture case loads and validates") {
  const auto data = load_case(kFixture + "/config.json");
  CHECK(data.cfg.time.horizon_steps == 24);
  CHECK(data.network.n_nodes == 33);
  CHECK(data.market.buy_price.size() == 24);
  CHECK(data.base_load.size() == 24);
  CHECK(data.pump.n_stages == 8);
  data.cfg.validate();
  // Sell prices follow the configured ratio.
  for (int t = 0; t < 24; ++t)
    CHECK(data.market.sell_price[t] ==
          doctest::Approx(data.cfg.sell_price_ratio *
                          data.market.buy_price[t]));
}

TEST_CASE("omitted optional keys fall back to documented defaults") {
  const auto cfg = parse_config(R"({
    "time": {"horizon_steps": 6},
    "plant": {},
    "flush": {}
  })");
  FlushConfig defaults;
  CHECK(cfg.flush.energy_shutdown == defaults.energy_shutdown);
  CHECK(cfg.flush.energy_restart == defaults.energy_restart);
  CHECK(cfg.flush.min_off_hours == defaults.min_off_hours);
  CHECK(cfg.time.horizon_steps == 6);
  PlantConfig pd;
  CHECK(cfg.plant.seawater_tds == pd.seawater_tds);
}

TEST_CASE("config round trip preserves every field") {
  const auto cfg = load_config(kFixture + "/config.json");
  const auto back = parse_config(serialize_config(cfg));
  CHECK(back.time.horizon_steps == cfg.time.horizon_steps);
  CHECK(back.plant.feed_pressure_max == cfg.plant.feed_pressure_max);
  CHECK(back.flush.water_restart == cfg.flush.water_restart);
  CHECK(back.pwl.brine_tds_step == cfg.pwl.brine_tds_step);
  CHECK(back.pwl.tank_tds_max == cfg.pwl.tank_tds_max);
  CHECK(back.solver.gap == cfg.solver.gap);
  CHECK(back.grid.hdp_node == cfg.grid.hdp_node);
  CHECK(back.sell_price_ratio == cfg.sell_price_ratio);
}

TEST_CASE("unknown keys are rejected with the offending name") {
  try {
    parse_config(R"({"time": {"horizon_steps": 6}, "plantt": {}})");
    FAIL("expected ConfigError");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("plantt") != std::string::npos);
  }
}

TEST_CASE("missing referenced files raise DataError naming the path") {
  try {
    load_case(kFixture + "/no_such_config.json");
    FAIL("expected DataError");
  } catch (const std::exception& e) {
    CHECK(std::string(e.what()).find("no_such_config") != std::string::npos);
  }
}

TEST_CASE("timeseries parser enforces the hour column") {
  CHECK_THROWS_AS(parse_timeseries("hour,value\n1,1.0\n1,2.0\n", 2, "x"),
                  DataError);
  CHECK_THROWS_AS(parse_timeseries("hour,value\n0,1.0\n", 2, "x"), DataError);
  const auto v = parse_timeseries("hour,value\n0,1.5\n1,2.5\n", 2, "x");
  CHECK(v == std::vector<double>{1.5, 2.5});
}
