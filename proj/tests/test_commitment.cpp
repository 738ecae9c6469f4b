#include <doctest.h>

#include <vector>

#include "desal/commitment.hpp"
#include "desal/domain.hpp"

using namespace desal;

TEST_CASE("indicators mark the first off hour and the first on hour") {
  //                      0  1  2  3  4  5  6  7
  std::vector<uint8_t> on{1, 1, 0, 0, 1, 1, 0, 1};
  const auto plan = derive_indicators(on, true);
  CHECK(plan.shut == std::vector<uint8_t>{0, 0, 1, 0, 0, 0, 1, 0});
  CHECK(plan.start == std::vector<uint8_t>{0, 0, 0, 0, 1, 0, 0, 1});
}

TEST_CASE("boundary state controls the hour-0 indicators") {
  std::vector<uint8_t> on{1, 1, 1};
  // Initially off and on at hour 0: hour 0 is a restart.
  CHECK(derive_indicators(on, false).start[0] == 1);
  // Initially on: no transition at hour 0.
  CHECK(derive_indicators(on, true).start[0] == 0);
  std::vector<uint8_t> off{0, 0, 1};
  CHECK(derive_indicators(off, true).shut[0] == 1);
  CHECK(derive_indicators(off, false).shut[0] == 0);
}

TEST_CASE("restart flush is booked the hour before the restart") {
  std::vector<uint8_t> on{1, 0, 0, 1, 1, 0};
  const auto plan = derive_indicators(on, true);
  FlushConfig fc;
  const auto flush = flush_consumption(plan, fc);
  // Shutdown at hour 1 books the shutdown flush at hour 1; restart at hour
  // 3 books the restart flush at hour 2; shutdown at hour 5 books there.
  CHECK(flush.water[1] == doctest::Approx(fc.water_shutdown));
  CHECK(flush.water[2] == doctest::Approx(fc.water_restart));
  CHECK(flush.water[3] == doctest::Approx(0.0));
  CHECK(flush.water[5] == doctest::Approx(fc.water_shutdown));
  CHECK(flush.energy[2] == doctest::Approx(fc.energy_restart));
  double total = 0;
  for (double w : flush.water) total += w;
  CHECK(total == doctest::Approx(2 * fc.water_shutdown + fc.water_restart));
}

TEST_CASE("minimum-off violations are detected, horizon end truncates") {
  FlushConfig fc;  // min_off_hours = 2
  // Off for a single hour between on blocks: violation.
  std::vector<uint8_t> bad{1, 0, 1, 1};
  CHECK(!check_min_off(derive_indicators(bad, true), fc.min_off_hours)
             .empty());
  std::vector<uint8_t> good{1, 0, 0, 1};
  CHECK(check_min_off(derive_indicators(good, true), fc.min_off_hours)
            .empty());
  // Shutdown in the last hour: nothing beyond the horizon is enforced.
  std::vector<uint8_t> tail{1, 1, 1, 0};
  CHECK(check_min_off(derive_indicators(tail, true), fc.min_off_hours)
            .empty());
}
