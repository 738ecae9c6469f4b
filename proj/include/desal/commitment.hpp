#pragma once

#include <vector>

#include "desal/domain.hpp"
#include "desal/pump.hpp"

// On/off logic shared by the MILP builder and the verifier: shutdown and
// restart indicators, flushing consumption, minimum-off enforcement.

namespace desal {

struct CommitmentPlan {
  std::vector<uint8_t> on;     // U_on
  std::vector<uint8_t> shut;   // first off hour after an on hour
  std::vector<uint8_t> start;  // first on hour after an off hour
};

CommitmentPlan derive_indicators(const std::vector<uint8_t>& on,
                                 bool initial_on);

struct FlushSeries {
  std::vector<double> water;   // m3 booked in each hour
  std::vector<double> energy;  // kWh booked in each hour
};

// Restart consumption is booked the hour BEFORE the restart hour
// (the flush precedes resumed production); the start indicator beyond the
// horizon is taken as zero.
FlushSeries flush_consumption(const CommitmentPlan& plan, const FlushConfig& fc);

std::vector<Violation> check_min_off(const CommitmentPlan& plan,
                                     int min_off_hours);

}  // namespace desal
