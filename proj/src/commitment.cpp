#include "desal/commitment.hpp"

namespace desal {

CommitmentPlan derive_indicators(const std::vector<uint8_t>& on,
                                 bool initial_on) {
  CommitmentPlan plan;
  plan.on = on;
  const size_t T = on.size();
  plan.shut.assign(T, 0);
  plan.start.assign(T, 0);
  uint8_t prev = initial_on ? 1 : 0;
  for (size_t t = 0; t < T; ++t) {
    plan.shut[t] = static_cast<uint8_t>(prev * (1 - on[t]));
    plan.start[t] = static_cast<uint8_t>(on[t] * (1 - prev));
    prev = on[t];
  }
  return plan;
}

FlushSeries flush_consumption(const CommitmentPlan& plan,
                              const FlushConfig& fc) {
  const size_t T = plan.on.size();
  FlushSeries out;
  out.water.assign(T, 0.0);
  out.energy.assign(T, 0.0);
  for (size_t t = 0; t < T; ++t) {
    // restart consumption booked the hour before the restart; the start
    // indicator past the horizon is zero
    const double start_next = (t + 1 < T) ? plan.start[t + 1] : 0.0;
    out.water[t] = fc.water_shutdown * plan.shut[t] + fc.water_restart * start_next;
    out.energy[t] = fc.energy_shutdown * plan.shut[t] + fc.energy_restart * start_next;
  }
  return out;
}

std::vector<Violation> check_min_off(const CommitmentPlan& plan,
                                     int min_off_hours) {
  std::vector<Violation> v;
  const int T = static_cast<int>(plan.on.size());
  for (int t = 0; t < T; ++t) {
    if (!plan.shut[t]) continue;
    int off = 0;
    for (int z = t; z < std::min(T, t + min_off_hours); ++z)
      off += 1 - plan.on[z];
    if (off < std::min(min_off_hours, T - t))
      v.push_back({"minimum off duration violated at hour " + std::to_string(t),
                   static_cast<double>(off), static_cast<double>(min_off_hours)});
  }
  return v;
}

}  // namespace desal
