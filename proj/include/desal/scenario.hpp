#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "desal/domain.hpp"

// Joint PV/price uncertainty: Gaussian-copula scenario generation and
// PAM-style k-medoids reduction.

namespace desal {

struct Scenario {
  std::vector<double> pv;          // kW
  std::vector<double> buy_price;   // $/kWh
  std::vector<double> sell_price;  // $/kWh
  double probability = 1.0;
};

// Correlation structure of the joint (PV, price) x hours sample: temporal
// rank correlation decays exponentially within each series, with a
// constant cross correlation between PV and price at the same hour.
struct CorrelationSpec {
  double pv_decay = 0.9;     // lag-1 temporal correlation of PV deviations
  double price_decay = 0.9;  // same for the price series
  double pv_price = -0.3;    // contemporaneous PV-price correlation

  void validate() const;
};

struct DeviationRanges {
  // Half-widths of the marginal deviation bands (interpreted as 2 sigma of
  // a truncated normal centered on the forecast).
  double pv_fraction = 0.2;     // fraction of the hourly forecast
  double price_fraction = 0.2;  // fraction of the hourly price
};

// Deterministic under fixed seed. PV clamps to [0, rating], prices to >= 0;
// sell prices follow as ratio * buy. Throws DataError if the implied
// correlation matrix is not positive definite.
std::vector<Scenario> generate_scenarios(const MarketSeries& forecast,
                                         double pv_rating, double sell_ratio,
                                         const DeviationRanges& ranges,
                                         const CorrelationSpec& corr, int n,
                                         uint64_t seed);

// PAM k-medoids over Euclidean distance of the normalized concatenated
// (PV, price) trajectories. Medoids are input members; weights are cluster
// shares renormalized to sum to exactly 1.
std::vector<Scenario> reduce_scenarios(const std::vector<Scenario>& scenarios,
                                       int k, uint64_t seed);

std::string scenarios_to_json(const std::vector<Scenario>& scenarios);
std::vector<Scenario> scenarios_from_json(const std::string& text);

}  // namespace desal
